#pragma once

// Base permutation constructors and the one-line text format ("3 1 2").

#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "records/errors.hpp"
#include "records/model.hpp"
#include "records/rng.hpp"

namespace records {

inline BasePermutation identity(std::size_t n) {
  if (n == 0) throw DomainError("identity: n must be positive");
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  return BasePermutation{std::move(v)};
}

inline BasePermutation reversed(std::size_t n) {
  if (n == 0) throw DomainError("reversed: n must be positive");
  std::vector<int> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<int>(n - i);
  return BasePermutation{std::move(v)};
}

/// Block length parameter of the shifted family: floor(sqrt(n/p)) unless
/// overridden, clamped to [1, n-1].
inline std::size_t bmb_shift_k(std::size_t n, double p, std::optional<std::size_t> k_override = {}) {
  if (n < 2) throw DomainError("bmb_shifted: n must be at least 2");
  std::size_t k = 0;
  if (k_override) {
    k = *k_override;
    if (k == 0) throw DomainError("bmb_shifted: k override must be positive");
  } else {
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("bmb_shifted: p must lie in (0,1]");
    // floor(sqrt(n/p)) with n/p rounded once to double, so decimal inputs
    // such as p = 0.4 behave as written.
    const double ratio = static_cast<double>(n) / p;
    auto root = static_cast<std::size_t>(std::floor(std::sqrt(ratio)));
    while (root > 0 && static_cast<double>(root) * static_cast<double>(root) > ratio) --root;
    while (static_cast<double>(root + 1) * static_cast<double>(root + 1) <= ratio) ++root;
    k = root;
  }
  return std::clamp<std::size_t>(k, 1, n - 1);
}

/// (n-k, n-k+1, ..., n, 1, 2, ..., n-k-1).
inline BasePermutation bmb_shifted(std::size_t n, double p, std::optional<std::size_t> k_override = {}) {
  const auto k = bmb_shift_k(n, p, k_override);
  std::vector<int> v;
  v.reserve(n);
  for (std::size_t x = n - k; x <= n; ++x) v.push_back(static_cast<int>(x));
  for (std::size_t x = 1; x + k + 1 <= n; ++x) v.push_back(static_cast<int>(x));
  return BasePermutation{std::move(v)};
}

template <class Rng>
BasePermutation random_uniform(std::size_t n, Rng& rng) {
  if (n == 0) throw DomainError("random_uniform: n must be positive");
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  shuffle(std::span<int>(v), rng);
  return BasePermutation{std::move(v)};
}

inline BasePermutation parse_permutation(std::string_view text) {
  std::vector<int> values;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(token, &used);
    } catch (const std::exception&) {
      throw ParseError("non-integer token '" + token + "'");
    }
    if (used != token.size()) throw ParseError("non-integer token '" + token + "'");
    if (v < 1 || v > std::numeric_limits<int>::max()) throw ParseError("out-of-range value '" + token + "'");
    values.push_back(static_cast<int>(v));
  }
  if (values.empty()) throw ParseError("empty permutation");

  const auto n = values.size();
  std::vector<char> seen(n + 1, 0);
  for (int v : values) {
    if (static_cast<std::size_t>(v) > n)
      throw ParseError("out-of-range value '" + std::to_string(v) + "' for n=" + std::to_string(n));
    if (seen[static_cast<std::size_t>(v)]) throw ParseError("duplicate value '" + std::to_string(v) + "'");
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return BasePermutation{std::move(values)};
}

inline std::string format_permutation(std::span<const int> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out.push_back(' ');
    out += std::to_string(values[i]);
  }
  return out;
}

inline std::string format_permutation(const BasePermutation& base) { return format_permutation(base.values()); }

}  // namespace records
