#pragma once

// The p-partial permutation process: each position of a base permutation is
// marked independently with probability p, then the marked values are
// permuted uniformly among the marked positions. Records (left-to-right
// maxima) of the outcome are split by whether the element is marked.

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "records/errors.hpp"
#include "records/rational.hpp"
#include "records/rng.hpp"

namespace records {

/// A permutation of [1..n], n >= 1. Positions are 1-based in the public API.
class BasePermutation {
 public:
  explicit BasePermutation(std::vector<int> values) : values_(std::move(values)) {
    if (values_.empty()) throw DomainError("permutation must have n >= 1");
    const auto n = values_.size();
    std::vector<char> seen(n + 1, 0);
    for (int v : values_) {
      if (v < 1 || static_cast<std::size_t>(v) > n)
        throw DomainError("value " + std::to_string(v) + " outside [1.." + std::to_string(n) + "]");
      if (seen[static_cast<std::size_t>(v)])
        throw DomainError("duplicate value " + std::to_string(v));
      seen[static_cast<std::size_t>(v)] = 1;
    }
  }

  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] std::span<const int> values() const noexcept { return values_; }

  /// Value at 1-based position k.
  [[nodiscard]] int at(std::size_t k) const {
    if (k < 1 || k > values_.size()) throw DomainError("position out of range");
    return values_[k - 1];
  }

  [[nodiscard]] bool is_identity() const noexcept {
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (values_[i] != static_cast<int>(i + 1)) return false;
    return true;
  }

  friend bool operator==(const BasePermutation&, const BasePermutation&) = default;
  friend auto operator<=>(const BasePermutation&, const BasePermutation&) = default;

 private:
  std::vector<int> values_;
};

/// n together with p in both representations.
struct ModelParams {
  std::size_t n;
  Probability p;

  ModelParams(std::size_t n_in, Probability p_in) : n(n_in), p(std::move(p_in)) {
    if (n == 0) throw DomainError("n must be positive");
  }
};

/// marked[i] <=> position i (0-based) is selected.
struct Marking {
  std::vector<std::uint8_t> marked;

  [[nodiscard]] std::size_t size() const noexcept { return marked.size(); }
  [[nodiscard]] std::size_t count() const noexcept {
    return static_cast<std::size_t>(std::count(marked.begin(), marked.end(), std::uint8_t{1}));
  }

  static Marking none(std::size_t n) { return Marking{std::vector<std::uint8_t>(n, 0)}; }

  /// From 1-based positions.
  static Marking at_positions(std::size_t n, std::initializer_list<std::size_t> positions) {
    Marking m = none(n);
    for (auto k : positions) {
      if (k < 1 || k > n) throw DomainError("marked position out of range");
      m.marked[k - 1] = 1;
    }
    return m;
  }
};

/// An outcome X. marked[i] says whether the element now at position i was
/// selected (equivalently, whether position i was a marked slot).
struct RealizedPermutation {
  std::vector<int> values;
  std::vector<std::uint8_t> marked;

  [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
};

struct RecordTally {
  std::size_t total = 0;
  std::size_t unmarked = 0;
  std::size_t marked = 0;

  friend bool operator==(const RecordTally&, const RecordTally&) = default;
};

/// Sizes of the four sets N_{i,j} around a split position k and split value v:
/// n11 left-and-smaller, n12 left-and-larger, n21 right-and-smaller,
/// n22 right-and-larger. Position k itself is never counted.
struct QuadrantCounts {
  std::size_t n11 = 0;
  std::size_t n12 = 0;
  std::size_t n21 = 0;
  std::size_t n22 = 0;
  int split_value = 0;
  int value_at_split = 0;

  [[nodiscard]] std::size_t sum() const noexcept { return n11 + n12 + n21 + n22; }

  /// n11 + n21, written as v - 1 - [x_k < v]: every value below v other than
  /// the one sitting at the split position.
  [[nodiscard]] std::size_t n_circ1() const noexcept {
    return static_cast<std::size_t>(split_value - 1 - (value_at_split < split_value ? 1 : 0));
  }
};

/// Places marked values into marked slots. `arrangement[j]` is the value sent
/// to the j-th marked slot in increasing position order.
inline RealizedPermutation realize(const BasePermutation& base, const Marking& marking,
                                   std::span<const int> arrangement) {
  const auto n = base.size();
  if (marking.size() != n) throw DomainError("marking length differs from n");
  RealizedPermutation out{std::vector<int>(base.values().begin(), base.values().end()), marking.marked};

  std::vector<int> expected;
  for (std::size_t i = 0; i < n; ++i)
    if (marking.marked[i]) expected.push_back(base.values()[i]);
  std::vector<int> given(arrangement.begin(), arrangement.end());
  std::sort(expected.begin(), expected.end());
  std::sort(given.begin(), given.end());
  if (expected != given)
    throw InvalidArrangementError("arrangement is not a bijection onto the marked values");

  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (marking.marked[i]) out.values[i] = arrangement[j++];
  return out;
}

/// Workspace form used by the samplers: `out` and `slots` are reused across
/// calls. Marks are drawn for positions 1..n first, then one Fisher-Yates pass
/// over the marked values.
template <class Rng>
void apply_partial_shuffle(const BasePermutation& base, double p, Rng& rng,
                           RealizedPermutation& out, std::vector<std::size_t>& slots) {
  const auto n = base.size();
  const auto src = base.values();
  out.values.assign(src.begin(), src.end());
  out.marked.assign(n, 0);
  slots.clear();
  for (std::size_t i = 0; i < n; ++i) {
    if (bernoulli(rng, p)) {
      out.marked[i] = 1;
      slots.push_back(i);
    }
  }
  for (std::size_t i = slots.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(out.values[slots[i - 1]], out.values[slots[j]]);
  }
}

template <class Rng>
RealizedPermutation apply_partial_shuffle(const BasePermutation& base, double p, Rng& rng) {
  RealizedPermutation out;
  std::vector<std::size_t> slots;
  apply_partial_shuffle(base, p, rng, out, slots);
  return out;
}

inline RecordTally count_records(const RealizedPermutation& x) {
  RecordTally tally;
  int running_max = 0;
  for (std::size_t i = 0; i < x.values.size(); ++i) {
    if (x.values[i] > running_max) {
      running_max = x.values[i];
      ++tally.total;
      if (x.marked[i])
        ++tally.marked;
      else
        ++tally.unmarked;
    }
  }
  return tally;
}

/// Quadrant sizes around 1-based position k for split value v.
inline QuadrantCounts quadrant_counts(const BasePermutation& base, std::size_t k, int v) {
  const auto n = base.size();
  if (k < 1 || k > n) throw DomainError("split position out of range");
  if (v < 1 || static_cast<std::size_t>(v) > n) throw DomainError("split value out of range");
  QuadrantCounts q;
  q.split_value = v;
  q.value_at_split = base.at(k);
  const auto values = base.values();
  for (std::size_t alpha = 1; alpha <= n; ++alpha) {
    if (alpha == k) continue;
    const int x = values[alpha - 1];
    if (x == v) continue;
    if (alpha < k)
      (x < v ? q.n11 : q.n12)++;
    else
      (x < v ? q.n21 : q.n22)++;
  }
  return q;
}

inline QuadrantCounts quadrant_counts(const BasePermutation& base, std::size_t k) {
  return quadrant_counts(base, k, base.at(k));
}

}  // namespace records
