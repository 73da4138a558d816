#pragma once

// Exact arithmetic helpers: big integers, rationals, binomials and the
// exact/real probability pair used throughout the library.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "records/errors.hpp"

namespace records {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational pow(const Rational& base, std::size_t exponent) {
  Rational result{1};
  Rational factor = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= factor;
    exponent >>= 1U;
    if (exponent > 0) factor *= factor;
  }
  return result;
}

/// C(n, k) with the usual convention C(n, k) = 0 outside 0 <= k <= n.
inline BigInt binomial(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) return BigInt{0};
  if (k > n - k) k = n - k;
  BigInt result{1};
  for (long long i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

inline BigInt factorial(std::size_t n) {
  BigInt result{1};
  for (std::size_t i = 2; i <= n; ++i) result *= i;
  return result;
}

/// Serialized as "num/den", always with an explicit denominator.
inline std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Parses "num/den" or a plain integer.
inline Rational parse_rational(std::string_view text) {
  auto is_integer = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto strip_plus = [](std::string_view s) {
    return std::string(!s.empty() && s.front() == '+' ? s.substr(1) : s);
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!is_integer(text)) throw ParseError("not a rational: '" + std::string(text) + "'");
    return Rational{BigInt{strip_plus(text)}};
  }
  const auto num = text.substr(0, slash);
  const auto den = text.substr(slash + 1);
  if (!is_integer(num) || !is_integer(den))
    throw ParseError("not a rational: '" + std::string(text) + "'");
  const BigInt d{strip_plus(den)};
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational{BigInt{strip_plus(num)}, d};
}

/// A probability carried both exactly and as a double. `exact_input` is false
/// when the value came from a decimal literal; the exact field then holds the
/// decimal's rational value, but exact-only consumers must refuse it.
struct Probability {
  Rational exact{0};
  double real = 0.0;
  bool exact_input = true;

  static Probability from_rational(const Rational& r) {
    if (r < 0 || r > 1) throw DomainError("probability outside [0,1]: " + to_string(r));
    return Probability{r, to_double(r), true};
  }

  static Probability from_double(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("probability outside [0,1]: " + std::to_string(p));
    return Probability{Rational{p}, p, false};
  }
};

/// "num/den" gives an exact probability; a decimal literal gives a real one
/// whose exact field is the decimal's value (so 0.3 -> 3/10).
inline Probability parse_probability(std::string_view text) {
  const std::string s(text);
  if (s.find('/') != std::string::npos) return Probability::from_rational(parse_rational(s));

  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError("not a probability: '" + s + "'");
  }
  if (used != s.size()) throw ParseError("not a probability: '" + s + "'");

  // Exact decimal value without going through binary floating point.
  Rational exact{0};
  const auto exp_pos = s.find_first_of("eE");
  const std::string mantissa = s.substr(0, exp_pos);
  long long exponent = exp_pos == std::string::npos ? 0 : std::stoll(s.substr(exp_pos + 1));
  std::string digits;
  for (char c : mantissa) {
    if (c == '.') continue;
    if (c >= '0' && c <= '9') digits.push_back(c);
  }
  const auto dot = mantissa.find('.');
  if (dot != std::string::npos) exponent -= static_cast<long long>(mantissa.size() - dot - 1);
  BigInt num{digits.empty() ? std::string("0") : digits};
  if (exponent >= 0) {
    exact = Rational{num * boost::multiprecision::pow(BigInt{10}, static_cast<unsigned>(exponent))};
  } else {
    exact = Rational{num, boost::multiprecision::pow(BigInt{10}, static_cast<unsigned>(-exponent))};
  }
  if (!mantissa.empty() && mantissa.front() == '-') exact = -exact;
  if (exact < 0 || exact > 1) throw DomainError("probability outside [0,1]: " + s);
  return Probability{exact, value, false};
}

}  // namespace records
