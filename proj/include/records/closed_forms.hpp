#pragma once

// Evaluators for the explicit sums, identities and bounds on record counts.
// Most come in an exact rational form (ground truth for small n) and a
// double form evaluated in log space (large n, where the binomials overflow).

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "records/errors.hpp"
#include "records/rational.hpp"

namespace records {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log C(n, k) via log-gamma; -inf outside 0 <= k <= n.
inline double log_binom(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) return kNegInf;
  if (k == 0 || k == n) return 0.0;
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

/// e * log(x) with 0 * log(0) = 0.
inline double scaled_log(long long e, double log_x) { return e == 0 ? 0.0 : static_cast<double>(e) * log_x; }

/// log(sum(exp(terms))), ignoring -inf entries.
inline double log_sum_exp(const std::vector<double>& terms) {
  double top = kNegInf;
  for (double t : terms) top = std::max(top, t);
  if (top == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double t : terms)
    if (t != kNegInf) acc += std::exp(t - top);
  return top + std::log(acc);
}

// ---------------------------------------------------------------------------
// Expected marked records: sum over j in [n] of (1 - (1-p)^j) / j.

inline Rational theorem2_sum(std::size_t n, const Rational& p) {
  if (n == 0) throw DomainError("n must be positive");
  if (p < 0 || p > 1) throw DomainError("probability outside [0,1]");
  const Rational q = 1 - p;
  Rational q_pow{1};
  Rational sum{0};
  for (std::size_t j = 1; j <= n; ++j) {
    q_pow *= q;
    sum += (1 - q_pow) / Rational{j};
  }
  return sum;
}

inline double theorem2_sum(std::size_t n, double p) {
  if (n == 0) throw DomainError("n must be positive");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("probability outside [0,1]");
  const double log_q = std::log1p(-p);
  // Smallest terms first.
  double sum = 0.0;
  for (std::size_t j = n; j >= 1; --j) sum += -std::expm1(static_cast<double>(j) * log_q) / static_cast<double>(j);
  return sum;
}

/// (1 - (1-p)^(n-l+1)) / (n-l+1): the bound on P(value l is a marked record).
inline Rational marked_value_bound(std::size_t n, std::size_t value, const Rational& p) {
  if (value < 1 || value > n) throw DomainError("value outside [1..n]");
  if (p < 0 || p > 1) throw DomainError("probability outside [0,1]");
  const auto j = n - value + 1;
  return (1 - pow(1 - p, j)) / Rational{j};
}

inline double marked_value_bound(std::size_t n, std::size_t value, double p) {
  if (value < 1 || value > n) throw DomainError("value outside [1..n]");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("probability outside [0,1]");
  const auto j = static_cast<double>(n - value + 1);
  return -std::expm1(j * std::log1p(-p)) / j;
}

// ---------------------------------------------------------------------------
// Literal transcriptions of the two probability sums. `value` is x_k for the
// unmarked-record sum and l for the marked-record sum; n12 is the count of
// larger elements to the left of position k.

struct FormulaInputs {
  std::size_t n = 1;
  std::size_t k = 1;
  std::size_t value = 1;
  std::size_t n12 = 0;
  Probability p;

  void validate() const {
    if (n == 0) throw DomainError("n must be positive");
    if (k < 1 || k > n) throw DomainError("k outside [1..n]");
    if (value < 1 || value > n) throw DomainError("value outside [1..n]");
    if (n12 > n - 1) throw DomainError("n12 exceeds n-1");
  }
};

/// sum over n > m >= n12+k-1 of
///   C(m,k-1)^-1 C(x_k-1,k-1) C(n-n12-k, m-n12-(k-1)) p^m (1-p)^(n-m)
inline Rational eval_new1_exact(const FormulaInputs& in) {
  in.validate();
  const auto n = static_cast<long long>(in.n), k = static_cast<long long>(in.k);
  const auto x = static_cast<long long>(in.value), n12 = static_cast<long long>(in.n12);
  const Rational& p = in.p.exact;
  const Rational q = 1 - p;
  const BigInt lead = binomial(x - 1, k - 1);
  Rational sum{0};
  if (lead == 0) return sum;
  for (long long m = n12 + k - 1; m < n; ++m) {
    const BigInt c = binomial(n - n12 - k, m - n12 - (k - 1));
    if (c == 0) continue;
    sum += Rational{lead * c, binomial(m, k - 1)} * pow(p, static_cast<std::size_t>(m)) *
           pow(q, static_cast<std::size_t>(n - m));
  }
  return sum;
}

inline double eval_new1_real(const FormulaInputs& in) {
  in.validate();
  const auto n = static_cast<long long>(in.n), k = static_cast<long long>(in.k);
  const auto x = static_cast<long long>(in.value), n12 = static_cast<long long>(in.n12);
  const double log_p = std::log(in.p.real), log_q = std::log1p(-in.p.real);
  const double lead = log_binom(x - 1, k - 1);
  if (lead == kNegInf) return 0.0;
  std::vector<double> terms;
  for (long long m = n12 + k - 1; m < n; ++m) {
    const double c = log_binom(n - n12 - k, m - n12 - (k - 1));
    if (c == kNegInf) continue;
    terms.push_back(lead + c - log_binom(m, k - 1) + scaled_log(m, log_p) + scaled_log(n - m, log_q));
  }
  const double log_sum = log_sum_exp(terms);
  return log_sum == kNegInf ? 0.0 : std::exp(log_sum);
}

/// sum over m >= n12+k-1 of
///   [(m+1) C(m,k-1)]^-1 C(l-1,k-1) C(n-1-n12-(k-1), m-n12-(k-1)) p^(m+1) (1-p)^(n-1-m)
/// The binomial vanishes past m = n-1, which closes the range.
inline Rational eval_new2_exact(const FormulaInputs& in) {
  in.validate();
  const auto n = static_cast<long long>(in.n), k = static_cast<long long>(in.k);
  const auto l = static_cast<long long>(in.value), n12 = static_cast<long long>(in.n12);
  const Rational& p = in.p.exact;
  const Rational q = 1 - p;
  const BigInt lead = binomial(l - 1, k - 1);
  Rational sum{0};
  if (lead == 0) return sum;
  for (long long m = n12 + k - 1; m <= n - 1; ++m) {
    const BigInt c = binomial(n - 1 - n12 - (k - 1), m - n12 - (k - 1));
    if (c == 0) continue;
    sum += Rational{lead * c, (m + 1) * binomial(m, k - 1)} * pow(p, static_cast<std::size_t>(m + 1)) *
           pow(q, static_cast<std::size_t>(n - 1 - m));
  }
  return sum;
}

inline double eval_new2_real(const FormulaInputs& in) {
  in.validate();
  const auto n = static_cast<long long>(in.n), k = static_cast<long long>(in.k);
  const auto l = static_cast<long long>(in.value), n12 = static_cast<long long>(in.n12);
  const double log_p = std::log(in.p.real), log_q = std::log1p(-in.p.real);
  const double lead = log_binom(l - 1, k - 1);
  if (lead == kNegInf) return 0.0;
  std::vector<double> terms;
  for (long long m = n12 + k - 1; m <= n - 1; ++m) {
    const double c = log_binom(n - 1 - n12 - (k - 1), m - n12 - (k - 1));
    if (c == kNegInf) continue;
    terms.push_back(lead + c - std::log(static_cast<double>(m + 1)) - log_binom(m, k - 1) +
                    scaled_log(m + 1, log_p) + scaled_log(n - 1 - m, log_q));
  }
  const double log_sum = log_sum_exp(terms);
  return log_sum == kNegInf ? 0.0 : std::exp(log_sum);
}

// ---------------------------------------------------------------------------

/// (1-p) sqrt(n/p), the order of the extremal expected record count.
inline double theorem1_scale(std::size_t n, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("scale requires 0 < p <= 1");
  return (1.0 - p) * std::sqrt(static_cast<double>(n) / p);
}

struct BoundReport {
  std::string check;
  std::string context;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  // Present when both sides were computed exactly.
  std::optional<std::string> lhs_exact;
  std::optional<std::string> rhs_exact;
};

inline std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// theorem2_sum(n,p) <= log(ne) + log p + 1/((n+1)p).
inline BoundReport corollary_chain(std::size_t n, double p) {
  if (n == 0) throw DomainError("n must be positive");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("corollary chain requires 0 < p < 1");
  BoundReport r;
  r.check = "corollary_chain";
  r.context = "n=" + std::to_string(n) + ";p=" + format_real(p);
  r.lhs = theorem2_sum(n, p);
  const auto nd = static_cast<double>(n);
  r.rhs = std::log(nd) + 1.0 + std::log(p) + 1.0 / ((nd + 1.0) * p);
  r.holds = r.lhs <= r.rhs;
  return r;
}

/// Upper binomial tail against 2 exp(-eps^2 p n / 3), with
/// lhs = sum over k >= ceil((1+eps)(n-1)p), k in [n], of C(n-1,k-1) p^(k-1) (1-p)^(n-k).
inline BoundReport binom_tail_check(std::size_t n, double p, double eps) {
  if (n == 0) throw DomainError("n must be positive");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("tail check requires 0 < p < 1");
  if (!(eps > 0.0 && eps <= 1.0)) throw DomainError("tail check requires 0 < eps <= 1");
  const auto nn = static_cast<long long>(n);
  const double threshold = std::ceil((1.0 + eps) * static_cast<double>(nn - 1) * p);
  const long long k1 = std::max<long long>(1, static_cast<long long>(threshold));
  const double log_p = std::log(p), log_q = std::log1p(-p);
  std::vector<double> terms;
  for (long long k = k1; k <= nn; ++k)
    terms.push_back(log_binom(nn - 1, k - 1) + scaled_log(k - 1, log_p) + scaled_log(nn - k, log_q));
  const double log_lhs = log_sum_exp(terms);

  BoundReport r;
  r.check = "binom_tail";
  r.context = "n=" + std::to_string(n) + ";p=" + format_real(p) + ";eps=" + format_real(eps);
  r.lhs = log_lhs == kNegInf ? 0.0 : std::exp(log_lhs);
  r.rhs = 2.0 * std::exp(-eps * eps * p * static_cast<double>(n) / 3.0);
  r.holds = r.lhs <= r.rhs;
  return r;
}

inline constexpr double kQuadratureTolerance = 1e-12;

/// a1! a2! / (a1+a2+1)! against adaptive Gauss-Kronrod quadrature of
/// t^a1 (1-t)^a2 on [0,1].
inline BoundReport beta_integral_check(std::size_t a1, std::size_t a2) {
  const Rational exact{factorial(a1) * factorial(a2), factorial(a1 + a2 + 1)};
  auto integrand = [a1, a2](double t) {
    return std::pow(t, static_cast<double>(a1)) * std::pow(1.0 - t, static_cast<double>(a2));
  };
  double error_estimate = 0.0;
  const double quad = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, 1.0, 15, 1e-13, &error_estimate);

  BoundReport r;
  r.check = "beta_integral";
  r.context = "a1=" + std::to_string(a1) + ";a2=" + std::to_string(a2);
  r.lhs = to_double(exact);
  r.rhs = quad;
  r.lhs_exact = to_string(exact);
  r.holds = std::abs(r.lhs - r.rhs) <= kQuadratureTolerance;
  return r;
}

/// sum over a1+a2=a of C(b1,a1) C(b2,a2) == C(b1+b2,a), in big integers.
inline BoundReport vandermonde_check(std::size_t b1, std::size_t b2, std::size_t a) {
  BigInt lhs{0};
  for (std::size_t a1 = 0; a1 <= a; ++a1)
    lhs += binomial(static_cast<long long>(b1), static_cast<long long>(a1)) *
           binomial(static_cast<long long>(b2), static_cast<long long>(a - a1));
  const BigInt rhs = binomial(static_cast<long long>(b1 + b2), static_cast<long long>(a));

  BoundReport r;
  r.check = "vandermonde";
  r.context = "b1=" + std::to_string(b1) + ";b2=" + std::to_string(b2) + ";a=" + std::to_string(a);
  r.lhs = lhs.convert_to<double>();
  r.rhs = rhs.convert_to<double>();
  r.lhs_exact = lhs.str() + "/1";
  r.rhs_exact = rhs.str() + "/1";
  r.holds = lhs == rhs;
  return r;
}

}  // namespace records
