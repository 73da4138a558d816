#pragma once

// Exact record statistics by exhaustive enumeration.
//
// For a fixed base, the sweep walks all 2^n markings and, for each, all m!
// arrangements of the marked values. Record events are counted as integers
// grouped by the number of marked elements m; every outcome with m marks has
// weight p^m (1-p)^(n-m) / m!, so probabilities for any rational p are
// recovered afterwards from the integer table without another sweep.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "records/errors.hpp"
#include "records/model.hpp"
#include "records/rational.hpp"

namespace records {

struct OracleLimits {
  std::size_t expectation_cap = 10;
  std::size_t exhaustive_cap = 7;
};

/// Integer outcome counts for one base, independent of p.
/// Index conventions: [m][k-1] and [m][l-1][k-1].
struct RecordCountTable {
  std::size_t n = 0;
  std::vector<std::uint64_t> outcomes;                                   // per m
  std::vector<std::vector<std::uint64_t>> unmarked_at;                   // A_k
  std::vector<std::vector<std::vector<std::uint64_t>>> marked_value_at;  // B_{l,k}
};

struct ExactExpectation {
  Rational e_total;
  Rational e_unmarked;
  Rational e_marked;
  std::vector<Rational> unmarked_at_position;                 // P(A_k), k = 1..n
  std::vector<Rational> marked_value;                         // P(B_l), l = 1..n
  std::vector<std::vector<Rational>> marked_value_at_position;  // P(B_{l,k}) as [l-1][k-1]
  Rational total_weight;                                      // sum of all outcome weights
};

inline void check_cap(std::size_t n, std::size_t cap, const char* what) {
  if (n > cap)
    throw ResourceLimitError(std::string(what) + ": n=" + std::to_string(n) + " exceeds the enumeration cap " +
                             std::to_string(cap) + "; use Monte Carlo estimation instead");
}

inline void check_probability(const Rational& p) {
  if (p < 0 || p > 1) throw DomainError("probability outside [0,1]: " + to_string(p));
}

inline RecordCountTable enumerate_record_counts(const BasePermutation& base,
                                                const OracleLimits& limits = {}) {
  const auto n = base.size();
  check_cap(n, limits.expectation_cap, "exact oracle");

  RecordCountTable table;
  table.n = n;
  table.outcomes.assign(n + 1, 0);
  table.unmarked_at.assign(n + 1, std::vector<std::uint64_t>(n, 0));
  table.marked_value_at.assign(n + 1, std::vector<std::vector<std::uint64_t>>(n, std::vector<std::uint64_t>(n, 0)));

  const auto values = base.values();
  std::vector<int> arrangement;
  arrangement.reserve(n);
  std::vector<int> outcome(n);

  const std::uint32_t masks = 1U << n;
  for (std::uint32_t mask = 0; mask < masks; ++mask) {
    arrangement.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1U << i)) arrangement.push_back(values[i]);
    std::sort(arrangement.begin(), arrangement.end());
    const auto m = arrangement.size();
    auto& unmarked = table.unmarked_at[m];
    auto& marked = table.marked_value_at[m];

    do {
      std::size_t j = 0;
      int running_max = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const bool is_marked = (mask >> i) & 1U;
        const int x = is_marked ? arrangement[j++] : values[i];
        if (x > running_max) {
          running_max = x;
          if (is_marked)
            ++marked[static_cast<std::size_t>(x - 1)][i];
          else
            ++unmarked[i];
        }
      }
      ++table.outcomes[m];
    } while (std::next_permutation(arrangement.begin(), arrangement.end()));
  }
  return table;
}

inline ExactExpectation expectations_from_counts(const RecordCountTable& table, const Rational& p) {
  check_probability(p);
  const auto n = table.n;

  std::vector<Rational> weight(n + 1);
  const Rational q = 1 - p;
  for (std::size_t m = 0; m <= n; ++m) weight[m] = pow(p, m) * pow(q, n - m) / Rational{factorial(m)};

  ExactExpectation e;
  e.unmarked_at_position.assign(n, Rational{0});
  e.marked_value.assign(n, Rational{0});
  e.marked_value_at_position.assign(n, std::vector<Rational>(n, Rational{0}));
  e.total_weight = 0;

  for (std::size_t m = 0; m <= n; ++m) {
    if (weight[m] == 0) continue;
    e.total_weight += weight[m] * table.outcomes[m];
    for (std::size_t k = 0; k < n; ++k)
      if (table.unmarked_at[m][k]) e.unmarked_at_position[k] += weight[m] * table.unmarked_at[m][k];
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t k = 0; k < n; ++k)
        if (table.marked_value_at[m][l][k])
          e.marked_value_at_position[l][k] += weight[m] * table.marked_value_at[m][l][k];
  }

  e.e_unmarked = 0;
  e.e_marked = 0;
  for (std::size_t k = 0; k < n; ++k) e.e_unmarked += e.unmarked_at_position[k];
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t k = 0; k < n; ++k) e.marked_value[l] += e.marked_value_at_position[l][k];
    e.e_marked += e.marked_value[l];
  }
  e.e_total = e.e_unmarked + e.e_marked;
  return e;
}

inline ExactExpectation exact_expectations(const BasePermutation& base, const Rational& p,
                                           const OracleLimits& limits = {}) {
  check_probability(p);
  return expectations_from_counts(enumerate_record_counts(base, limits), p);
}

/// P(A_k): position k holds an unmarked record.
inline Rational prob_unmarked_record_at(const BasePermutation& base, const Rational& p, std::size_t k,
                                        const OracleLimits& limits = {}) {
  if (k < 1 || k > base.size()) throw DomainError("position out of range");
  return exact_expectations(base, p, limits).unmarked_at_position[k - 1];
}

/// P(B_l) or, with a position, P(B_{l,k}): value l is a marked record (at k).
inline Rational prob_marked_record(const BasePermutation& base, const Rational& p, std::size_t value,
                                   std::optional<std::size_t> position = {}, const OracleLimits& limits = {}) {
  const auto n = base.size();
  if (value < 1 || value > n) throw DomainError("value out of range");
  if (position && (*position < 1 || *position > n)) throw DomainError("position out of range");
  const auto e = exact_expectations(base, p, limits);
  return position ? e.marked_value_at_position[value - 1][*position - 1] : e.marked_value[value - 1];
}

enum class Objective { total, unmarked, marked };

inline const Rational& objective_value(const ExactExpectation& e, Objective objective) {
  switch (objective) {
    case Objective::unmarked:
      return e.e_unmarked;
    case Objective::marked:
      return e.e_marked;
    case Objective::total:
    default:
      return e.e_total;
  }
}

struct MaxResult {
  std::vector<BasePermutation> argmax;  // lexicographic order
  Rational value;
};

/// Largest expectation over all n! bases, with every maximizer.
inline MaxResult exhaustive_max(std::size_t n, const Rational& p, Objective objective,
                                const OracleLimits& limits = {}) {
  if (n == 0) throw DomainError("n must be positive");
  check_cap(n, limits.exhaustive_cap, "exhaustive search");
  check_probability(p);

  std::vector<int> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = static_cast<int>(i + 1);

  std::optional<MaxResult> best;
  do {
    BasePermutation base{values};
    const auto e = exact_expectations(base, p, limits);
    const auto& v = objective_value(e, objective);
    if (!best || v > best->value) {
      best = MaxResult{{base}, v};
    } else if (v == best->value) {
      best->argmax.push_back(base);
    }
  } while (std::next_permutation(values.begin(), values.end()));
  return *best;
}

}  // namespace records
