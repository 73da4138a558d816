#pragma once

// Experiment harness: ratio scans against (1-p) sqrt(n/p), literal-formula
// versus enumeration reports, and the bound suite.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "records/closed_forms.hpp"
#include "records/errors.hpp"
#include "records/families.hpp"
#include "records/model.hpp"
#include "records/monte_carlo.hpp"
#include "records/oracle.hpp"
#include "records/report.hpp"

namespace records {

// ---------------------------------------------------------------------------
// Scans

struct ScanRow {
  std::string family;
  std::size_t n = 0;
  double p = 0.0;
  std::optional<std::size_t> k_used;
  std::uint64_t samples = 0;
  double mean_total = 0.0;
  double stderr_total = 0.0;
  double scale = 0.0;
  double ratio = 0.0;
  bool k_clamped = false;  // not serialized; reported on the side

  static const std::vector<std::string>& columns() {
    static const std::vector<std::string> c{"family", "n",     "p",     "k_used", "samples",
                                            "mean_total", "stderr_total", "scale", "ratio"};
    return c;
  }

  [[nodiscard]] std::vector<Cell> cells() const {
    return {family,
            static_cast<long long>(n),
            p,
            k_used ? Cell{static_cast<long long>(*k_used)} : Cell{},
            static_cast<long long>(samples),
            mean_total,
            stderr_total,
            scale,
            ratio};
  }
};

struct ScanConfig {
  std::string family = "bmb";  // identity | bmb | random | file:<path>
  std::vector<std::size_t> n_list;
  std::vector<double> p_list;
  std::uint64_t samples = 2000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

inline BasePermutation load_permutation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot read permutation file '" + path + "'");
  std::string line;
  std::getline(in, line);
  return parse_permutation(line);
}

/// Rows in grid order: p outer, n inner. A file family fixes n to the file's
/// length and ignores n_list.
inline std::vector<ScanRow> scan_ratio(const ScanConfig& config) {
  const bool from_file = config.family.rfind("file:", 0) == 0;
  if (!from_file && config.family != "identity" && config.family != "bmb" && config.family != "random")
    throw UsageError("unknown family '" + config.family + "'");
  if (config.p_list.empty()) throw UsageError("scan needs at least one p");
  for (double p : config.p_list)
    if (!(p > 0.0 && p < 1.0)) throw UsageError("scan requires every p in (0,1); got " + format_real(p));
  if (config.samples == 0) throw UsageError("scan needs samples >= 1");

  std::optional<BasePermutation> file_base;
  std::vector<std::size_t> n_list = config.n_list;
  if (from_file) {
    file_base = load_permutation_file(config.family.substr(5));
    n_list = {file_base->size()};
  }
  if (n_list.empty()) throw UsageError("scan needs at least one n");
  for (auto n : n_list)
    if (n == 0) throw UsageError("scan requires n >= 1");
  if (config.family == "bmb")
    for (auto n : n_list)
      if (n < 2) throw UsageError("bmb family requires n >= 2");

  std::vector<ScanRow> rows;
  std::uint64_t cell = 0;
  for (double p : config.p_list) {
    for (auto n : n_list) {
      ScanRow row;
      row.family = config.family;
      row.n = n;
      row.p = p;
      std::optional<BasePermutation> base;
      if (from_file) {
        base = *file_base;
      } else if (config.family == "identity") {
        base = identity(n);
      } else if (config.family == "bmb") {
        const auto k = bmb_shift_k(n, p);
        row.k_used = k;
        row.k_clamped = std::floor(std::sqrt(static_cast<double>(n) / p)) > static_cast<double>(n - 1);
        base = bmb_shifted(n, p);
      } else {
        auto rng = replica_stream(config.seed ^ 0x5ca1ab1e0ddba11ULL, cell);
        base = random_uniform(n, rng);
      }
      const auto est = estimate(*base, p, config.samples, config.seed, EstimateOptions{config.threads, 0});
      row.samples = est.samples;
      row.mean_total = est.mean_total;
      row.stderr_total = standard_error_total(est);
      row.scale = theorem1_scale(n, p);
      row.ratio = row.mean_total / row.scale;
      rows.push_back(std::move(row));
      ++cell;
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Literal formulas versus enumeration

enum class Relation { equal, formula_greater, oracle_greater };

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::equal:
      return "equal";
    case Relation::formula_greater:
      return "formula_greater";
    case Relation::oracle_greater:
    default:
      return "oracle_greater";
  }
}

inline constexpr double kCompareTolerance = 1e-12;

inline Relation classify(const Rational& formula, const Rational& oracle) {
  const Rational diff = formula - oracle;
  if (abs(diff) <= Rational{kCompareTolerance}) return Relation::equal;
  return diff > 0 ? Relation::formula_greater : Relation::oracle_greater;
}

struct CompareRow {
  std::string formula_name;  // "new1" (unmarked record at k) or "new2" (marked l at k)
  std::string base;
  std::size_t n = 0;
  Rational p;
  std::size_t k = 0;
  std::optional<std::size_t> ell;
  std::size_t n12 = 0;
  Rational formula_value;
  Rational oracle_value;
  Relation relation = Relation::equal;

  static const std::vector<std::string>& columns() {
    static const std::vector<std::string> c{"n", "p", "k", "ell", "n12", "formula", "oracle", "relation"};
    return c;
  }

  [[nodiscard]] std::vector<Cell> cells() const {
    return {static_cast<long long>(n),
            records::to_string(p),
            static_cast<long long>(k),
            ell ? Cell{static_cast<long long>(*ell)} : Cell{},
            static_cast<long long>(n12),
            records::to_string(formula_value),
            records::to_string(oracle_value),
            std::string(records::to_string(relation))};
  }
};

struct RelationCounts {
  std::size_t equal = 0;
  std::size_t formula_greater = 0;
  std::size_t oracle_greater = 0;

  void add(Relation r) {
    (r == Relation::equal ? equal : r == Relation::formula_greater ? formula_greater : oracle_greater)++;
  }
  [[nodiscard]] std::size_t total() const { return equal + formula_greater + oracle_greater; }
};

struct CompareReport {
  std::vector<CompareRow> rows;
  RelationCounts new1;
  RelationCounts new2;
};

inline constexpr std::size_t kCompareCap = 8;
inline constexpr std::size_t kCompareFullSweepCap = 6;

/// Bases compared at size n: every permutation up to size 6, and the
/// identity / shifted / reversed bases at sizes 7 and 8.
inline std::vector<BasePermutation> compare_bases(std::size_t n, const Rational& p) {
  std::vector<BasePermutation> bases;
  if (n <= kCompareFullSweepCap) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    do bases.emplace_back(v);
    while (std::next_permutation(v.begin(), v.end()));
    return bases;
  }
  bases.push_back(identity(n));
  const double pd = to_double(p);
  if (pd > 0.0) bases.push_back(bmb_shifted(n, pd));
  bases.push_back(reversed(n));
  std::sort(bases.begin(), bases.end());
  bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
  return bases;
}

inline CompareReport compare_report(std::size_t n_max, const std::vector<Rational>& p_list) {
  if (n_max == 0) throw UsageError("compare: n must be positive");
  if (n_max > kCompareCap) throw UsageError("compare: n_max above " + std::to_string(kCompareCap));
  if (p_list.empty()) throw UsageError("compare needs at least one p");
  for (const auto& p : p_list)
    if (p < 0 || p > 1) throw UsageError("compare: p outside [0,1]");

  CompareReport report;
  for (std::size_t n = 1; n <= n_max; ++n) {
    for (const auto& p : p_list) {
      for (const auto& base : compare_bases(n, p)) {
        const auto oracle = exact_expectations(base, p, OracleLimits{kCompareCap, 0});
        const auto base_text = format_permutation(base);
        const auto prob = Probability::from_rational(p);

        for (std::size_t k = 1; k <= n; ++k) {
          const auto q = quadrant_counts(base, k);
          CompareRow row{"new1", base_text, n, p, k, std::nullopt, q.n12, Rational{}, Rational{}, Relation::equal};
          row.formula_value = eval_new1_exact(FormulaInputs{n, k, static_cast<std::size_t>(base.at(k)), q.n12, prob});
          row.oracle_value = oracle.unmarked_at_position[k - 1];
          row.relation = classify(row.formula_value, row.oracle_value);
          report.new1.add(row.relation);
          report.rows.push_back(std::move(row));
        }
        for (std::size_t l = 1; l <= n; ++l) {
          for (std::size_t k = 1; k <= n; ++k) {
            const auto q = quadrant_counts(base, k, static_cast<int>(l));
            CompareRow row{"new2", base_text, n, p, k, l, q.n12, Rational{}, Rational{}, Relation::equal};
            row.formula_value = eval_new2_exact(FormulaInputs{n, k, l, q.n12, prob});
            row.oracle_value = oracle.marked_value_at_position[l - 1][k - 1];
            row.relation = classify(row.formula_value, row.oracle_value);
            report.new2.add(row.relation);
            report.rows.push_back(std::move(row));
          }
        }
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Bound suite

struct BoundsGrid {
  std::vector<std::size_t> corollary_n{10, 100, 1000, 10000};
  std::vector<double> corollary_p{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<std::size_t> tail_n{10, 100, 1000};
  std::vector<double> tail_p{0.01, 0.1, 0.5};
  std::vector<double> tail_eps{0.25, 0.5, 1.0};
  std::size_t beta_max = 10;
  std::size_t vandermonde_triples = 100;
  std::size_t vandermonde_max_b = 40;
  std::uint64_t vandermonde_seed = 20240101;
  std::size_t theorem2_max_n = 6;
  std::vector<Rational> theorem2_p{Rational{1, 3}, Rational{1, 2}};
};

struct BoundRow {
  BoundReport report;

  static const std::vector<std::string>& columns() {
    static const std::vector<std::string> c{"check", "context", "lhs", "rhs", "holds"};
    return c;
  }

  [[nodiscard]] std::vector<Cell> cells() const {
    return {report.check, report.context,
            report.lhs_exact ? Cell{*report.lhs_exact} : Cell{report.lhs},
            report.rhs_exact ? Cell{*report.rhs_exact} : Cell{report.rhs}, report.holds};
  }
};

/// Oracle expected marked records against the closed sum, for every base of
/// size n: equality at the identity, strict inequality elsewhere.
inline std::vector<BoundReport> theorem2_checks(std::size_t n, const Rational& p) {
  std::vector<BoundReport> out;
  const Rational bound = theorem2_sum(n, p);
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  do {
    const BasePermutation base{v};
    const auto e = exact_expectations(base, p);
    BoundReport r;
    const bool ident = base.is_identity();
    r.check = ident ? "theorem2_identity_equality" : "theorem2_strict";
    r.context = "n=" + std::to_string(n) + ";p=" + to_string(p) + ";base=" + format_permutation(base);
    r.lhs = to_double(e.e_marked);
    r.rhs = to_double(bound);
    r.lhs_exact = to_string(e.e_marked);
    r.rhs_exact = to_string(bound);
    // At p = 0 and p = 1 every base attains the sum, so only <= is checked there.
    if (ident)
      r.holds = e.e_marked == bound;
    else if (p == 0 || p == 1)
      r.holds = e.e_marked <= bound;
    else
      r.holds = e.e_marked < bound;
    out.push_back(std::move(r));
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

inline std::vector<BoundReport> bounds_suite(const BoundsGrid& grid = {}) {
  std::vector<BoundReport> out;
  for (auto n : grid.corollary_n)
    for (double p : grid.corollary_p) out.push_back(corollary_chain(n, p));
  for (auto n : grid.tail_n)
    for (double p : grid.tail_p)
      for (double eps : grid.tail_eps) out.push_back(binom_tail_check(n, p, eps));
  for (std::size_t a1 = 0; a1 <= grid.beta_max; ++a1)
    for (std::size_t a2 = 0; a2 <= grid.beta_max; ++a2) out.push_back(beta_integral_check(a1, a2));

  SplitMix64 rng{grid.vandermonde_seed};
  for (std::size_t i = 0; i < grid.vandermonde_triples; ++i) {
    const auto b1 = uniform_below(rng, grid.vandermonde_max_b + 1);
    const auto b2 = uniform_below(rng, grid.vandermonde_max_b + 1);
    // Occasionally past b1+b2, where both sides vanish.
    const auto a = uniform_below(rng, b1 + b2 + 3);
    out.push_back(vandermonde_check(b1, b2, a));
  }

  for (std::size_t n = 1; n <= grid.theorem2_max_n; ++n)
    for (const auto& p : grid.theorem2_p) {
      auto rows = theorem2_checks(n, p);
      out.insert(out.end(), std::make_move_iterator(rows.begin()), std::make_move_iterator(rows.end()));
    }
  return out;
}

inline bool all_hold(const std::vector<BoundReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const BoundReport& r) { return r.holds; });
}

inline std::vector<BoundRow> as_rows(const std::vector<BoundReport>& reports) {
  std::vector<BoundRow> rows;
  rows.reserve(reports.size());
  for (const auto& r : reports) rows.push_back(BoundRow{r});
  return rows;
}

}  // namespace records
