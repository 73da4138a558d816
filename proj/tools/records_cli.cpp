// records: command-line front end for record statistics of partially
// shuffled permutations.
//
// Exit codes: 0 success, 1 bound/assertion failure, 2 usage error, 3 I/O error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "records/records.hpp"

namespace {

using namespace records;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct BaseOptions {
  std::string family = "identity";
  std::string base_text;
  std::size_t n = 0;
  std::string p_text;
  std::optional<std::size_t> k;
};

struct Common {
  std::optional<std::uint64_t> seed;
  std::string format = "csv";
  std::string out;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device device;
  const std::uint64_t generated = (static_cast<std::uint64_t>(device()) << 32) ^ device();
  std::cerr << "seed: " << generated << '\n';
  return generated;
}

Probability require_p(const std::string& text) {
  if (text.empty()) throw UsageError("--p is required");
  return parse_probability(text);
}

BasePermutation resolve_base(const BaseOptions& o, std::uint64_t seed) {
  if (!o.base_text.empty()) return parse_permutation(o.base_text);
  if (o.family.rfind("file:", 0) == 0) return load_permutation_file(o.family.substr(5));
  if (o.n == 0) throw UsageError("--n is required for family '" + o.family + "'");
  if (o.family == "identity") return identity(o.n);
  if (o.family == "reversed") return reversed(o.n);
  if (o.family == "bmb") {
    const double p = o.p_text.empty() ? 0.0 : parse_probability(o.p_text).real;
    return bmb_shifted(o.n, p, o.k);
  }
  if (o.family == "random") {
    SplitMix64 rng{seed};
    return random_uniform(o.n, rng);
  }
  throw UsageError("unknown family '" + o.family + "'");
}

void add_base_options(CLI::App* cmd, BaseOptions& o) {
  cmd->add_option("--family", o.family, "identity | bmb | random | reversed | file:<path>");
  cmd->add_option("--base", o.base_text, "explicit base permutation, e.g. \"3 1 2\"");
  cmd->add_option("--n", o.n, "permutation size");
  cmd->add_option("--k", o.k, "block parameter override for the bmb family");
}

template <class Row>
void write_rows(const std::vector<Row>& rows, const Common& c) {
  emit(std::span<const Row>(rows), parse_format(c.format), c.out, std::cout);
}

void write_json(const nlohmann::ordered_json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  file << j.dump(2) << '\n';
  if (!file) throw std::ios_base::failure("write failed: " + path);
}

nlohmann::ordered_json rationals(const std::vector<Rational>& v) {
  auto a = nlohmann::ordered_json::array();
  for (const auto& r : v) a.push_back(to_string(r));
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Record (left-to-right maximum) statistics of p-partial permutations"};
  app.set_config("--config", "", "key=value configuration file; command-line flags take precedence");
  app.require_subcommand(1);

  // gen
  BaseOptions gen_base;
  Common gen_common;
  auto* gen = app.add_subcommand("gen", "Emit a base permutation in the one-line format");
  add_base_options(gen, gen_base);
  gen->add_option("--p", gen_base.p_text, "probability (bmb family)");
  gen->add_option("--seed", gen_common.seed, "seed (random family)");
  gen->add_option("--out", gen_common.out, "output path (default stdout)");

  // simulate
  BaseOptions sim_base;
  Common sim_common;
  std::uint64_t sim_samples = 100000;
  unsigned sim_threads = 1;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo estimate of expected record counts");
  add_base_options(sim, sim_base);
  sim->add_option("--p", sim_base.p_text, "probability, decimal or num/den")->required();
  sim->add_option("--samples", sim_samples, "number of replicas");
  sim->add_option("--seed", sim_common.seed, "64-bit seed");
  sim->add_option("--threads", sim_threads, "worker threads (results do not depend on this)");
  sim->add_option("--out", sim_common.out, "output path (default stdout)");

  // oracle
  BaseOptions orc_base;
  Common orc_common;
  std::size_t orc_cap = OracleLimits{}.expectation_cap;
  auto* orc = app.add_subcommand("oracle", "Exact expectations by enumeration (rational p only)");
  add_base_options(orc, orc_base);
  orc->add_option("--p", orc_base.p_text, "probability as num/den")->required();
  orc->add_option("--cap", orc_cap, "largest n enumerated");
  orc->add_option("--out", orc_common.out, "output path (default stdout)");

  // formula
  std::string which;
  std::size_t f_n = 0, f_k = 1, f_value = 1, f_n12 = 0;
  std::string f_p;
  Common f_common;
  auto* formula = app.add_subcommand("formula", "Evaluate one closed form");
  formula->add_option("which", which, "new1 | new2 | theorem2 | marked-bound | scale")->required();
  formula->add_option("--n", f_n, "n")->required();
  formula->add_option("--p", f_p, "probability")->required();
  formula->add_option("--k", f_k, "position k");
  formula->add_option("--value", f_value, "x_k (new1) or l (new2, marked-bound)");
  formula->add_option("--n12", f_n12, "count of larger elements left of k");
  formula->add_option("--out", f_common.out, "output path (default stdout)");

  // bounds
  Common b_common;
  std::vector<std::size_t> b_n;
  std::vector<double> b_p;
  std::size_t b_theorem2_n = BoundsGrid{}.theorem2_max_n;
  auto* bounds = app.add_subcommand("bounds", "Run the bound suite; exit 1 if any check fails");
  bounds->add_option("--n", b_n, "restrict the corollary and tail grids to these n");
  bounds->add_option("--p", b_p, "restrict the corollary and tail grids to these p");
  bounds->add_option("--theorem2-max-n", b_theorem2_n, "largest n for the exhaustive marked-record checks");
  bounds->add_option("--format", b_common.format, "csv | json");
  bounds->add_option("--out", b_common.out, "output path (default stdout)");

  // scan
  ScanConfig s_config;
  Common s_common;
  auto* scan = app.add_subcommand("scan", "Ratio of mean records to (1-p) sqrt(n/p) over a grid");
  scan->add_option("--family", s_config.family, "identity | bmb | random | file:<path>");
  scan->add_option("--n", s_config.n_list, "sizes")->required();
  scan->add_option("--p", s_config.p_list, "probabilities in (0,1)")->required();
  scan->add_option("--samples", s_config.samples, "replicas per cell");
  scan->add_option("--seed", s_common.seed, "64-bit seed");
  scan->add_option("--threads", s_config.threads, "worker threads (results do not depend on this)");
  scan->add_option("--format", s_common.format, "csv | json");
  scan->add_option("--out", s_common.out, "output path (default stdout)");

  // maxsearch
  std::size_t m_n = 0;
  std::string m_p, m_objective = "total";
  std::size_t m_cap = OracleLimits{}.exhaustive_cap;
  Common m_common;
  auto* maxsearch = app.add_subcommand("maxsearch", "Exact maximum expectation over all bases");
  maxsearch->add_option("--n", m_n, "n")->required();
  maxsearch->add_option("--p", m_p, "probability as num/den")->required();
  maxsearch->add_option("--objective", m_objective, "total | unmarked | marked");
  maxsearch->add_option("--cap", m_cap, "largest n searched");
  maxsearch->add_option("--out", m_common.out, "output path (default stdout)");

  // compare
  std::size_t c_n = 6;
  std::vector<std::string> c_p{"1/2"};
  Common c_common;
  auto* compare = app.add_subcommand("compare", "Literal probability sums against enumeration");
  compare->add_option("--n", c_n, "largest n (at most 8)");
  compare->add_option("--p", c_p, "probabilities as num/den");
  compare->add_option("--format", c_common.format, "csv | json");
  compare->add_option("--out", c_common.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) {
      const auto seed = gen_base.family == "random" ? resolve_seed(gen_common.seed) : 0;
      const auto base = resolve_base(gen_base, seed);
      const std::string line = format_permutation(base) + "\n";
      if (gen_common.out.empty()) {
        std::cout << line;
      } else {
        std::ofstream file(gen_common.out, std::ios::binary | std::ios::trunc);
        if (!file || !(file << line)) throw std::ios_base::failure("cannot write '" + gen_common.out + "'");
      }
      return kExitOk;
    }

    if (*sim) {
      const auto seed = resolve_seed(sim_common.seed);
      const auto p = require_p(sim_base.p_text);
      const auto base = resolve_base(sim_base, seed);
      const auto est = estimate(base, p.real, sim_samples, seed, EstimateOptions{sim_threads, 0});
      auto j = to_json(est);
      j["n"] = base.size();
      j["p"] = p.real;
      write_json(j, sim_common.out);
      return kExitOk;
    }

    if (*orc) {
      const auto p = require_p(orc_base.p_text);
      if (!p.exact_input) throw UsageError("the oracle needs an exact probability written as num/den");
      const auto base = resolve_base(orc_base, 0);
      const auto e = exact_expectations(base, p.exact, OracleLimits{orc_cap, OracleLimits{}.exhaustive_cap});
      nlohmann::ordered_json j;
      j["base"] = format_permutation(base);
      j["p"] = to_string(p.exact);
      j["e_total"] = to_string(e.e_total);
      j["e_unmarked"] = to_string(e.e_unmarked);
      j["e_marked"] = to_string(e.e_marked);
      j["per_position_unmarked"] = rationals(e.unmarked_at_position);
      j["per_value_marked"] = rationals(e.marked_value);
      write_json(j, orc_common.out);
      return kExitOk;
    }

    if (*formula) {
      const auto p = parse_probability(f_p);
      nlohmann::ordered_json j;
      j["formula"] = which;
      if (which == "new1" || which == "new2") {
        const FormulaInputs in{f_n, f_k, f_value, f_n12, p};
        const bool first = which == "new1";
        j["exact"] = to_string(first ? eval_new1_exact(in) : eval_new2_exact(in));
        j["real"] = first ? eval_new1_real(in) : eval_new2_real(in);
      } else if (which == "theorem2") {
        j["exact"] = to_string(theorem2_sum(f_n, p.exact));
        j["real"] = theorem2_sum(f_n, p.real);
      } else if (which == "marked-bound") {
        j["exact"] = to_string(marked_value_bound(f_n, f_value, p.exact));
        j["real"] = marked_value_bound(f_n, f_value, p.real);
      } else if (which == "scale") {
        j["real"] = theorem1_scale(f_n, p.real);
      } else {
        throw UsageError("unknown formula '" + which + "'");
      }
      write_json(j, f_common.out);
      return kExitOk;
    }

    if (*bounds) {
      BoundsGrid grid;
      if (!b_n.empty()) grid.corollary_n = grid.tail_n = b_n;
      if (!b_p.empty()) grid.corollary_p = grid.tail_p = b_p;
      grid.theorem2_max_n = b_theorem2_n;
      const auto reports = bounds_suite(grid);
      write_rows(as_rows(reports), b_common);
      return all_hold(reports) ? kExitOk : kExitFailure;
    }

    if (*scan) {
      s_config.seed = resolve_seed(s_common.seed);
      const auto rows = scan_ratio(s_config);
      for (const auto& row : rows)
        if (row.k_clamped)
          std::cerr << "note: n=" << row.n << " p=" << format_real(row.p) << ": k clamped to " << *row.k_used
                    << '\n';
      write_rows(rows, s_common);
      return kExitOk;
    }

    if (*maxsearch) {
      const auto p = require_p(m_p);
      if (!p.exact_input) throw UsageError("maxsearch needs an exact probability written as num/den");
      Objective objective = Objective::total;
      if (m_objective == "unmarked")
        objective = Objective::unmarked;
      else if (m_objective == "marked")
        objective = Objective::marked;
      else if (m_objective != "total")
        throw UsageError("unknown objective '" + m_objective + "'");
      const auto result = exhaustive_max(m_n, p.exact, objective, OracleLimits{OracleLimits{}.expectation_cap, m_cap});
      nlohmann::ordered_json j;
      j["n"] = m_n;
      j["p"] = to_string(p.exact);
      j["objective"] = m_objective;
      j["value"] = to_string(result.value);
      auto argmax = nlohmann::ordered_json::array();
      for (const auto& b : result.argmax) argmax.push_back(format_permutation(b));
      j["argmax"] = argmax;
      write_json(j, m_common.out);
      return kExitOk;
    }

    if (*compare) {
      std::vector<Rational> ps;
      for (const auto& text : c_p) {
        const auto p = parse_probability(text);
        if (!p.exact_input) throw UsageError("compare needs exact probabilities written as num/den");
        ps.push_back(p.exact);
      }
      const auto report = compare_report(c_n, ps);
      write_rows(report.rows, c_common);
      std::cerr << "new1: equal=" << report.new1.equal << " formula_greater=" << report.new1.formula_greater
                << " oracle_greater=" << report.new1.oracle_greater << '\n'
                << "new2: equal=" << report.new2.equal << " formula_greater=" << report.new2.formula_greater
                << " oracle_greater=" << report.new2.oracle_greater << '\n';
      return report.new2.oracle_greater == 0 ? kExitOk : kExitFailure;
    }
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}
