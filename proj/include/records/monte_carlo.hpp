#pragma once

// Reproducible Monte Carlo estimates of expected record counts.
//
// Replica i draws from replica_stream(seed, i). Per-replica tallies are
// integers, so the estimator accumulates exact integer power sums; means and
// variances are derived from those sums only when an estimate is finalized.
// Results are bit-identical for any split of the replica range, any thread
// count and any merge order.

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <thread>
#include <vector>

#include <json.hpp>

#include "records/errors.hpp"
#include "records/model.hpp"
#include "records/rng.hpp"

namespace records {

/// Exact first and second power sums of the three tallies.
struct MomentSums {
  std::uint64_t total = 0, unmarked = 0, marked = 0;
  std::uint64_t total_sq = 0, unmarked_sq = 0, marked_sq = 0;

  void add(const RecordTally& t) noexcept {
    total += t.total;
    unmarked += t.unmarked;
    marked += t.marked;
    total_sq += t.total * t.total;
    unmarked_sq += t.unmarked * t.unmarked;
    marked_sq += t.marked * t.marked;
  }

  void add(const MomentSums& o) noexcept {
    total += o.total;
    unmarked += o.unmarked;
    marked += o.marked;
    total_sq += o.total_sq;
    unmarked_sq += o.unmarked_sq;
    marked_sq += o.marked_sq;
  }

  friend bool operator==(const MomentSums&, const MomentSums&) = default;
};

struct MCEstimate {
  double mean_total = 0.0;
  double mean_unmarked = 0.0;
  double mean_marked = 0.0;
  double var_total = 0.0;  // unbiased; 0 when samples < 2
  double var_unmarked = 0.0;
  double var_marked = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  // Provenance: replicas [first_replica, first_replica + samples) of the
  // configuration identified by `config`.
  std::uint64_t first_replica = 0;
  std::uint64_t config = 0;
  MomentSums sums;

  [[nodiscard]] bool empty() const noexcept { return samples == 0; }

  friend bool operator==(const MCEstimate&, const MCEstimate&) = default;
};

/// Fingerprint of (base, p) used to refuse merging unrelated estimates.
inline std::uint64_t config_fingerprint(const BasePermutation& base, double p) noexcept {
  std::uint64_t h = mix64(base.size() ^ mix64(std::bit_cast<std::uint64_t>(p)));
  for (int v : base.values()) h = mix64(h ^ (static_cast<std::uint64_t>(v) * kGamma));
  return h;
}

namespace detail {

inline double unbiased_variance(std::uint64_t sum, std::uint64_t sum_sq, std::uint64_t count) {
  if (count < 2) return 0.0;
  // N * sum_sq - sum^2 is exact and non-negative.
  using u128 = unsigned __int128;
  const u128 numerator = static_cast<u128>(count) * sum_sq - static_cast<u128>(sum) * sum;
  const long double denom = static_cast<long double>(count) * static_cast<long double>(count - 1);
  return static_cast<double>(static_cast<long double>(numerator) / denom);
}

inline void finalize(MCEstimate& e) {
  if (e.samples == 0) {
    e.mean_total = e.mean_unmarked = e.mean_marked = 0.0;
    e.var_total = e.var_unmarked = e.var_marked = 0.0;
    return;
  }
  const auto n = static_cast<double>(e.samples);
  e.mean_unmarked = static_cast<double>(e.sums.unmarked) / n;
  e.mean_marked = static_cast<double>(e.sums.marked) / n;
  e.mean_total = e.mean_unmarked + e.mean_marked;
  e.var_total = unbiased_variance(e.sums.total, e.sums.total_sq, e.samples);
  e.var_unmarked = unbiased_variance(e.sums.unmarked, e.sums.unmarked_sq, e.samples);
  e.var_marked = unbiased_variance(e.sums.marked, e.sums.marked_sq, e.samples);
}

inline MomentSums run_replicas(const BasePermutation& base, double p, std::uint64_t seed,
                               std::uint64_t begin, std::uint64_t end) {
  MomentSums sums;
  RealizedPermutation outcome;
  std::vector<std::size_t> slots;
  for (std::uint64_t i = begin; i < end; ++i) {
    auto rng = replica_stream(seed, i);
    apply_partial_shuffle(base, p, rng, outcome, slots);
    sums.add(count_records(outcome));
  }
  return sums;
}

}  // namespace detail

struct EstimateOptions {
  unsigned threads = 1;
  std::uint64_t first_replica = 0;
};

inline MCEstimate estimate(const BasePermutation& base, double p, std::uint64_t samples, std::uint64_t seed,
                           const EstimateOptions& options = {}) {
  if (samples == 0) throw DomainError("estimate: samples must be positive");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("estimate: probability outside [0,1]");
  const auto n = static_cast<long double>(base.size());
  if (n * n * static_cast<long double>(samples) >= 1.8e19L)
    throw DomainError("estimate: samples * n^2 overflows the 64-bit moment sums");

  MCEstimate e;
  e.samples = samples;
  e.seed = seed;
  e.first_replica = options.first_replica;
  e.config = config_fingerprint(base, p);

  const std::uint64_t begin = options.first_replica;
  const std::uint64_t end = begin + samples;
  const unsigned threads = std::max(1U, std::min<unsigned>(options.threads, static_cast<unsigned>(samples)));
  if (threads == 1) {
    e.sums = detail::run_replicas(base, p, seed, begin, end);
  } else {
    std::vector<MomentSums> parts(threads);
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t lo = begin + samples * t / threads;
      const std::uint64_t hi = begin + samples * (t + 1) / threads;
      workers.emplace_back([&, t, lo, hi] { parts[t] = detail::run_replicas(base, p, seed, lo, hi); });
    }
    for (auto& w : workers) w.join();
    for (const auto& part : parts) e.sums.add(part);
  }
  detail::finalize(e);
  return e;
}

/// Pools two estimates of adjacent replica ranges of the same configuration.
/// An empty estimate is the identity.
inline MCEstimate merge(const MCEstimate& a, const MCEstimate& b) {
  if (b.empty()) return a;
  if (a.empty()) return b;
  if (a.config != b.config || a.seed != b.seed)
    throw MergeError("merge: estimates come from different configurations or seeds");
  const MCEstimate& lo = a.first_replica <= b.first_replica ? a : b;
  const MCEstimate& hi = a.first_replica <= b.first_replica ? b : a;
  if (lo.first_replica + lo.samples != hi.first_replica)
    throw MergeError("merge: replica ranges must be disjoint and adjacent");

  MCEstimate out = lo;
  out.samples = lo.samples + hi.samples;
  out.sums.add(hi.sums);
  detail::finalize(out);
  return out;
}

/// z * sqrt(var / samples) for total, unmarked, marked.
inline std::array<double, 3> ci_halfwidth(const MCEstimate& e, double z) {
  if (e.samples < 2) throw DomainError("ci_halfwidth: needs at least two samples");
  const auto n = static_cast<double>(e.samples);
  return {z * std::sqrt(e.var_total / n), z * std::sqrt(e.var_unmarked / n), z * std::sqrt(e.var_marked / n)};
}

inline double standard_error_total(const MCEstimate& e) {
  return e.samples < 2 ? 0.0 : std::sqrt(e.var_total / static_cast<double>(e.samples));
}

inline nlohmann::ordered_json to_json(const MCEstimate& e) {
  nlohmann::ordered_json j;
  j["mean_total"] = e.mean_total;
  j["mean_unmarked"] = e.mean_unmarked;
  j["mean_marked"] = e.mean_marked;
  j["var_total"] = e.var_total;
  j["var_unmarked"] = e.var_unmarked;
  j["var_marked"] = e.var_marked;
  j["samples"] = e.samples;
  j["seed"] = e.seed;
  j["first_replica"] = e.first_replica;
  j["config"] = e.config;
  j["sums"] = {{"total", e.sums.total},           {"unmarked", e.sums.unmarked},
               {"marked", e.sums.marked},         {"total_sq", e.sums.total_sq},
               {"unmarked_sq", e.sums.unmarked_sq}, {"marked_sq", e.sums.marked_sq}};
  return j;
}

}  // namespace records
