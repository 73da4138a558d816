#include "records/monte_carlo.hpp"

#include <gtest/gtest.h>

#include "records/families.hpp"
#include "records/oracle.hpp"

namespace records {
namespace {

TEST(Estimate, ZeroProbabilityIsDeterministic) {
  const BasePermutation base{{2, 1, 4, 3, 5}};
  const auto e = estimate(base, 0.0, 500, 1);
  EXPECT_EQ(e.mean_total, 3.0);
  EXPECT_EQ(e.mean_unmarked, 3.0);
  EXPECT_EQ(e.mean_marked, 0.0);
  EXPECT_EQ(e.var_total, 0.0);
  EXPECT_EQ(e.var_unmarked, 0.0);
  EXPECT_EQ(e.var_marked, 0.0);
}

TEST(Estimate, AgreesWithOracleOnIdentityOfEight) {
  const auto base = identity(8);
  const double exact = to_double(exact_expectations(base, Rational{3, 10}).e_total);
  const auto e = estimate(base, 0.3, 100000, 20240611);
  EXPECT_LE(std::abs(e.mean_total - exact), 4.0 * standard_error_total(e));
}

TEST(Estimate, FullShuffleOfHundredNearHarmonic) {
  double harmonic = 0.0;
  for (int j = 100; j >= 1; --j) harmonic += 1.0 / j;
  EXPECT_NEAR(harmonic, 5.18738, 1e-5);
  const auto e = estimate(identity(100), 1.0, 100000, 99);
  EXPECT_EQ(e.mean_unmarked, 0.0);
  EXPECT_LE(std::abs(e.mean_total - harmonic), 4.0 * standard_error_total(e));
}

TEST(Estimate, TalliesAddUp) {
  const auto e = estimate(bmb_shifted(200, 0.3), 0.3, 3000, 5);
  EXPECT_EQ(e.sums.total, e.sums.unmarked + e.sums.marked);
  EXPECT_EQ(e.mean_total, e.mean_unmarked + e.mean_marked);
  EXPECT_GE(e.mean_total, 1.0);
  EXPECT_LE(e.mean_total, 200.0);
  EXPECT_GE(e.var_total, 0.0);
  EXPECT_GE(e.var_unmarked, 0.0);
  EXPECT_GE(e.var_marked, 0.0);
}

TEST(Estimate, VarianceMatchesTwoPassComputation) {
  const auto base = bmb_shifted(60, 0.4);
  const auto e = estimate(base, 0.4, 2000, 8);
  std::vector<double> xs;
  RealizedPermutation out;
  std::vector<std::size_t> slots;
  for (std::uint64_t i = 0; i < 2000; ++i) {
    auto rng = replica_stream(8, i);
    apply_partial_shuffle(base, 0.4, rng, out, slots);
    xs.push_back(static_cast<double>(count_records(out).total));
  }
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= xs.size();
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  EXPECT_NEAR(e.mean_total, mean, 1e-12);
  EXPECT_NEAR(e.var_total, ss / (xs.size() - 1), 1e-9);
}

TEST(Estimate, BitIdenticalAcrossThreadCounts) {
  const auto base = bmb_shifted(500, 0.25);
  const auto single = estimate(base, 0.25, 4001, 77);
  for (unsigned threads : {2U, 3U, 8U}) EXPECT_EQ(estimate(base, 0.25, 4001, 77, {threads, 0}), single);
  EXPECT_EQ(estimate(base, 0.25, 4001, 77), single);
  EXPECT_NE(estimate(base, 0.25, 4001, 78).sums, single.sums);
}

TEST(Estimate, RejectsBadArguments) {
  EXPECT_THROW(estimate(identity(3), 0.5, 0, 1), DomainError);
  EXPECT_THROW(estimate(identity(3), 1.5, 10, 1), DomainError);
}

TEST(Merge, SplitRunEqualsSingleRun) {
  const auto base = identity(30);
  const auto whole = estimate(base, 0.5, 10000, 3);
  const auto first = estimate(base, 0.5, 5000, 3);
  const auto second = estimate(base, 0.5, 5000, 3, {1, 5000});
  EXPECT_EQ(merge(first, second), whole);
  EXPECT_EQ(merge(second, first), whole);
  EXPECT_EQ(merge(first, second).samples, first.samples + second.samples);
}

TEST(Merge, EmptyIsIdentity) {
  const auto a = estimate(identity(5), 0.5, 100, 1);
  EXPECT_EQ(merge(a, MCEstimate{}), a);
  EXPECT_EQ(merge(MCEstimate{}, a), a);
}

TEST(Merge, RejectsMismatchedConfigurations) {
  const auto a = estimate(identity(5), 0.5, 100, 1);
  EXPECT_THROW(merge(a, estimate(identity(5), 0.4, 100, 1, {1, 100})), MergeError);
  EXPECT_THROW(merge(a, estimate(reversed(5), 0.5, 100, 1, {1, 100})), MergeError);
  EXPECT_THROW(merge(a, estimate(identity(5), 0.5, 100, 2, {1, 100})), MergeError);
  EXPECT_THROW(merge(a, a), MergeError);
  EXPECT_THROW(merge(a, estimate(identity(5), 0.5, 100, 1, {1, 150})), MergeError);
}

TEST(CiHalfwidth, Properties) {
  auto e = estimate(identity(20), 0.5, 1000, 4);
  const auto h = ci_halfwidth(e, 1.96);
  EXPECT_NEAR(h[0], 1.96 * std::sqrt(e.var_total / 1000.0), 1e-15);
  EXPECT_EQ(ci_halfwidth(e, 0.0), (std::array<double, 3>{0.0, 0.0, 0.0}));
  EXPECT_EQ(ci_halfwidth(estimate(identity(4), 0.0, 10, 1), 2.0)[0], 0.0);

  auto doubled = e;
  doubled.samples *= 2;
  const auto h2 = ci_halfwidth(doubled, 1.96);
  EXPECT_NEAR(h2[0] * h2[0], h[0] * h[0] / 2.0, 1e-12);

  EXPECT_THROW(ci_halfwidth(estimate(identity(4), 0.5, 1, 1), 1.0), DomainError);
}

TEST(ToJson, CarriesAllFields) {
  const auto e = estimate(identity(6), 0.5, 50, 12345);
  const auto j = to_json(e);
  for (const char* key : {"mean_total", "mean_unmarked", "mean_marked", "var_total", "var_unmarked", "var_marked",
                          "samples", "seed"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["seed"].get<std::uint64_t>(), 12345U);
  EXPECT_EQ(j["samples"].get<std::uint64_t>(), 50U);
}

}  // namespace
}  // namespace records
