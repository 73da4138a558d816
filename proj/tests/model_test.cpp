#include "records/model.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "records/families.hpp"

namespace records {
namespace {

TEST(BasePermutation, RejectsNonPermutations) {
  EXPECT_THROW(BasePermutation({}), DomainError);
  EXPECT_THROW(BasePermutation({1, 1}), DomainError);
  EXPECT_THROW(BasePermutation({0, 1}), DomainError);
  EXPECT_THROW(BasePermutation({1, 3}), DomainError);
  EXPECT_NO_THROW(BasePermutation({2, 1}));
}

TEST(ModelParams, RationalAndRealAgree) {
  for (const char* text : {"1/3", "2/7", "0", "1", "9/10"}) {
    const ModelParams params{5, parse_probability(text)};
    const double real = params.p.real;
    const double ulp = std::nextafter(real, 2.0) - real;
    EXPECT_LE(abs(Rational{real} - params.p.exact), Rational{ulp}) << text;
  }
  EXPECT_THROW(ModelParams(0, Probability::from_rational(Rational{1, 2})), DomainError);
}

TEST(Realize, PlacesArrangementIntoMarkedSlots) {
  const BasePermutation base{{2, 1, 3}};
  const auto x = realize(base, Marking::at_positions(3, {1, 3}), std::vector<int>{3, 2});
  EXPECT_EQ(x.values, (std::vector<int>{3, 1, 2}));
  EXPECT_EQ(x.marked, (std::vector<std::uint8_t>{1, 0, 1}));
}

TEST(Realize, EmptyMarkingAndIdentityArrangementReturnBase) {
  const BasePermutation base{{4, 2, 1, 3}};
  const auto plain = realize(base, Marking::none(4), std::vector<int>{});
  EXPECT_EQ(plain.values, (std::vector<int>{4, 2, 1, 3}));
  EXPECT_EQ(std::count(plain.marked.begin(), plain.marked.end(), 1), 0);

  const auto same = realize(base, Marking::at_positions(4, {1, 2, 4}), std::vector<int>{4, 2, 3});
  EXPECT_EQ(same.values, (std::vector<int>{4, 2, 1, 3}));
}

TEST(Realize, RejectsNonBijectiveArrangement) {
  const BasePermutation base{{2, 1, 3}};
  const auto marking = Marking::at_positions(3, {1, 3});
  EXPECT_THROW(realize(base, marking, std::vector<int>{3, 3}), InvalidArrangementError);
  EXPECT_THROW(realize(base, marking, std::vector<int>{1, 2}), InvalidArrangementError);
  EXPECT_THROW(realize(base, marking, std::vector<int>{2}), InvalidArrangementError);
}

TEST(CountRecords, Examples) {
  EXPECT_EQ(count_records({{1, 2, 3}, {0, 0, 0}}), (RecordTally{3, 3, 0}));
  EXPECT_EQ(count_records({{3, 1, 2}, {0, 0, 0}}).total, 1U);
  EXPECT_EQ(count_records({{2, 1, 4, 3, 5}, {0, 0, 1, 0, 0}}), (RecordTally{3, 2, 1}));
}

TEST(QuadrantCounts, Examples) {
  const BasePermutation base{{3, 1, 4, 2, 5}};
  const auto q3 = quadrant_counts(base, 3);
  EXPECT_EQ(std::tie(q3.n11, q3.n12, q3.n21, q3.n22), std::make_tuple(2U, 0U, 1U, 1U));
  EXPECT_EQ(q3.sum(), 4U);
  const auto q1 = quadrant_counts(base, 1);
  EXPECT_EQ(std::tie(q1.n11, q1.n12, q1.n21, q1.n22), std::make_tuple(0U, 0U, 2U, 2U));
  const auto qi = quadrant_counts(identity(4), 2);
  EXPECT_EQ(std::tie(qi.n11, qi.n12, qi.n21, qi.n22), std::make_tuple(1U, 0U, 0U, 2U));
}

TEST(QuadrantCounts, RangeErrors) {
  const BasePermutation base{{2, 1}};
  EXPECT_THROW(quadrant_counts(base, 0), DomainError);
  EXPECT_THROW(quadrant_counts(base, 3), DomainError);
  EXPECT_THROW(quadrant_counts(base, 1, 0), DomainError);
  EXPECT_THROW(quadrant_counts(base, 1, 3), DomainError);
}

TEST(QuadrantCounts, SplitByForeignValueExcludesBothElements) {
  SplitMix64 rng{11};
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = 2 + uniform_below(rng, 9);
    const auto base = random_uniform(n, rng);
    for (std::size_t k = 1; k <= n; ++k) {
      EXPECT_EQ(quadrant_counts(base, k).sum(), n - 1);
      for (int v = 1; v <= static_cast<int>(n); ++v) {
        const auto q = quadrant_counts(base, k, v);
        EXPECT_EQ(q.n11 + q.n21, q.n_circ1());
        EXPECT_EQ(q.sum(), v == base.at(k) ? n - 1 : n - 2);
      }
    }
  }
}

TEST(ApplyPartialShuffle, ZeroProbabilityIsIdentity) {
  const BasePermutation base{{2, 1, 3}};
  SplitMix64 rng{1};
  const auto x = apply_partial_shuffle(base, 0.0, rng);
  EXPECT_EQ(x.values, (std::vector<int>{2, 1, 3}));
  EXPECT_EQ(std::count(x.marked.begin(), x.marked.end(), 1), 0);
}

TEST(ApplyPartialShuffle, SingleElementMarkedWithProbabilityP) {
  const BasePermutation base{{1}};
  SplitMix64 rng{8};
  int marked = 0;
  constexpr int kDraws = 40000;
  for (int i = 0; i < kDraws; ++i) {
    const auto x = apply_partial_shuffle(base, 0.3, rng);
    ASSERT_EQ(x.values, std::vector<int>{1});
    marked += x.marked[0];
  }
  // sd = sqrt(0.21 / 40000) ~ 0.0023
  EXPECT_NEAR(static_cast<double>(marked) / kDraws, 0.3, 0.01);
}

TEST(ApplyPartialShuffle, FullShuffleIsUniformOverSixOutcomes) {
  const BasePermutation base = identity(3);
  SplitMix64 rng{99};
  std::map<std::vector<int>, int> counts;
  constexpr int kDraws = 60000;
  for (int i = 0; i < kDraws; ++i) ++counts[apply_partial_shuffle(base, 1.0, rng).values];
  ASSERT_EQ(counts.size(), 6U);
  double chi2 = 0.0;
  const double expected = kDraws / 6.0;
  for (const auto& [perm, c] : counts) {
    EXPECT_NEAR(c / static_cast<double>(kDraws), 1.0 / 6.0, 0.01);
    chi2 += (c - expected) * (c - expected) / expected;
  }
  EXPECT_LT(chi2, 20.52);  // chi-square(5) 0.999 quantile
}

TEST(ApplyPartialShuffle, FullShuffleOfFourCoversAllOutcomes) {
  const BasePermutation base{{3, 1, 4, 2}};
  SplitMix64 rng{5};
  std::map<std::vector<int>, int> counts;
  constexpr int kDraws = 48000;
  for (int i = 0; i < kDraws; ++i) ++counts[apply_partial_shuffle(base, 1.0, rng).values];
  ASSERT_EQ(counts.size(), 24U);
  double chi2 = 0.0;
  const double expected = kDraws / 24.0;
  for (const auto& [perm, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 49.73);  // chi-square(23) 0.999 quantile
}

TEST(ApplyPartialShuffle, OutcomeInvariants) {
  SplitMix64 rng{123};
  for (int trial = 0; trial < 500; ++trial) {
    const auto n = 1 + uniform_below(rng, 30);
    const auto base = random_uniform(n, rng);
    const double p = uniform01(rng);
    const auto x = apply_partial_shuffle(base, p, rng);

    std::vector<int> before, after;
    for (std::size_t i = 0; i < n; ++i) {
      if (x.marked[i]) {
        before.push_back(base.values()[i]);
        after.push_back(x.values[i]);
      } else {
        EXPECT_EQ(x.values[i], base.values()[i]);
      }
    }
    std::sort(before.begin(), before.end());
    std::sort(after.begin(), after.end());
    EXPECT_EQ(before, after);
    EXPECT_NO_THROW(BasePermutation{x.values});

    const auto tally = count_records(x);
    EXPECT_GE(tally.total, 1U);
    EXPECT_LE(tally.total, n);
    EXPECT_EQ(tally.total, tally.unmarked + tally.marked);
    // Position 1 always counts, under its own mark flag.
    const auto first = count_records({{x.values[0]}, {x.marked[0]}});
    EXPECT_EQ(first.total, 1U);
  }
}

TEST(ApplyPartialShuffle, SeedDeterminesOutcome) {
  const auto base = identity(50);
  SplitMix64 a{77}, b{77};
  EXPECT_EQ(apply_partial_shuffle(base, 0.4, a).values, apply_partial_shuffle(base, 0.4, b).values);
}

}  // namespace
}  // namespace records
