#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracle.hpp"
#include "pgn/invariants.hpp"
#include "pgn/random.hpp"

using namespace pgn;
using namespace testing_helpers;

namespace {

std::pair<std::string, std::string> oracle_pair(const SelfSimilarSeed& seed) {
  std::vector<oracle::Point> pts;
  for (const auto& p : seed.seq.points) {
    oracle::Point q;
    for (const auto& x : p) q.push_back(oracle::parse(x.str()));
    pts.push_back(q);
  }
  auto [a, b] = oracle::chi_pair(pts, oracle::parse(seed.rho.str()), seed.m());
  return {oracle::str(a), oracle::str(b)};
}

}  // namespace

TEST(ChiPeriodic, Dim5Seed) {
  SpectrumPoint p = chi_pair_periodic(dim5_seed());
  EXPECT_EQ(p.alpha, ExtReal(Rational(43, 9)));
  EXPECT_EQ(p.beta, ExtReal(Rational(86, 9)));
  auto [a, b] = oracle_pair(dim5_seed());
  EXPECT_EQ(a, "43/9");
  EXPECT_EQ(b, "86/9");
}

TEST(ChiPeriodic, S24SeedAndSinglePoint) {
  SelfSimilarSeed seed = make_seed({V({1, 2, 2, 4})}, 2, 2);
  EXPECT_EQ(chi_pair_periodic(seed), (SpectrumPoint{ExtReal(2), ExtReal(4)}));
  SelfSimilarSeed one = make_seed({V({1, 2, 2, 4})}, 2, 5);
  SpectrumPoint p = chi_pair_periodic(one);
  EXPECT_EQ(p.beta.value(), 5 * p.alpha.value());
}

TEST(ChiPeriodic, MatchesOracleOnRandomSeeds) {
  SeedSampler rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + trial % 5, m = 1 + trial % (n - 1);
    SelfSimilarSeed seed = rng.seed(m, n, 1 + trial % 4);
    SpectrumPoint p = chi_pair_periodic(seed);
    auto [a, b] = oracle_pair(seed);
    EXPECT_EQ(p.alpha.str(), a);
    EXPECT_EQ(p.beta.str(), b);
    EXPECT_GE(p.alpha, ExtReal(Rational(n - m, m)));
    EXPECT_LE(p.alpha, p.beta);
    EXPECT_EQ(chi_pair_self_similar(seed, m), p);
  }
}

TEST(ChiTrace, FiniteEqualsPeriodic) {
  InvariantTrace tr = chi_trace_finite(unfold_self_similar(dim5_seed(), 2), 2);
  EXPECT_EQ(tr.alpha_hat, ExtReal(Rational(43, 9)));
  EXPECT_EQ(tr.beta_hat, ExtReal(Rational(86, 9)));
  EXPECT_EQ(tr.entries.size(), 7u);
  for (const auto& e : tr.entries)
    if (e.ratio_cross) {
      EXPECT_LE(e.ratio_self, *e.ratio_cross);
    }
}

TEST(ChiTrace, BridgeExample) {
  InvariantTrace tr = chi_trace_finite(bridge(V({1, 2, 2, 4}), V({2, 4, 4, 8}), 2), 2);
  ASSERT_EQ(tr.entries.size(), 2u);
  EXPECT_EQ(tr.alpha_hat, ExtReal(2));
  EXPECT_EQ(tr.beta_hat, ExtReal(4));
  EXPECT_EQ(tr.entries[0].ratio_self, tr.entries[1].ratio_self);
  EXPECT_THROW(chi_trace_finite(bridge_example(), 2), Error);
}

TEST(ChiProfile, MaxAtPivotMinAtEnds) {
  NSystem sys = unfold_self_similar(dim5_seed(), 1);
  auto prof = chi_profile(sys, 2);
  bool seen = false;
  for (const auto& [q, chi] : prof)
    if (q == 95) {
      EXPECT_EQ(chi, Rational(86, 9));
      seen = true;
    }
  EXPECT_TRUE(seen);
  try {
    chi_profile(ray_example(), 1);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::indeterminate_ratio);
  }
}

TEST(ChiProfile, SimpleIntervalExtremaMatchClosedForms) {
  SeedSampler rng(6);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + trial % 5, m = 1 + trial % (n - 1);
    NSystem sys = unfold_self_similar(rng.seed(m, n, 1 + trial % 3), 1);
    auto d = division_numbers(sys, m);
    auto prof = chi_profile(sys, m);
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
      std::optional<Rational> hi, lo;
      for (const auto& [q, chi] : prof) {
        if (q < d.numbers[i] || q > d.numbers[i + 1]) continue;
        if (!hi || chi > *hi) hi = chi;
        if (!lo || chi < *lo) lo = chi;
      }
      EXPECT_EQ(*hi, d.sums[i + 1].second / d.sums[i].first);
      EXPECT_EQ(*lo, std::min(d.sums[i].second / d.sums[i].first, d.sums[i + 1].second / d.sums[i + 1].first));
    }
  }
}

TEST(Backwards, Examples) {
  SelfSimilarSeed s24 = make_seed({V({1, 2, 2, 4})}, 2, 2);
  EXPECT_EQ(chi_pair_backwards(s24, 2), (SpectrumPoint{ExtReal(2), ExtReal(4)}));
  // n = 2: the valid seed (1,1) with rho = 2 forces the lower invariant to 1
  SelfSimilarSeed two = make_seed({V({1, 1})}, 1, 2);
  SpectrumPoint p = chi_pair_backwards(two, 1);
  EXPECT_EQ(p.alpha, ExtReal(1));
  EXPECT_EQ(p.beta, ExtReal(2));
  SpectrumPoint d5 = chi_pair_backwards(dim5_seed(), 3);
  EXPECT_EQ(d5, chi_pair_self_similar(dim5_seed(), 2));
  SpectrumPoint d5b = chi_pair_backwards(dim5_seed(), 2);
  EXPECT_EQ(d5b, chi_pair_self_similar(dim5_seed(), 3));
}

TEST(Backwards, OppositeRatiosStayBelowDirichlet) {
  SeedSampler rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + trial % 4, m = 1 + trial % (n - 1);
    NSystem dual = opposite(unfold_self_similar(rng.seed(m, n, 1 + trial % 3), 2));
    auto d = division_numbers(dual, m);
    for (std::size_t i = 0; i < d.size(); ++i) EXPECT_LE(d.sums[i].second / d.sums[i].first, Rational(n - m, m));
  }
}
