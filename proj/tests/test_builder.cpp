#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "helpers.hpp"
#include "oracle.hpp"
#include "pgn/builder.hpp"
#include "pgn/random.hpp"

using namespace pgn;
using namespace testing_helpers;

TEST(DivisionSeq, Examples) {
  auto seq = validate_division_seq({V({1, 2, 2, 4}), V({2, 4, 4, 8})}, 2);
  ASSERT_EQ(seq.ranges.size(), 1u);
  EXPECT_EQ(seq.ranges[0], (Range{1, 4}));
  std::vector<Vec> pts = dim5_points();
  pts.push_back(scale(pts[0], 8));
  auto d5 = validate_division_seq(pts, 2);
  EXPECT_EQ(d5.ranges, (std::vector<Range>{{1, 5}, {2, 5}, {2, 5}}));
}

TEST(DivisionSeq, Rejections) {
  auto code = [](std::vector<Vec> pts, int m) {
    try {
      validate_division_seq(pts, m);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::internal_consistency;
  };
  EXPECT_EQ(code({V({1, 1, 2}), V({1, 1, 2})}, 1), ErrorCode::invalid_division_seq);  // identical
  EXPECT_EQ(code({V({1, 1, 2})}, 1), ErrorCode::invalid_division_seq);                // one point
  EXPECT_EQ(code({V({1, 2, 2, 4}), V({2, 2, 2, 8})}, 2), ErrorCode::invalid_division_seq);  // gap at j=2,3
  EXPECT_EQ(code({V({1, 2, 2, 4}), V({1, 2, 2, 8})}, 2), ErrorCode::invalid_division_seq);  // no straddle
  EXPECT_EQ(code({V({1, 2, 2, 4}), V({1, 3, 3, 8})}, 2), ErrorCode::invalid_division_seq);  // staircase a_4 <= b_3
  EXPECT_EQ(code({V({-1, 2, 2, 4}), V({2, 4, 4, 8})}, 2), ErrorCode::invalid_division_seq);  // negative
  EXPECT_EQ(code({V({1, 2, 3, 4}), V({2, 4, 4, 8})}, 2), ErrorCode::invalid_division_seq);  // a_m != a_{m+1}
}

TEST(Bridge, HandTracedExample) {
  NSystem br = bridge(V({1, 1, 2}), V({2, 2, 3}), 1);
  EXPECT_EQ(br, bridge_example());
}

TEST(Bridge, FourDimensionalExample) {
  NSystem br = bridge(V({1, 2, 2, 4}), V({2, 4, 4, 8}), 2);
  EXPECT_EQ(br.q0, Rational(9));
  EXPECT_EQ(br.q1(), Rational(18));
  EXPECT_TRUE(validate(br).ok());
  EXPECT_EQ(evaluate(br, 18), V({2, 4, 4, 8}));
  EXPECT_EQ(division_numbers(br, 2).numbers, V({9, 18}));
  std::vector<int> actives;
  for (const auto& s : br.segments) actives.push_back(s.active);
  EXPECT_EQ(actives, (std::vector<int>{3, 4, 1, 2}));
}

TEST(Bridge, Rejections) {
  EXPECT_THROW(bridge(V({2, 4, 4, 8}), V({1, 2, 2, 4}), 2), Error);
  EXPECT_THROW(bridge(V({1, 1, 2}), V({1, 1, 2}), 1), Error);
  EXPECT_THROW(bridge(V({1, 2, 2, 4}), V({1, 3, 3, 8}), 2), Error);
}

TEST(Bridge, LowerSumIsFlatThenDiagonal) {
  SeedSampler rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + trial % 5, m = 1 + trial % (n - 1);
    auto pts = rng.chain_points(m, n, 2, true);
    NSystem br = bridge(pts[0], pts[1], m);
    bool rising = false;
    for (const auto& s : br.segments) {
      bool low = s.active <= m;
      EXPECT_FALSE(rising && !low);
      rising = rising || low;
    }
    EXPECT_EQ(evaluate(br, br.q0), pts[0]);
    EXPECT_EQ(evaluate(br, br.q1()), pts[1]);
    EXPECT_TRUE(is_nondegenerate(br));
  }
}

namespace {

// All systems from ua to ub whose breakpoint values are coordinates of ua or
// ub and which satisfy the bridge conditions.
std::vector<NSystem> alternatives(const Vec& ua, const Vec& ub, int m, Range r) {
  std::set<Rational> levels(ua.begin(), ua.end());
  levels.insert(ub.begin(), ub.end());
  int n = static_cast<int>(ua.size());
  std::vector<NSystem> found;
  NSystem sys{n, sum(ua), ua, {}};
  Vec cur = ua;
  std::function<void(int)> dfs = [&](int depth) {
    if (cur == ub) {
      try {
        certify_bridge(sys, ua, ub, m, r);
        found.push_back(sys);
      } catch (const Error&) {
      }
      return;
    }
    if (depth == 0) return;
    for (int j = 1; j <= n; ++j) {
      if (!sys.segments.empty() && sys.segments.back().active == j) continue;
      for (const auto& lv : levels) {
        if (lv <= cur[j - 1] || lv > ub[j - 1]) continue;
        if (j < n && lv > cur[j]) continue;  // ordering
        Rational q = sys.q1() + (lv - cur[j - 1]);
        Rational old = cur[j - 1];
        cur[j - 1] = lv;
        sys.segments.push_back({q, j});
        if (validate(sys).ok()) dfs(depth - 1);
        sys.segments.pop_back();
        cur[j - 1] = old;
      }
    }
  };
  dfs(3 * n);
  return found;
}

}  // namespace

TEST(Bridge, UniqueAmongEnumeratedAlternatives) {
  std::vector<std::tuple<Vec, Vec, int>> cases{
      {V({1, 1, 2}), V({2, 2, 3}), 1},
      {V({1, 2, 2, 4}), V({2, 4, 4, 8}), 2},
      {V({1, 3, 3}), V({3, 4, 4}), 2},
  };
  SeedSampler rng(99);
  for (int i = 0; i < 12; ++i) {
    int n = 3 + i % 2, m = 1 + i % (n - 1);
    auto pts = rng.chain_points(m, n, 2, false);
    cases.emplace_back(pts[0], pts[1], m);
  }
  for (const auto& [ua, ub, m] : cases) {
    Range r = detail::check_division_pair(ua, ub, m, 0);
    NSystem ref = bridge(ua, ub, m);
    auto alts = alternatives(ua, ub, m, r);
    ASSERT_FALSE(alts.empty());
    for (const auto& alt : alts) {
      std::set<Rational> qs;
      for (const auto& q : alt.breakpoints()) qs.insert(q);
      for (const auto& q : ref.breakpoints()) qs.insert(q);
      for (const auto& q : qs) EXPECT_EQ(evaluate(alt, q), evaluate(ref, q));
    }
  }
}

TEST(Chain, Dim5AnchorsAndSeeds) {
  std::vector<Vec> pts = dim5_points();
  pts.push_back(scale(pts[0], 8));
  NSystem sys = chain(validate_division_seq(pts, 2));
  EXPECT_EQ(division_numbers(sys, 2).numbers, V({52, 104, 208, 416}));
  NSystem two = chain(validate_division_seq({V({1, 2, 2, 4}), V({2, 4, 4, 8})}, 2));
  EXPECT_EQ(division_numbers(two, 2).numbers, V({9, 18}));
  EXPECT_EQ(two, bridge(V({1, 2, 2, 4}), V({2, 4, 4, 8}), 2));
}

TEST(Chain, AllowsZeroFirstCoordinate) {
  NSystem sys = chain(validate_division_seq({V({0, 1, 1}), V({1, 2, 2}), V({2, 3, 3})}, 2));
  EXPECT_TRUE(validate(sys).ok());
  EXPECT_THROW(make_seed({V({0, 1, 1})}, 2, 4), Error);
}

TEST(Seed, Rejections) {
  EXPECT_THROW(make_seed(dim5_points(), 2, 1), Error);
  EXPECT_THROW(make_seed(dim5_points(), 2, 2), Error);  // closing step breaks the chain
  EXPECT_NO_THROW(make_seed(dim5_points(), 2, 8));
}

TEST(Unfold, Dim5Domain) {
  NSystem sys = unfold_self_similar(dim5_seed(), 2);
  EXPECT_EQ(sys.q0, Rational(52));
  EXPECT_EQ(sys.q1(), Rational(3328));
  EXPECT_EQ(evaluate(sys, 8 * 95), scale(evaluate(sys, 95), 8));
  std::vector<Vec> pts = dim5_points();
  pts.push_back(scale(pts[0], 8));
  EXPECT_EQ(unfold_self_similar(dim5_seed(), 1), chain(validate_division_seq(pts, 2)));
}

TEST(Unfold, SelfSimilarAtBreakpoints) {
  SeedSampler rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + trial % 4, m = 1 + trial % (n - 1);
    SelfSimilarSeed seed = rng.seed(m, n, 1 + trial % 3);
    NSystem sys = unfold_self_similar(seed, 2);
    for (const auto& q : sys.breakpoints())
      if (seed.rho * q <= sys.q1()) {
        EXPECT_EQ(evaluate(sys, seed.rho * q), scale(evaluate(sys, q), seed.rho));
      }
  }
}

TEST(Chain, RebuildFromDivisionValuesKeepsLowerSum) {
  // chain over the division points of a system reproduces S_m^- at every pivot
  SeedSampler rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 3 + trial % 3, m = 1 + trial % (n - 1);
    NSystem sys = unfold_self_similar(rng.seed(m, n, 2), 1);
    auto d = division_numbers(sys, m);
    NSystem again = chain(validate_division_seq(d.values, m));
    for (const auto& iv : simple_intervals(sys, m)) {
      EXPECT_EQ(sum(evaluate(again, iv.t), 0, m), sum(evaluate(sys, iv.t), 0, m));
      EXPECT_EQ(sum(evaluate(again, iv.t), 0, m), sum(evaluate(sys, iv.a), 0, m));
    }
  }
}
