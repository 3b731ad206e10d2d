#include <gtest/gtest.h>

#include <random>

#include "pgn/lp.hpp"
#include "pgn/search.hpp"

using namespace pgn;

TEST(LP, OneVariable) {
  LPInstance inst{1, {}};
  inst.add({1}, Rel::ge, 1, "lo");
  inst.add({1}, Rel::le, 2, "hi");
  LPResult r = lp_feasible(inst);
  ASSERT_TRUE(r.feasible());
  EXPECT_GE(r.x[0], Rational(1));
  EXPECT_LE(r.x[0], Rational(2));
  EXPECT_TRUE(satisfies(inst, r.x));
  EXPECT_EQ(fm_feasible(inst), std::optional<bool>(true));

  LPInstance bad{1, {}};
  bad.add({1}, Rel::ge, 1, "lo");
  bad.add({1}, Rel::le, 0, "hi");
  EXPECT_FALSE(lp_feasible(bad).feasible());
  EXPECT_EQ(fm_feasible(bad), std::optional<bool>(false));
}

TEST(LP, MaximizeKnownOptimum) {
  // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3
  LPInstance inst{2, {}};
  inst.add({1, 1}, Rel::le, 4, "a");
  inst.add({1, 3}, Rel::le, 6, "b");
  inst.add({1, 0}, Rel::le, 3, "c");
  LPResult r = lp_maximize(inst, {3, 2});
  ASSERT_EQ(r.status, LPResult::Status::optimal);
  EXPECT_EQ(r.value, Rational(11));
  EXPECT_EQ(r.x, (Vec{3, 1}));
}

TEST(LP, EqualitiesAndUnbounded) {
  LPInstance inst{3, {}};
  inst.add({1, 1, 1}, Rel::eq, 6, "sum");
  inst.add({1, -1, 0}, Rel::eq, 1, "diff");
  inst.add({0, 1, -2}, Rel::ge, 0, "ratio");
  LPResult r = lp_maximize(inst, {0, 0, 1});
  ASSERT_EQ(r.status, LPResult::Status::optimal);
  EXPECT_TRUE(satisfies(inst, r.x));
  EXPECT_EQ(r.x[2], Rational(1));
  EXPECT_EQ(r.x[1], Rational(2));

  LPInstance open{2, {}};
  open.add({1, -1}, Rel::le, 1, "a");
  EXPECT_EQ(lp_maximize(open, {1, 1}).status, LPResult::Status::unbounded);
}

TEST(LP, RandomAgreesWithFourierMotzkin) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> coef(-4, 4), rhs(-6, 10), nvar(1, 5), ncon(1, 7), rel(0, 2);
  int decided = 0;
  for (int trial = 0; trial < 400; ++trial) {
    LPInstance inst{nvar(rng), {}};
    int rows = ncon(rng);
    for (int r = 0; r < rows; ++r) {
      Vec a;
      for (int j = 0; j < inst.num_vars; ++j) a.push_back(coef(rng));
      Rel rl = rel(rng) == 0 ? Rel::le : (rel(rng) == 1 ? Rel::ge : (r % 3 == 0 ? Rel::eq : Rel::le));
      inst.add(a, rl, rhs(rng), "r");
    }
    LPResult lp = lp_feasible(inst);
    if (lp.feasible()) {
      EXPECT_TRUE(satisfies(inst, lp.x));
    }
    auto fm = fm_feasible(inst);
    if (fm) {
      ++decided;
      EXPECT_EQ(*fm, lp.feasible()) << "trial " << trial;
    }
  }
  EXPECT_GT(decided, 300);
}

TEST(LP, SearchInstancesAgreeWithFourierMotzkin) {
  int decided = 0;
  for (int s = 1; s <= 3; ++s)
    for (const auto& p : enumerate_patterns(2, 4, s, true))
      for (Rational rho : {Rational(2), Rational(4)})
        for (Rational alpha : {Rational(1), Rational(3, 2), Rational(2), Rational(5, 2)}) {
          LPInstance inst = build_lp(p, rho, alpha, 2, 0);
          auto fm = fm_feasible(inst);
          if (!fm) continue;
          ++decided;
          EXPECT_EQ(*fm, lp_feasible(inst).feasible()) << p.str() << " rho=" << rho << " alpha=" << alpha;
        }
  EXPECT_GT(decided, 20);
}
