#include <gtest/gtest.h>

#include "helpers.hpp"
#include "pgn/random.hpp"
#include "pgn/spectra.hpp"
#include "pgn/verify.hpp"

using namespace pgn;
using namespace testing_helpers;

namespace {

void expect_clean(const AuditReport& rep, const std::string& ctx) {
  for (const auto& c : rep.checks)
    EXPECT_NE(c.status, CheckStatus::fail) << ctx << ": " << c.rule << " at " << c.location << " " << c.note;
}

}  // namespace

TEST(Verify, ValidationEntry) {
  auto rep = check_validation(bridge_example());
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.count("validate", CheckStatus::pass), 1u);
  NSystem bad = bridge_example();
  bad.initial = V({2, 1, 2});
  auto broken = check_validation(bad);
  EXPECT_FALSE(broken.ok());
  EXPECT_EQ(broken.checks.front().rule, validate(bad).rule_id());
}

TEST(Verify, Dim5GlobalBounds) {
  auto rep = check_global_bounds(dim5_seed());
  expect_clean(rep, "dim5");
  EXPECT_EQ(rep.min_slack("dim5_cond"), Rational(2, 9));
  EXPECT_EQ(rep.min_slack("more_prop1"), Rational(2, 9));
  EXPECT_EQ(rep.min_slack("dim5_cond_lower"), Rational(43, 9) - Rational(3, 2));
  EXPECT_EQ(rep.count("global_lower", CheckStatus::pass), 4u);
}

TEST(Verify, S24SquareBoundIsTight) {
  auto seed = make_seed({V({1, 2, 2, 4})}, 2, 2);
  auto rep = check_global_bounds(seed);
  expect_clean(rep, "s24");
  EXPECT_EQ(rep.min_slack("ri_square"), Rational(0));
  EXPECT_EQ(rep.min_slack("ri_lower"), Rational(1));
}

TEST(Verify, MMLemmaOnRegularFamily) {
  auto fp = regular_family_seed(3, 1, 2, 2);
  ASSERT_TRUE(fp.seed);
  NSystem sys = unfold_self_similar(*fp.seed, 3);
  auto rep = check_mm_lemma(sys);
  expect_clean(rep, "regular n=3");
  EXPECT_GE(rep.count("mm_lemma_eq2", CheckStatus::pass), 1u);
  ASSERT_TRUE(rep.min_slack("mm_lemma_eq2"));
  EXPECT_EQ(*rep.min_slack("mm_lemma_eq2"), Rational(0));
}

TEST(Verify, MMLemmaNotApplicable) {
  auto rep = check_mm_lemma(bridge_example());
  EXPECT_TRUE(rep.ok());
  if (rep.count("mm_lemma_eq2", CheckStatus::pass) == 0) {
    EXPECT_EQ(rep.count("mm_lemma_eq2", CheckStatus::not_applicable), 1u);
    EXPECT_NE(rep.checks.front().note.find("found"), std::string::npos);
  }
  EXPECT_THROW(check_mm_lemma(ray_example()), Error);
}

TEST(Verify, StaircaseAndExtremaOnDim5) {
  NSystem sys = unfold_self_similar(dim5_seed(), 2);
  for (int m = 1; m <= 4; ++m) {
    auto st = check_type_staircase(sys, m);
    auto ex = check_chi_extrema(sys, m);
    expect_clean(st, "staircase m=" + std::to_string(m));
    expect_clean(ex, "extrema m=" + std::to_string(m));
    EXPECT_GT(st.checks.size(), 0u);
    EXPECT_EQ(ex.count("chi_extrema_max"), ex.count("chi_extrema_min"));
  }
}

TEST(Verify, StaircaseNotesCarryTheType) {
  auto rep = check_type_staircase(bridge_example(), 1);
  expect_clean(rep, "bridge");
  ASSERT_FALSE(rep.checks.empty());
  for (const auto& c : rep.checks) {
    EXPECT_EQ(c.note.rfind("k=1 l=", 0), 0u) << c.note;
    ASSERT_TRUE(c.slack);
  }
}

TEST(Verify, Dim5Blocs) {
  NSystem sys = unfold_self_similar(dim5_seed(), 2);
  auto rep = audit_s35_blocs(sys);
  expect_clean(rep, "dim5 blocs");
  ASSERT_EQ(rep.count("s35_blocs"), 1u);
  EXPECT_NE(rep.checks.back().note.find("5 blocs"), std::string::npos) << rep.checks.back().note;
  EXPECT_EQ(rep.count("s35_bloc_lemma4", CheckStatus::pass), 1u);
  EXPECT_EQ(rep.min_slack("s35_bloc_lemma4"), Rational(2, 9));
  EXPECT_THROW(audit_s35_blocs(bridge_example()), Error);
}

TEST(Verify, Arc2SeedPassesEverything) {
  auto arc = s35_arc2_seed(Rational(9, 5), Rational(1, 100));
  expect_clean(check_global_bounds(arc.seed), "arc2 global");
  NSystem sys = unfold_self_similar(arc.seed, 2);
  expect_clean(check_validation(sys), "arc2 validate");
  expect_clean(audit_s35_blocs(sys), "arc2 blocs");
  expect_clean(check_mm_lemma(sys), "arc2 mm");
}

TEST(Verify, S35FamilyMembersPass) {
  for (int s = 3; s <= 5; ++s) {
    auto fam = s35_family_seed(2, s);
    auto rep = check_global_bounds(fam.seed);
    expect_clean(rep, "s35 s=" + std::to_string(s));
    NSystem sys = unfold_self_similar(fam.seed, 2);
    expect_clean(audit_s35_blocs(sys), "s35 blocs s=" + std::to_string(s));
  }
}

TEST(Verify, RandomSeedsNeverViolate) {
  SeedSampler sampler(20261014);
  const std::vector<std::pair<int, int>> pairs{{1, 3}, {2, 3}, {1, 4}, {2, 4}, {3, 4}, {2, 5}, {3, 5}};
  for (auto [m, n] : pairs)
    for (int trial = 0; trial < 12; ++trial) {
      auto seed = sampler.seed(m, n, sampler.uniform(1, 3));
      std::string ctx = "m=" + std::to_string(m) + " n=" + std::to_string(n) + " trial " + std::to_string(trial);
      expect_clean(check_global_bounds(seed), ctx);
      NSystem sys = unfold_self_similar(seed, 2);
      expect_clean(check_validation(sys), ctx);
      expect_clean(check_type_staircase(sys, m), ctx);
      expect_clean(check_chi_extrema(sys, m), ctx);
      expect_clean(check_mm_lemma(sys), ctx);
      if (n == 5) expect_clean(audit_s35_blocs(sys), ctx);
    }
}
