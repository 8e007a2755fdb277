#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "support.hpp"
#include "wss/error.hpp"
#include "wss/ratecalc.hpp"

using namespace wss;

TEST(RateCalc, ExampleOneRate) {
  const RateAnalysis r = optimal_rate(test::load_named("ex1"));
  EXPECT_EQ(r.rate, Rational(4));
  EXPECT_FALSE(r.lp.has_value());
}

TEST(RateCalc, ExampleTwoLp) {
  const Pattern p = test::load_named("ex2");
  const RateAnalysis r = optimal_rate(p);
  ASSERT_TRUE(r.lp.has_value());
  EXPECT_EQ(r.lp->b_star, Rational(1, 2));
  for (int k : {3, 4, 5}) EXPECT_EQ(r.lp->b_values.at(k), Rational(1, 2)) << k;
  EXPECT_EQ(r.lp->q_bar, 2u);
  EXPECT_EQ(r.lp->p_bar, 3u);
  EXPECT_EQ(r.rate, Rational(5, 2));
  EXPECT_TRUE(surcharge_identity_holds(*r.lp));

  ASSERT_TRUE(r.lp_instance.has_value());
  EXPECT_EQ(r.lp_instance->variables, (std::vector<int>{3, 4, 5}));
  EXPECT_EQ(r.lp_instance->objective_terms.size(), 3u);
  EXPECT_EQ(r.lp_instance->cover_constraints.size(), 3u);
  EXPECT_EQ(r.lp->b_star, test::lp_vertex_value(*r.lp_instance));
}

TEST(RateCalc, BuildLpOutsideIfCaseIsWrongCase) {
  const Pattern p = test::load_named("ex1");
  try {
    build_lp(analyze(p), p);
    FAIL() << "expected WRONG_CASE";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WrongCase);
  }
}

TEST(RateCalc, SymmetricFormula) {
  for (int K = 3; K <= 5; ++K) {
    for (int s = 1; s <= K; ++s) {
      for (int t = 0; t <= K - 2; ++t) {
        const RateAnalysis r = optimal_rate(test::symmetric_pattern(K, s, t));
        EXPECT_EQ(r.rate, Rational(std::min(s + t, K - 1))) << K << ' ' << s << ' ' << t;
        EXPECT_NE(r.analysis.case_label, CaseLabel::If);
      }
    }
  }
}

TEST(RateCalc, ReductionKeepsOptimum) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 25; ++i) {
    const Pattern p = test::random_if_pattern(rng, 6);
    const PatternAnalysis a = analyze(p);
    const LpInstance reduced = build_lp_from_pairs(p.K, a.total_set, a.achieving_pairs, true);
    const LpInstance raw = build_lp_from_pairs(p.K, a.total_set, a.achieving_pairs, false);
    EXPECT_LE(reduced.cover_constraints.size(), raw.cover_constraints.size());
    EXPECT_EQ(solve_lp_exact(reduced).b_star, solve_lp_exact(raw).b_star);
  }
}

TEST(RateCalc, MatchesVertexEnumeration) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 30; ++i) {
    const Pattern p = test::random_if_pattern(rng, 6);
    const RateAnalysis r = optimal_rate(p);
    ASSERT_TRUE(r.lp && r.lp_instance);
    EXPECT_EQ(r.lp->b_star, test::lp_vertex_value(*r.lp_instance)) << i;
    EXPECT_TRUE(surcharge_identity_holds(*r.lp)) << i;
    EXPECT_EQ(r.rate, Rational(r.analysis.a_star) + r.lp->b_star);
  }
}

TEST(RateCalc, DenominatorsAndNumerators) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const RateAnalysis r = optimal_rate(test::random_if_pattern(rng, 6));
    std::uint64_t sum = 0;
    for (const auto& [k, b] : r.lp->b_values) {
      EXPECT_EQ(b * Rational(static_cast<long long>(r.lp->q_bar)), Rational(static_cast<long long>(r.lp->numerators.at(k))));
      sum += r.lp->numerators.at(k);
    }
    EXPECT_EQ(sum, r.lp->p_bar);
  }
}
