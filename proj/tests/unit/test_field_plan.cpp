#include <gtest/gtest.h>

#include "support.hpp"
#include "wss/error.hpp"
#include "wss/field_plan.hpp"

using namespace wss;

namespace {

FieldPlan plan_for(const std::string& name, std::uint64_t q = 2) {
  const Pattern p = test::load_named(name);
  const RateAnalysis r = optimal_rate(p);
  return plan_field(r.analysis, p.K, q, r.lp);
}

}  // namespace

TEST(FieldPlan, ExampleTwoBound) {
  const FieldPlan f = plan_for("ex2");
  EXPECT_EQ(f.size_bound, 1260u);  // 5 * C(10, 5)
  EXPECT_EQ(f.p, 1277u);
  EXPECT_EQ(f.q, 2u);
  EXPECT_EQ(f.B, 11u);  // 2^11 = 2048 > 1260
}

TEST(FieldPlan, OtherCases) {
  EXPECT_EQ(plan_for("ex1").size_bound, 20u);  // 4 * C(5, 4)
  EXPECT_EQ(plan_for("ex1").p, 23u);
  EXPECT_EQ(plan_for("other_q").size_bound, 12u);  // 3 * C(4, 3)
  EXPECT_EQ(plan_for("other_q").p, 13u);
  EXPECT_EQ(plan_for("full_k4").size_bound, 1u);
  EXPECT_EQ(plan_for("full_k4").p, 2u);
}

TEST(FieldPlan, ExtensionDegreeFollowsQ) {
  const FieldPlan f = plan_for("ex2", 3);
  EXPECT_EQ(f.q, 3u);
  EXPECT_EQ(f.B, 7u);  // 3^6 = 729 <= 1260 < 2187 = 3^7
}

TEST(FieldPlan, Binomials) {
  EXPECT_EQ(binomial(10, 5), BigInt(252));
  EXPECT_EQ(binomial(5, 0), BigInt(1));
  EXPECT_EQ(binomial(3, 5), BigInt(0));
  EXPECT_EQ(binomial(60, 30), BigInt("118264581564861424"));
}

TEST(FieldPlan, Errors) {
  const Pattern p = test::load_named("ex2");
  const RateAnalysis r = optimal_rate(p);
  try {
    plan_field(r.analysis, p.K, 4, r.lp);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RejectRange);
  }
  try {
    plan_field(r.analysis, p.K, 2, std::nullopt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingLp);
  }
}

TEST(FieldPlan, TooLargeIsReported) {
  // OTHER_LT with |S̄| = 64, a* = 32: 32 * C(64, 32) is far above 2^61
  std::vector<UserSet> sec;
  UserSet low, high;
  for (int k = 1; k <= 32; ++k) low.insert(k);
  for (int k = 33; k <= 64; ++k) high.insert(k);
  sec = {low, high};
  const Pattern p = normalize_pattern(64, sec, {});
  const PatternAnalysis a = analyze(p);
  ASSERT_EQ(a.case_label, CaseLabel::OtherLt);
  EXPECT_GT(field_size_bound(a, p.K, std::nullopt), BigInt(1) << 61);
  try {
    plan_field(a, p.K, 2, std::nullopt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FieldTooLarge);
  }
}
