#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "wss/error.hpp"
#include "wss/pattern.hpp"

using namespace wss;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InternalFault;
}

// Straight from the definitions, over generator pairs only.
UserSet implicit_by_definition(const Pattern& p) {
  UserSet explicit_union;
  for (UserSet s : p.security) explicit_union |= s;
  UserSet out;
  for (int u = 1; u <= p.K; ++u) {
    if (explicit_union.contains(u)) continue;
    const UserSet rest = UserSet::all(p.K) - UserSet{u};
    for (UserSet s : p.security)
      for (UserSet t : p.colluding)
        if (rest.is_subset_of(s | t)) out.insert(u);
  }
  return out;
}

}  // namespace

TEST(Pattern, ExampleOneQuantities) {
  const Pattern p = test::load_named("ex1");
  const PatternAnalysis a = analyze(p);
  EXPECT_EQ(a.implicit_set, (UserSet{4, 5}));
  EXPECT_EQ(a.total_set, UserSet::all(5));
  EXPECT_EQ(a.a_star, 4);
  EXPECT_EQ(a.q_union, UserSet::all(5));
  EXPECT_EQ(a.case_label, CaseLabel::OtherLt);
  EXPECT_EQ(implicit_by_definition(p), a.implicit_set);
}

TEST(Pattern, ExampleTwoQuantities) {
  const PatternAnalysis a = analyze(test::load_named("ex2"));
  EXPECT_TRUE(a.implicit_set.empty());
  EXPECT_EQ(a.total_set, (UserSet{1, 2}));
  EXPECT_EQ(a.a_star, 2);
  EXPECT_EQ(a.q_union, UserSet::all(5));
  EXPECT_EQ(a.case_label, CaseLabel::If);
  EXPECT_EQ(a.achieving_pairs.size(), 3u);
}

TEST(Pattern, NormalizationKeepsMaximalSetsOnly) {
  const std::vector<UserSet> sec{{}, {1}, {1, 2}, {3}, {1, 2}};
  const std::vector<UserSet> col{{2}, {}, {2, 3}};
  const Pattern p = normalize_pattern(5, sec, col);
  EXPECT_EQ(p.security, (std::vector<UserSet>{{1, 2}, {3}}));
  EXPECT_EQ(p.colluding, (std::vector<UserSet>{{2, 3}}));
}

TEST(Pattern, EmptyColludingListMeansServerAlone) {
  const std::vector<UserSet> sec{{1}};
  const Pattern p = normalize_pattern(3, sec, {});
  ASSERT_EQ(p.colluding.size(), 1u);
  EXPECT_TRUE(p.colluding[0].empty());
}

TEST(Pattern, Rejections) {
  const std::vector<UserSet> none{};
  const std::vector<UserSet> only_empty{{}};
  const std::vector<UserSet> one{{1}};
  const std::vector<UserSet> big{{1, 2, 3}};
  const std::vector<UserSet> out_of_range{{5}};
  EXPECT_EQ(code_of([&] { normalize_pattern(4, none, none); }), ErrorCode::RejectEmptySecurity);
  EXPECT_EQ(code_of([&] { normalize_pattern(4, only_empty, none); }), ErrorCode::RejectEmptySecurity);
  EXPECT_EQ(code_of([&] { normalize_pattern(4, one, big); }), ErrorCode::RejectLargeCoalition);
  EXPECT_EQ(code_of([&] { normalize_pattern(4, out_of_range, none); }), ErrorCode::RejectRange);
  EXPECT_EQ(code_of([&] { normalize_pattern(1, one, none); }), ErrorCode::RejectRange);
  EXPECT_EQ(code_of([&] { normalize_pattern(65, one, none); }), ErrorCode::RejectRange);
}

TEST(Pattern, ClassifyBoundaries) {
  EXPECT_EQ(classify(5, 5, 5, 5), CaseLabel::Full);
  EXPECT_EQ(classify(3, 4, 5, 5), CaseLabel::OtherLt);
  EXPECT_EQ(classify(2, 2, 5, 5), CaseLabel::If);
  EXPECT_EQ(classify(2, 2, 4, 5), CaseLabel::OtherQ);
}

TEST(Pattern, CaseLabelText) {
  for (auto c : {CaseLabel::Full, CaseLabel::If, CaseLabel::OtherLt, CaseLabel::OtherQ}) {
    EXPECT_EQ(parse_case_label(to_string(c)), c);
  }
  EXPECT_THROW(parse_case_label("NOPE"), Error);
}

TEST(Pattern, FullSecurityIsFullCase) {
  const PatternAnalysis a = analyze(test::load_named("full_k4"));
  EXPECT_EQ(a.case_label, CaseLabel::Full);
  EXPECT_EQ(a.a_star, 4);
}

TEST(Pattern, ClosureMembership) {
  const std::vector<UserSet> gens{{1, 2}, {3}};
  EXPECT_TRUE(closure_contains(gens, UserSet{}));
  EXPECT_TRUE(closure_contains(gens, UserSet{2}));
  EXPECT_FALSE(closure_contains(gens, UserSet{2, 3}));
  EXPECT_EQ(downward_closure(gens).size(), 5u);  // {}, {1}, {2}, {1,2}, {3}
}

TEST(Pattern, GeneratorsAgreeWithClosures) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 150; ++i) {
    const int K = 2 + static_cast<int>(rng() % 7);
    const Pattern p = test::random_pattern(rng, K);
    const PatternAnalysis fast = analyze(p);
    const PatternAnalysis slow = closure_oracle(p);
    ASSERT_EQ(fast.implicit_set, slow.implicit_set) << i;
    ASSERT_EQ(fast.total_set, slow.total_set) << i;
    ASSERT_EQ(fast.a_star, slow.a_star) << i;
    ASSERT_EQ(fast.q_union, slow.q_union) << i;
    ASSERT_EQ(fast.case_label, slow.case_label) << i;
  }
}

TEST(Pattern, ClosureOracleRefusesLargeK) {
  const std::vector<UserSet> sec{{1}};
  const Pattern p = normalize_pattern(13, sec, {});
  EXPECT_EQ(code_of([&] { closure_oracle(p); }), ErrorCode::SizeLimit);
}
