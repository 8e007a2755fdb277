#include <gtest/gtest.h>

#include "wss/error.hpp"
#include "wss/simplex.hpp"

using namespace wss;

TEST(Simplex, SmallProgram) {
  // min -x - y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
  StandardFormLp lp;
  lp.A = {{1, 2, 1, 0}, {3, 1, 0, 1}};
  lp.rhs = {4, 6};
  lp.cost = {-1, -1, 0, 0};
  const SimplexResult r = solve_standard_form(lp);
  EXPECT_EQ(r.value, Rational(-14, 5));
  EXPECT_EQ(r.x[0], Rational(8, 5));
  EXPECT_EQ(r.x[1], Rational(6, 5));
}

TEST(Simplex, DegenerateEqualityRows) {
  // duplicated row leaves an artificial basic at zero after phase 1
  StandardFormLp lp;
  lp.A = {{1, 1, 0}, {1, 1, 0}, {0, 1, 1}};
  lp.rhs = {2, 2, 1};
  lp.cost = {1, 0, 0};
  const SimplexResult r = solve_standard_form(lp);
  EXPECT_EQ(r.value, Rational(1));
}

TEST(Simplex, InfeasibleAndUnbounded) {
  StandardFormLp infeasible;
  infeasible.A = {{1, 1}, {1, 1}};
  infeasible.rhs = {1, 2};
  infeasible.cost = {0, 0};
  EXPECT_THROW(solve_standard_form(infeasible), Error);

  StandardFormLp unbounded;
  unbounded.A = {{1, -1}};
  unbounded.rhs = {0};
  unbounded.cost = {-1, 0};
  EXPECT_THROW(solve_standard_form(unbounded), Error);
}

TEST(Simplex, Deterministic) {
  StandardFormLp lp;
  lp.A = {{1, 1, 1, 0}, {1, 1, 0, 1}};
  lp.rhs = {1, 1};
  lp.cost = {-1, -1, 0, 0};
  const SimplexResult a = solve_standard_form(lp);
  const SimplexResult b = solve_standard_form(lp);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.value, Rational(-1));
}
