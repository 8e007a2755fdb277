#pragma once

#include <vector>

#include "wss/rational.hpp"

namespace wss {

/// minimize cost·x subject to A x = rhs, x >= 0, with rhs >= 0.
struct StandardFormLp {
  std::vector<std::vector<Rational>> A;
  std::vector<Rational> rhs;
  std::vector<Rational> cost;
};

struct SimplexResult {
  std::vector<Rational> x;
  Rational value;
  int pivots = 0;
};

/// Dense two-phase tableau simplex over exact rationals with Bland's rule, so
/// it never cycles and identical inputs give identical vertices.
/// Throws Error(InternalFault) when the program is infeasible or unbounded.
SimplexResult solve_standard_form(const StandardFormLp& lp);

}  // namespace wss
