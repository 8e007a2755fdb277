#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "wss/pattern.hpp"
#include "wss/rational.hpp"

namespace wss {

/// The key-surcharge linear program over the users outside the total set:
///   minimize  max_j  sum_{k in objective_terms[j]} b_k
///   subject to sum_{k in cover_constraints[i]} b_k >= 1,  b >= 0.
/// Index lists refer to positions in `variables` and are sorted ascending.
struct LpInstance {
  std::vector<int> variables;
  std::vector<std::vector<int>> objective_terms;
  std::vector<std::vector<int>> cover_constraints;

  friend bool operator==(const LpInstance&, const LpInstance&) = default;
};

struct LpSolution {
  std::map<int, Rational> b_values;  // user -> b*_k
  Rational b_star;
  std::uint64_t q_bar = 1;                 // common denominator of the b*_k
  std::map<int, std::uint64_t> numerators;  // p_k with b*_k = p_k / q_bar
  std::uint64_t p_bar = 0;                 // sum of p_k
};

/// One objective term (T \ S̄) and one cover constraint ([K] \ (S ∪ T)) per
/// achieving generator pair, deduplicated. Cover constraints that are supersets
/// of another cover and objective terms contained in another term are removed.
/// Throws Error(WrongCase) outside the IF case.
LpInstance build_lp(const PatternAnalysis& analysis, const Pattern& p);

/// Same assembly from an explicit pair list. With `reduce == false` only exact
/// duplicates are merged.
LpInstance build_lp_from_pairs(int K, UserSet total_set, std::span<const SetPair> pairs, bool reduce = true);

/// Exact optimum via the epigraph form (min b, term sums <= b, covers >= 1)
/// solved by solve_standard_form. Deterministic for a given instance.
LpSolution solve_lp_exact(const LpInstance& lp);

/// b* == sum_k b*_k - 1, exactly.
bool surcharge_identity_holds(const LpSolution& sol);

struct RateAnalysis {
  PatternAnalysis analysis;
  std::optional<LpInstance> lp_instance;
  std::optional<LpSolution> lp;  // present iff case IF
  Rational rate;
};

/// a* + b* in the IF case, min(a*, K-1) otherwise.
RateAnalysis optimal_rate(const Pattern& p);

}  // namespace wss
