#include "wss/ratecalc.hpp"

#include <algorithm>
#include <limits>

#include "wss/error.hpp"
#include "wss/simplex.hpp"

namespace wss {
namespace {

std::vector<int> to_indices(UserSet s, const std::vector<int>& variables) {
  std::vector<int> out;
  for (int u : s.members()) {
    const auto it = std::find(variables.begin(), variables.end(), u);
    if (it == variables.end()) throw Error(ErrorCode::InternalFault, "index set leaves the variable range");
    out.push_back(static_cast<int>(it - variables.begin()));
  }
  return out;
}

bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void dedup(std::vector<std::vector<int>>& sets) {
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
}

// Keeps the sets not strictly containing another one (drop_supersets) or not
// strictly contained in another one (!drop_supersets). Input must be deduplicated.
std::vector<std::vector<int>> prune(const std::vector<std::vector<int>>& sets, bool drop_supersets) {
  std::vector<std::vector<int>> out;
  for (const auto& s : sets) {
    const bool dominated = std::any_of(sets.begin(), sets.end(), [&](const std::vector<int>& o) {
      return o != s && (drop_supersets ? is_subset(o, s) : is_subset(s, o));
    });
    if (!dominated) out.push_back(s);
  }
  return out;
}

std::uint64_t to_u64(const BigInt& v) {
  if (v < 0 || v > std::numeric_limits<std::uint64_t>::max()) {
    throw Error(ErrorCode::InternalFault, "LP denominator exceeds 64 bits");
  }
  return v.convert_to<std::uint64_t>();
}

}  // namespace

LpInstance build_lp_from_pairs(int K, UserSet total_set, std::span<const SetPair> pairs, bool reduce) {
  const UserSet universe = UserSet::all(K);
  LpInstance lp;
  lp.variables = (universe - total_set).members();
  for (const SetPair& pr : pairs) {
    const UserSet covered = pr.security | pr.colluding;
    const UserSet cover = universe - covered;
    if (cover.empty()) throw Error(ErrorCode::InternalFault, "achieving pair covers every user");
    lp.objective_terms.push_back(to_indices(pr.colluding - total_set, lp.variables));
    lp.cover_constraints.push_back(to_indices(cover, lp.variables));
  }
  dedup(lp.objective_terms);
  dedup(lp.cover_constraints);
  if (reduce) {
    lp.objective_terms = prune(lp.objective_terms, /*drop_supersets=*/false);
    lp.cover_constraints = prune(lp.cover_constraints, /*drop_supersets=*/true);
  }
  return lp;
}

LpInstance build_lp(const PatternAnalysis& analysis, const Pattern& p) {
  if (analysis.case_label != CaseLabel::If) {
    throw Error(ErrorCode::WrongCase, "the key-surcharge LP exists only in the IF case, pattern is " +
                                          std::string(to_string(analysis.case_label)));
  }
  return build_lp_from_pairs(p.K, analysis.total_set, analysis.achieving_pairs);
}

LpSolution solve_lp_exact(const LpInstance& lp) {
  const std::size_t n = lp.variables.size();
  const std::size_t n_obj = lp.objective_terms.size();
  const std::size_t n_cov = lp.cover_constraints.size();
  // Columns: b_1..b_n, b, one slack per term row, one surplus per cover row.
  const std::size_t cols = n + 1 + n_obj + n_cov;
  const std::size_t b_col = n;

  StandardFormLp sf;
  sf.cost.assign(cols, Rational(0));
  sf.cost[b_col] = 1;
  for (std::size_t j = 0; j < n_obj; ++j) {
    std::vector<Rational> row(cols);
    for (int k : lp.objective_terms[j]) row[static_cast<std::size_t>(k)] = 1;
    row[b_col] = -1;
    row[n + 1 + j] = 1;
    sf.A.push_back(std::move(row));
    sf.rhs.emplace_back(0);
  }
  for (std::size_t i = 0; i < n_cov; ++i) {
    std::vector<Rational> row(cols);
    for (int k : lp.cover_constraints[i]) row[static_cast<std::size_t>(k)] = 1;
    row[n + 1 + n_obj + i] = -1;
    sf.A.push_back(std::move(row));
    sf.rhs.emplace_back(1);
  }

  const SimplexResult res = solve_standard_form(sf);

  LpSolution sol;
  BigInt lcm_den = 1;
  for (std::size_t k = 0; k < n; ++k) {
    sol.b_values[lp.variables[k]] = res.x[k];
    lcm_den = boost::multiprecision::lcm(lcm_den, denominator(res.x[k]));
  }
  // The epigraph variable settles at the largest term sum.
  Rational max_term = 0;
  for (const auto& term : lp.objective_terms) {
    Rational s = 0;
    for (int k : term) s += res.x[static_cast<std::size_t>(k)];
    max_term = std::max(max_term, s);
  }
  if (max_term != res.value) throw Error(ErrorCode::InternalFault, "epigraph value differs from the max term");
  sol.b_star = res.value;
  sol.q_bar = to_u64(lcm_den);
  for (const auto& [user, value] : sol.b_values) {
    const std::uint64_t pk = to_u64(numerator(value * Rational(lcm_den)));
    sol.numerators[user] = pk;
    sol.p_bar += pk;
  }
  return sol;
}

bool surcharge_identity_holds(const LpSolution& sol) {
  Rational total = 0;
  for (const auto& [user, value] : sol.b_values) total += value;
  return sol.b_star == total - 1;
}

RateAnalysis optimal_rate(const Pattern& p) {
  RateAnalysis r;
  r.analysis = analyze(p);
  if (r.analysis.case_label == CaseLabel::If) {
    r.lp_instance = build_lp(r.analysis, p);
    r.lp = solve_lp_exact(*r.lp_instance);
    r.rate = Rational(r.analysis.a_star) + r.lp->b_star;
  } else {
    r.rate = Rational(std::min(r.analysis.a_star, p.K - 1));
  }
  return r;
}

}  // namespace wss
