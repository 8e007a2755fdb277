#include "wss/simplex.hpp"

#include <cstddef>
#include <optional>

#include "wss/error.hpp"

namespace wss {
namespace {

class Tableau {
 public:
  // Rows 0..m-1 are constraints, row m is the objective (reduced costs), the
  // last column is the right-hand side.
  Tableau(std::size_t m, std::size_t n) : m_(m), n_(n), t_(m + 1, std::vector<Rational>(n + 1)), basis_(m) {}

  Rational& at(std::size_t r, std::size_t c) { return t_[r][c]; }
  Rational& rhs(std::size_t r) { return t_[r][n_]; }
  std::size_t& basic(std::size_t r) { return basis_[r]; }

  void pivot(std::size_t row, std::size_t col) {
    const Rational inv = Rational(1) / t_[row][col];
    for (auto& v : t_[row]) v *= inv;
    for (std::size_t r = 0; r <= m_; ++r) {
      if (r == row || t_[r][col] == 0) continue;
      const Rational f = t_[r][col];
      for (std::size_t c = 0; c <= n_; ++c) {
        if (t_[row][c] != 0) t_[r][c] -= f * t_[row][c];
      }
    }
    basis_[row] = col;
    ++pivots_;
  }

  // Objective row holds reduced costs c_j - z_j for `cost`, given the basis.
  void load_objective(const std::vector<Rational>& cost) {
    for (std::size_t c = 0; c <= n_; ++c) t_[m_][c] = c < cost.size() ? cost[c] : Rational(0);
    for (std::size_t r = 0; r < m_; ++r) {
      const Rational cb = basis_[r] < cost.size() ? cost[basis_[r]] : Rational(0);
      if (cb == 0) continue;
      for (std::size_t c = 0; c <= n_; ++c) t_[m_][c] -= cb * t_[r][c];
    }
  }

  // Bland's rule: lowest-index improving column, ties in the ratio test broken
  // by lowest basic variable index. `allowed` bounds the entering columns.
  // Returns false when unbounded.
  bool optimize(std::size_t allowed) {
    while (true) {
      std::optional<std::size_t> enter;
      for (std::size_t c = 0; c < allowed; ++c) {
        if (t_[m_][c] < 0) { enter = c; break; }
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t r = 0; r < m_; ++r) {
        if (t_[r][*enter] <= 0) continue;
        const Rational ratio = t_[r][n_] / t_[r][*enter];
        if (!leave || ratio < best || (ratio == best && basis_[r] < basis_[*leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }

  Rational objective_value() { return -t_[m_][n_]; }
  int pivots() const { return pivots_; }
  std::size_t rows() const { return m_; }

 private:
  std::size_t m_, n_;
  std::vector<std::vector<Rational>> t_;
  std::vector<std::size_t> basis_;
  int pivots_ = 0;
};

}  // namespace

SimplexResult solve_standard_form(const StandardFormLp& lp) {
  const std::size_t m = lp.A.size();
  const std::size_t n = lp.cost.size();
  // Columns: n structural variables, then one artificial per row.
  Tableau tab(m, n + m);
  for (std::size_t r = 0; r < m; ++r) {
    if (lp.A[r].size() != n || lp.rhs[r] < 0) {
      throw Error(ErrorCode::InternalFault, "malformed standard-form program");
    }
    for (std::size_t c = 0; c < n; ++c) tab.at(r, c) = lp.A[r][c];
    tab.at(r, n + r) = 1;
    tab.rhs(r) = lp.rhs[r];
    tab.basic(r) = n + r;
  }

  // Phase 1: drive the artificial sum to zero.
  std::vector<Rational> phase1(n + m);
  for (std::size_t r = 0; r < m; ++r) phase1[n + r] = 1;
  tab.load_objective(phase1);
  tab.optimize(n + m);
  if (tab.objective_value() != 0) throw Error(ErrorCode::InternalFault, "linear program is infeasible");

  // Pivot degenerate artificials out of the basis where a structural column allows.
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basic(r) < n) continue;
    for (std::size_t c = 0; c < n; ++c) {
      if (tab.at(r, c) != 0) {
        tab.pivot(r, c);
        break;
      }
    }
  }

  // Phase 2 never lets an artificial re-enter. A row whose artificial stayed
  // basic is all-zero over structural columns, so it is inert.
  tab.load_objective(lp.cost);
  if (!tab.optimize(n)) throw Error(ErrorCode::InternalFault, "linear program is unbounded");

  SimplexResult out;
  out.x.assign(n, Rational(0));
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basic(r) < n) out.x[tab.basic(r)] = tab.rhs(r);
  }
  out.value = 0;
  for (std::size_t c = 0; c < n; ++c) out.value += lp.cost[c] * out.x[c];
  out.pivots = tab.pivots();
  return out;
}

}  // namespace wss
