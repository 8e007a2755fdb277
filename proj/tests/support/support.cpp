#include "support.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "wss/error.hpp"
#include "wss/serialize.hpp"

#ifndef WSS_DATA_DIR
#error "WSS_DATA_DIR must point at data/"
#endif

namespace wss::test {

std::filesystem::path data_dir() { return WSS_DATA_DIR; }

std::filesystem::path pattern_path(const std::string& name) { return data_dir() / "patterns" / (name + ".json"); }

Pattern load_named(const std::string& name) { return load_pattern(pattern_path(name)); }

namespace {

std::vector<UserSet> subsets_of_size(int K, int size) {
  std::vector<UserSet> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << K); ++m) {
    if (std::popcount(m) == size) out.push_back(UserSet::from_mask(m));
  }
  return out;
}

}  // namespace

Pattern symmetric_pattern(int K, int s, int t) {
  const auto sec = subsets_of_size(K, s);
  const auto col = subsets_of_size(K, t);
  return normalize_pattern(K, sec, col);
}

Pattern random_pattern(std::mt19937_64& rng, int K) {
  std::uniform_int_distribution<int> count(1, 4);
  std::uniform_int_distribution<std::uint64_t> mask(1, (std::uint64_t{1} << K) - 1);
  std::vector<UserSet> sec, col;
  const int m = count(rng);
  for (int i = 0; i < m; ++i) {
    // bias toward small security sets so that the IF case shows up
    UserSet s = UserSet::from_mask(mask(rng));
    while (s.size() > 1 && rng() % 3 != 0) s.erase(s.max());
    sec.push_back(s);
  }
  const int n = count(rng) - 1;
  for (int i = 0; i < n; ++i) {
    UserSet t = UserSet::from_mask(mask(rng));
    while (t.size() > K - 2) t.erase(t.min());
    col.push_back(t);
  }
  return normalize_pattern(K, sec, col);
}

Pattern random_if_pattern(std::mt19937_64& rng, int max_users) {
  std::uniform_int_distribution<int> users(3, max_users);
  for (;;) {
    Pattern p = random_pattern(rng, users(rng));
    if (analyze(p).case_label == CaseLabel::If) return p;
  }
}

namespace {

/// Solves a square rational system; nullopt when singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

}  // namespace

Rational lp_vertex_value(const LpInstance& lp) {
  const std::size_t n = lp.variables.size();
  const std::size_t dim = n + 1;  // b_1..b_n, t
  // every constraint as row . x >= rhs
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> r(dim, 0);
    r[i] = 1;
    rows.push_back(r);
    rhs.push_back(0);
  }
  for (const auto& cover : lp.cover_constraints) {
    std::vector<Rational> r(dim, 0);
    for (int idx : cover) r[static_cast<std::size_t>(idx)] = 1;
    rows.push_back(r);
    rhs.push_back(1);
  }
  for (const auto& term : lp.objective_terms) {
    std::vector<Rational> r(dim, 0);
    r[n] = 1;
    for (int idx : term) r[static_cast<std::size_t>(idx)] = -1;
    rows.push_back(r);
    rhs.push_back(0);
  }

  std::optional<Rational> best;
  std::vector<std::size_t> pick(dim);
  const std::size_t total = rows.size();
  // iterate over all dim-subsets of the constraints
  std::vector<bool> chooser(total, false);
  std::fill(chooser.begin(), chooser.begin() + static_cast<std::ptrdiff_t>(std::min(dim, total)), true);
  if (total < dim) throw Error(ErrorCode::InternalFault, "too few constraints for a vertex");
  do {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (std::size_t i = 0; i < total; ++i) {
      if (chooser[i]) {
        a.push_back(rows[i]);
        b.push_back(rhs[i]);
      }
    }
    const auto x = solve_square(a, b);
    if (!x) continue;
    bool feasible = true;
    for (std::size_t i = 0; i < total && feasible; ++i) {
      Rational lhs = 0;
      for (std::size_t j = 0; j < dim; ++j) lhs += rows[i][j] * (*x)[j];
      feasible = lhs >= rhs[i];
    }
    if (feasible && (!best || (*x)[n] < *best)) best = (*x)[n];
  } while (std::prev_permutation(chooser.begin(), chooser.end()));
  if (!best) throw Error(ErrorCode::InternalFault, "no feasible vertex");
  return *best;
}

std::size_t span_count_rank(const FMatrix& m) {
  const std::uint64_t p = m.modulus();
  std::set<std::vector<Fe>> span;
  std::vector<Fe> coeff(m.rows(), 0);
  for (;;) {
    std::vector<Fe> v(m.cols(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) v[c] = (v[c] + coeff[r] * m(r, c)) % p;
    }
    span.insert(v);
    std::size_t d = 0;
    while (d < coeff.size() && ++coeff[d] == p) coeff[d++] = 0;
    if (d == coeff.size()) break;
  }
  std::size_t rank = 0;
  for (std::size_t size = span.size(); size > 1; size /= p) ++rank;
  return rank;
}

std::vector<bool> prime_sieve(std::uint64_t limit) {
  std::vector<bool> prime(limit + 1, true);
  prime[0] = false;
  if (limit >= 1) prime[1] = false;
  for (std::uint64_t i = 2; i * i <= limit; ++i) {
    if (!prime[i]) continue;
    for (std::uint64_t j = i * i; j <= limit; j += i) prime[j] = false;
  }
  return prime;
}

KeyScheme zero_key_scheme(const Pattern& p, std::uint64_t prime, std::uint64_t L, std::uint64_t source_dim) {
  KeyScheme s;
  s.pattern = p;
  s.case_label = analyze(p).case_label;
  s.field.p = prime;
  s.field.q = prime;
  s.L = L;
  s.source_dim = source_dim;
  s.rate = Rational(static_cast<long long>(source_dim), static_cast<long long>(L));
  for (int k = 0; k < p.K; ++k) s.coeff.emplace_back(L, source_dim, prime);
  return s;
}

std::optional<KeyScheme> surrogate_scheme(const Pattern& p, std::uint64_t prime, std::uint64_t seed, bool generic) {
  SynthesisOptions opts;
  opts.prime_override = prime;
  opts.require_generic_position = generic;
  try {
    return synthesize(p, optimal_rate(p), seed, opts);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::RetryExhausted) return std::nullopt;
    throw;
  }
}

}  // namespace wss::test
