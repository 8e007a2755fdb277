#include "wss/scheme.hpp"

#include <algorithm>
#include <string>

#include "wss/error.hpp"

namespace wss {
namespace {

FMatrix negated_sum(std::span<const FMatrix> parts, std::size_t rows, std::size_t cols, std::uint64_t p) {
  FMatrix acc(rows, cols, p);
  for (const FMatrix& m : parts) {
    if (m.rows() != 0) acc = acc + m;
  }
  return -acc;
}

struct Draft {
  std::uint64_t L = 1;
  std::uint64_t source_dim = 0;
  std::vector<FMatrix> coeff;
  std::optional<int> helper_u;
  std::optional<LpEcho> lp_echo;
};

Draft build_full(int K, std::uint64_t p) {
  Draft d;
  d.source_dim = static_cast<std::uint64_t>(K - 1);
  for (int k = 1; k < K; ++k) {
    FMatrix e(1, d.source_dim, p);
    e(0, static_cast<std::size_t>(k - 1)) = 1;
    d.coeff.push_back(std::move(e));
  }
  d.coeff.push_back(negated_sum(d.coeff, 1, d.source_dim, p));
  return d;
}

// Vector keys h_k for `sampled`, then `closing` gets the negated sum.
Draft build_vector_keys(int K, int a_star, const std::vector<int>& sampled, int closing, std::uint64_t p,
                        FieldRng& rng) {
  Draft d;
  d.source_dim = static_cast<std::uint64_t>(a_star);
  d.coeff.assign(static_cast<std::size_t>(K), FMatrix(0, d.source_dim, p));
  std::vector<FMatrix> drawn;
  for (int k : sampled) {
    d.coeff[static_cast<std::size_t>(k - 1)] = sample_uniform(1, d.source_dim, p, rng);
    drawn.push_back(d.coeff[static_cast<std::size_t>(k - 1)]);
  }
  d.coeff[static_cast<std::size_t>(closing - 1)] = negated_sum(drawn, 1, d.source_dim, p);
  return d;
}

Draft build_if_case(int K, const PatternAnalysis& a, const LpSolution& lp, std::uint64_t p, FieldRng& rng) {
  Draft d;
  const std::uint64_t qbar = lp.q_bar;
  d.L = qbar;
  d.source_dim = lp.p_bar + static_cast<std::uint64_t>(a.a_star - 1) * qbar;
  d.lp_echo = LpEcho{qbar, lp.numerators};
  d.coeff.assign(static_cast<std::size_t>(K), FMatrix(qbar, d.source_dim, p));

  std::vector<FMatrix> drawn;
  for (int k = 1; k <= K; ++k) {
    if (a.total_set.contains(k)) continue;
    const std::uint64_t pk = lp.numerators.at(k);
    const FMatrix F = sample_uniform(qbar, pk, p, rng);
    const FMatrix G = sample_uniform(pk, d.source_dim, p, rng);
    d.coeff[static_cast<std::size_t>(k - 1)] = pk == 0 ? FMatrix(qbar, d.source_dim, p) : F * G;
    drawn.push_back(d.coeff[static_cast<std::size_t>(k - 1)]);
  }
  const std::vector<int> secure = a.total_set.members();
  for (std::size_t i = 0; i + 1 < secure.size(); ++i) {
    d.coeff[static_cast<std::size_t>(secure[i] - 1)] = sample_uniform(qbar, d.source_dim, p, rng);
    drawn.push_back(d.coeff[static_cast<std::size_t>(secure[i] - 1)]);
  }
  d.coeff[static_cast<std::size_t>(secure.back() - 1)] = negated_sum(drawn, qbar, d.source_dim, p);
  return d;
}

std::uint64_t count_subsets(std::uint64_t n, std::uint64_t k) {
  const BigInt c = binomial(n, k);
  return c > BigInt(kFullEnumerationLimit) ? kFullEnumerationLimit + 1 : c.convert_to<std::uint64_t>();
}

// Calls fn on every k-subset of `items` until fn returns false.
template <typename Fn>
bool for_each_combination(const std::vector<int>& items, std::size_t k, Fn&& fn) {
  if (k > items.size()) return true;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    UserSet s;
    for (std::size_t i : idx) s.insert(items[i]);
    if (!fn(s)) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == items.size() - k + (i - 1)) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Subsets touched by the security argument: (S∪T) and T for every generator pair.
std::vector<UserSet> audit_subsets(const Pattern& p) {
  std::vector<UserSet> out;
  for (UserSet s : p.security) {
    for (UserSet t : p.colluding) {
      out.push_back(s | t);
      out.push_back(t);
    }
  }
  return out;
}

bool independent_rows(const KeyScheme& scheme, UserSet users) {
  const FMatrix m = stack_keys(scheme, users);
  return field_rank(m) == m.rows();
}

bool check_vector_keys(const KeyScheme& scheme, UserSet keyed, int a_star, bool* restricted) {
  const auto members = keyed.members();
  const auto k = static_cast<std::size_t>(std::min<int>(a_star, keyed.size()));
  if (count_subsets(members.size(), k) <= kFullEnumerationLimit) {
    if (restricted) *restricted = false;
    return for_each_combination(members, k, [&](UserSet s) { return independent_rows(scheme, s); });
  }
  if (restricted) *restricted = true;
  for (UserSet s : audit_subsets(scheme.pattern)) {
    const UserSet part = s & keyed;
    if (part.size() <= a_star && !independent_rows(scheme, part)) return false;
  }
  return true;
}

FMatrix block_rows(const KeyScheme& scheme, const PatternAnalysis& a, int k) {
  const FMatrix& c = scheme.key_matrix(k);
  if (a.total_set.contains(k)) return c;
  return c.row_block(0, scheme.lp_echo->numerators.at(k));
}

bool blocks_independent(const KeyScheme& scheme, const PatternAnalysis& a, UserSet users) {
  std::vector<FMatrix> parts;
  for (int k : users.members()) parts.push_back(block_rows(scheme, a, k));
  const FMatrix m = vstack(parts, scheme.source_dim, scheme.modulus());
  return field_rank(m) == m.rows();
}

bool check_if_blocks(const KeyScheme& scheme, const PatternAnalysis& a, bool* restricted) {
  if (!scheme.lp_echo) throw Error(ErrorCode::MissingLp, "IF-case scheme lacks its LP echo");
  const int K = scheme.users();
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(K) + 1, 0);
  for (int k = 1; k <= K; ++k) {
    rows[static_cast<std::size_t>(k)] = a.total_set.contains(k) ? scheme.lp_echo->q_bar : scheme.lp_echo->numerators.at(k);
  }
  auto total_rows = [&](UserSet s) {
    std::uint64_t n = 0;
    for (int k : s.members()) n += rows[static_cast<std::size_t>(k)];
    return n;
  };
  const std::uint64_t budget = scheme.source_dim;

  if (K <= 20) {
    if (restricted) *restricted = false;
    const UserSet universe = UserSet::all(K);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << K); ++mask) {
      const UserSet s = UserSet::from_mask(mask);
      if (total_rows(s) > budget) continue;
      // Only maximal families: subfamilies of an independent family are independent.
      bool maximal = true;
      for (int k : (universe - s).members()) {
        if (rows[static_cast<std::size_t>(k)] > 0 && total_rows(s) + rows[static_cast<std::size_t>(k)] <= budget) {
          maximal = false;
          break;
        }
      }
      if (maximal && !blocks_independent(scheme, a, s)) return false;
    }
    return true;
  }
  if (restricted) *restricted = true;
  for (UserSet s : audit_subsets(scheme.pattern)) {
    if (total_rows(s) <= budget && !blocks_independent(scheme, a, s)) return false;
  }
  return true;
}

}  // namespace

FMatrix stack_keys(const KeyScheme& scheme, UserSet users) {
  std::vector<FMatrix> parts;
  for (int k : users.members()) parts.push_back(scheme.key_matrix(k));
  return vstack(parts, scheme.source_dim, scheme.modulus());
}

bool generic_position_check(const KeyScheme& scheme, const PatternAnalysis& a, bool* restricted) {
  const int K = scheme.users();
  switch (scheme.case_label) {
    case CaseLabel::Full:
      if (restricted) *restricted = false;
      for (int skip = 1; skip <= K; ++skip) {
        if (!independent_rows(scheme, UserSet::all(K) - UserSet{skip})) return false;
      }
      return true;
    case CaseLabel::OtherLt:
      return check_vector_keys(scheme, a.total_set, a.a_star, restricted);
    case CaseLabel::OtherQ: {
      if (!scheme.helper_u) throw Error(ErrorCode::InternalFault, "OTHER_Q scheme lacks its helper user");
      UserSet keyed = a.total_set;
      keyed.insert(*scheme.helper_u);
      return check_vector_keys(scheme, keyed, a.a_star, restricted);
    }
    case CaseLabel::If:
      return check_if_blocks(scheme, a, restricted);
  }
  return false;
}

bool coalition_rank_holds(const KeyScheme& scheme, const SetPair& pair) {
  const auto joint = static_cast<std::int64_t>(field_rank(stack_keys(scheme, pair.security | pair.colluding)));
  const auto given = static_cast<std::int64_t>(field_rank(stack_keys(scheme, pair.colluding)));
  return joint - given == static_cast<std::int64_t>((pair.security - pair.colluding).size()) *
                              static_cast<std::int64_t>(scheme.L);
}

bool coalition_rank_holds(const KeyScheme& scheme) {
  for (UserSet s : scheme.pattern.security) {
    for (UserSet t : scheme.pattern.colluding) {
      if ((s | t).size() > scheme.users() - 1) continue;
      if (!coalition_rank_holds(scheme, {s, t})) return false;
    }
  }
  return true;
}

bool zero_sum(const KeyScheme& scheme) {
  FMatrix acc(scheme.L, scheme.source_dim, scheme.modulus());
  for (const FMatrix& c : scheme.coeff) {
    if (c.rows() == 0) continue;
    if (c.rows() != scheme.L) return false;
    acc = acc + c;
  }
  return acc.is_zero();
}

std::vector<Column> expand_keys(const KeyScheme& scheme, std::span<const Fe> z_sigma) {
  if (z_sigma.size() != scheme.source_dim) {
    throw Error(ErrorCode::DimMismatch, "source key has " + std::to_string(z_sigma.size()) + " entries, scheme needs " +
                                            std::to_string(scheme.source_dim));
  }
  std::vector<Column> keys;
  keys.reserve(scheme.coeff.size());
  for (const FMatrix& c : scheme.coeff) keys.push_back(c * z_sigma);
  return keys;
}

KeyScheme synthesize(const Pattern& p, const RateAnalysis& rate, std::uint64_t seed, const SynthesisOptions& options) {
  const PatternAnalysis& a = rate.analysis;
  if (a.case_label == CaseLabel::If && !rate.lp) throw Error(ErrorCode::MissingLp, "IF case needs the LP solution");

  KeyScheme scheme;
  scheme.pattern = p;
  scheme.case_label = a.case_label;
  scheme.field = plan_field(a, p.K, options.base_field, rate.lp);
  if (options.prime_override) {
    if (!is_prime(*options.prime_override)) {
      throw Error(ErrorCode::RejectRange, "override modulus must be prime, got " + std::to_string(*options.prime_override));
    }
    scheme.field.p = *options.prime_override;
  }
  scheme.rate = rate.rate;
  scheme.seed = seed;
  const std::uint64_t prime = scheme.field.p;

  std::uint64_t attempt_seed = seed;
  for (std::uint32_t attempt = 0; attempt < options.retry_budget; ++attempt) {
    if (attempt > 0) attempt_seed = derive_seed(attempt_seed);
    FieldRng rng(attempt_seed);
    Draft d;
    switch (a.case_label) {
      case CaseLabel::Full:
        d = build_full(p.K, prime);
        break;
      case CaseLabel::OtherLt: {
        auto secure = a.total_set.members();
        const int closing = secure.back();
        secure.pop_back();
        d = build_vector_keys(p.K, a.a_star, secure, closing, prime, rng);
        break;
      }
      case CaseLabel::OtherQ: {
        const int u = (UserSet::all(p.K) - a.q_union).min();
        d = build_vector_keys(p.K, a.a_star, a.total_set.members(), u, prime, rng);
        d.helper_u = u;
        break;
      }
      case CaseLabel::If:
        d = build_if_case(p.K, a, *rate.lp, prime, rng);
        break;
    }
    scheme.L = d.L;
    scheme.source_dim = d.source_dim;
    scheme.coeff = std::move(d.coeff);
    scheme.helper_u = d.helper_u;
    scheme.lp_echo = d.lp_echo;
    scheme.retry_count = attempt;

    bool restricted = false;
    const bool generic = generic_position_check(scheme, a, &restricted);
    scheme.generic_check_restricted = restricted;
    if (!options.require_generic_position || (generic && coalition_rank_holds(scheme))) return scheme;
  }
  throw Error(ErrorCode::RetryExhausted, "generic position failed " + std::to_string(options.retry_budget) +
                                             " consecutive times over F_" + std::to_string(prime));
}

}  // namespace wss
