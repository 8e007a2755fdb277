#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "wss/field.hpp"
#include "wss/field_plan.hpp"
#include "wss/pattern.hpp"
#include "wss/ratecalc.hpp"

namespace wss {

using Column = std::vector<Fe>;

/// (p_k, q̄) actually used by the IF-case construction.
struct LpEcho {
  std::uint64_t q_bar = 1;
  std::map<int, std::uint64_t> numerators;

  friend bool operator==(const LpEcho&, const LpEcho&) = default;
};

/// Linear key assignment Z_k = C_k * s over F_p, s uniform of length source_dim.
struct KeyScheme {
  Pattern pattern;
  CaseLabel case_label = CaseLabel::Full;
  FieldPlan field;
  std::uint64_t L = 1;           // input length in extension symbols
  std::uint64_t source_dim = 0;  // length of s
  std::vector<FMatrix> coeff;    // coeff[k-1] = C_k, each source_dim wide
  std::optional<int> helper_u;
  std::optional<LpEcho> lp_echo;
  Rational rate;
  std::uint64_t seed = 0;
  std::uint32_t retry_count = 0;
  /// Generic position was checked only on the subsets induced by generator pairs.
  bool generic_check_restricted = false;

  std::uint64_t modulus() const noexcept { return field.p; }
  int users() const noexcept { return pattern.K; }
  const FMatrix& key_matrix(int user) const { return coeff.at(static_cast<std::size_t>(user - 1)); }

  friend bool operator==(const KeyScheme&, const KeyScheme&) = default;
};

struct SynthesisOptions {
  std::uint64_t base_field = 2;
  /// Run over this prime instead of the planned one (small-field surrogates for
  /// exhaustive checks). The plan keeps its bound; `field.p` is replaced.
  std::optional<std::uint64_t> prime_override;
  bool require_generic_position = true;
  std::uint32_t retry_budget = 64;
};

inline constexpr std::uint64_t kFullEnumerationLimit = std::uint64_t{1} << 20;

/// Builds the scheme for the classified case. Retries with seed <- derive_seed(seed)
/// until the generic-position predicate and the rank equalities hold.
/// Throws RetryExhausted or MissingLp.
KeyScheme synthesize(const Pattern& p, const RateAnalysis& rate, std::uint64_t seed,
                     const SynthesisOptions& options = {});

/// Case-specific full-rank predicate on the stored coefficients.
///   FULL      any K-1 of the C_k are independent
///   OTHER_LT  any a* of the h_k, k in S̄, are independent
///   OTHER_Q   any a* of the h_k, k in S̄ ∪ {u}, are independent
///   IF        any union of blocks {first p_k rows of C_k : k ∉ S̄} ∪ {C_k : k in S̄}
///             with at most source_dim rows has full row rank
/// When the subset family exceeds kFullEnumerationLimit only the subsets induced
/// by generator pairs are checked; `restricted` (if given) reports that.
bool generic_position_check(const KeyScheme& scheme, const PatternAnalysis& analysis, bool* restricted = nullptr);

/// rank(C_{S∪T}) - rank(C_T) == |S \ T| * L for one pair.
bool coalition_rank_holds(const KeyScheme& scheme, const SetPair& pair);
/// The same over every generator pair with |S ∪ T| <= K-1.
bool coalition_rank_holds(const KeyScheme& scheme);

/// sum_k C_k == 0.
bool zero_sum(const KeyScheme& scheme);

/// Rows of C_k for k in `users`, stacked in ascending user order.
FMatrix stack_keys(const KeyScheme& scheme, UserSet users);

/// Z_k = C_k * z_sigma. Users with a zero-row C_k get an empty key.
std::vector<Column> expand_keys(const KeyScheme& scheme, std::span<const Fe> z_sigma);

}  // namespace wss
