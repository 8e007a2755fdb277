#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "wss/user_set.hpp"

namespace wss {

/// K users plus the two monotone set systems, each stored as the antichain of
/// its maximal generators. The closures (including the empty set) are never
/// materialized on the main path.
struct Pattern {
  int K = 0;
  std::vector<UserSet> security;
  std::vector<UserSet> colluding;

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

/// Reduces raw set lists to canonical antichains and validates them.
///
/// An empty colluding list means the server acts alone (colluding system {∅}).
/// Throws Error with RejectRange (K outside [2, 64] or member outside [1, K]),
/// RejectEmptySecurity or RejectLargeCoalition (a colluding set larger than K-2).
Pattern normalize_pattern(int K, std::span<const UserSet> security_raw,
                          std::span<const UserSet> colluding_raw);

/// Maximal sets of `sets`, deduplicated, in canonical (lexicographic) order.
std::vector<UserSet> maximal_sets(std::span<const UserSet> sets);

/// True iff `s` lies in the downward closure of `antichain`.
bool closure_contains(std::span<const UserSet> antichain, UserSet s) noexcept;

/// Full downward closure, sorted by mask. Exponential; intended for small K.
std::vector<UserSet> downward_closure(std::span<const UserSet> antichain);

UserSet implicit_security_set(const Pattern& p);

enum class CaseLabel {
  Full,     // a* = K
  If,       // a* <= K-1, a* = |S̄|, |Q| = K
  OtherLt,  // a* < |S̄|
  OtherQ,   // a* = |S̄|, |Q| < K
};

std::string_view to_string(CaseLabel c) noexcept;
CaseLabel parse_case_label(std::string_view text);

CaseLabel classify(int a_star, int total_size, int q_size, int K) noexcept;

struct SetPair {
  UserSet security;
  UserSet colluding;

  friend bool operator==(SetPair, SetPair) noexcept = default;
};

struct PatternAnalysis {
  UserSet implicit_set;
  UserSet total_set;
  int a_star = 0;
  /// Pairs whose overlap with the total set reaches a*, in generator order.
  std::vector<SetPair> achieving_pairs;
  UserSet q_union;
  CaseLabel case_label = CaseLabel::OtherLt;
};

/// Implicit/total security sets, a*, achieving pairs and Q from generator pairs.
PatternAnalysis analyze(const Pattern& p);

/// Same quantities computed literally over both full closures. achieving_pairs
/// then lists closure pairs (security-closure order, then colluding-closure
/// order, both by mask). Throws Error(SizeLimit) when K > 12.
PatternAnalysis closure_oracle(const Pattern& p);

inline constexpr int kClosureOracleMaxUsers = 12;

}  // namespace wss
