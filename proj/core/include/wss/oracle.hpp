#pragma once

#include <cstdint>
#include <optional>

#include "wss/pattern.hpp"
#include "wss/rational.hpp"
#include "wss/scheme.hpp"

namespace wss {

inline constexpr std::uint64_t kOracleAtomLimit = std::uint64_t{1} << 24;

struct OracleVerdict {
  /// P(view, secret) factorizes given the conditioning variables.
  bool independent = false;
  /// Exact I(secret; view | cond) in base-p units; set when every count is a
  /// power of p (always true for linear schemes).
  std::optional<Rational> mi;
  std::uint64_t atoms = 0;
};

/// Number of joint outcomes p^(K L + source_dim), saturating at UINT64_MAX.
std::uint64_t oracle_atom_count(const KeyScheme& scheme) noexcept;

/// Enumerates every (w, s) and compares the joint distribution of
/// (W_S, X_[K], sum W, W_T, Z_T) against the product form implied by
/// conditional independence. Uses no linear algebra beyond evaluating the keys.
/// Throws Error(SizeLimit) above `atom_limit` atoms.
OracleVerdict bruteforce_mi_oracle(const KeyScheme& scheme, const SetPair& pair,
                                   std::uint64_t atom_limit = kOracleAtomLimit);

}  // namespace wss
