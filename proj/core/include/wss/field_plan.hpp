#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "wss/pattern.hpp"
#include "wss/ratecalc.hpp"

namespace wss {

enum class SymbolUnit { Base, Extension };

std::string_view to_string(SymbolUnit u) noexcept;

/// Working-field choice for a synthesized scheme.
///
/// The scheme runs over F_p with p the smallest prime above `size_bound`; one
/// F_p element stands in for one F_{q^B} symbol, and every length (L, source
/// dimension) is counted in those extension symbols. `q` and `B` record the
/// extension field that a faithful construction over F_q would use, with
/// q^B > size_bound.
struct FieldPlan {
  std::uint64_t q = 2;
  std::uint32_t B = 1;
  std::uint64_t size_bound = 1;
  std::uint64_t p = 2;
  SymbolUnit symbol_unit = SymbolUnit::Extension;

  friend bool operator==(const FieldPlan&, const FieldPlan&) = default;
};

/// Case-dependent size bound:
///   FULL      1
///   OTHER_LT  a* * C(|S̄|, a*)
///   OTHER_Q   a* * C(|S̄|+1, a*)
///   IF        D * C(K q̄, D)   with D = (a* + b*) q̄
/// Throws MissingLp (IF without a solution), RejectRange (q not prime) or
/// FieldTooLarge (bound does not leave room for a prime below 2^62).
FieldPlan plan_field(const PatternAnalysis& analysis, int K, std::uint64_t q,
                     const std::optional<LpSolution>& lp);

/// Exact bound as a big integer (no range limit).
BigInt field_size_bound(const PatternAnalysis& analysis, int K, const std::optional<LpSolution>& lp);

BigInt binomial(std::uint64_t n, std::uint64_t k);

}  // namespace wss
