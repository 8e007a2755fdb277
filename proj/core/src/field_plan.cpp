#include "wss/field_plan.hpp"

#include <string>

#include "wss/error.hpp"
#include "wss/field.hpp"

namespace wss {

std::string_view to_string(SymbolUnit u) noexcept {
  return u == SymbolUnit::Base ? "BASE" : "EXTENSION";
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

BigInt field_size_bound(const PatternAnalysis& analysis, int K, const std::optional<LpSolution>& lp) {
  const auto a = static_cast<std::uint64_t>(analysis.a_star);
  const auto total = static_cast<std::uint64_t>(analysis.total_set.size());
  switch (analysis.case_label) {
    case CaseLabel::Full:
      return 1;
    case CaseLabel::OtherLt:
      return BigInt(a) * binomial(total, a);
    case CaseLabel::OtherQ:
      return BigInt(a) * binomial(total + 1, a);
    case CaseLabel::If: {
      if (!lp) throw Error(ErrorCode::MissingLp, "IF case needs the LP solution to size the field");
      const Rational scaled = (Rational(analysis.a_star) + lp->b_star) * Rational(lp->q_bar);
      if (denominator(scaled) != 1) throw Error(ErrorCode::InternalFault, "(a*+b*) q̄ is not an integer");
      const BigInt d = numerator(scaled);
      return d * binomial(static_cast<std::uint64_t>(K) * lp->q_bar, d.convert_to<std::uint64_t>());
    }
  }
  throw Error(ErrorCode::InternalFault, "unhandled case label");
}

FieldPlan plan_field(const PatternAnalysis& analysis, int K, std::uint64_t q, const std::optional<LpSolution>& lp) {
  if (!is_prime(q)) throw Error(ErrorCode::RejectRange, "base field size q must be prime, got " + std::to_string(q));
  const BigInt bound = field_size_bound(analysis, K, lp);
  if (bound >= BigInt(kMaxModulus / 2)) {
    throw Error(ErrorCode::FieldTooLarge, "field size bound " + bound.str() + " exceeds the 2^61 working limit");
  }
  FieldPlan plan;
  plan.q = q;
  plan.size_bound = bound.convert_to<std::uint64_t>();
  plan.p = next_prime_above(plan.size_bound);
  BigInt power = q;
  plan.B = 1;
  while (power <= bound) {
    power *= q;
    ++plan.B;
  }
  plan.symbol_unit = SymbolUnit::Extension;
  return plan;
}

}  // namespace wss
