#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wss/field.hpp"
#include "wss/pattern.hpp"
#include "wss/rational.hpp"
#include "wss/scheme.hpp"

namespace wss {

/// Coordinates of the uniform ambient vector (w_1 .. w_K, s): user k's input
/// occupies columns [(k-1)L, kL), the source key the last source_dim columns.
class AmbientLayout {
 public:
  explicit AmbientLayout(const KeyScheme& scheme)
      : K_(static_cast<std::size_t>(scheme.users())), L_(scheme.L), D_(scheme.source_dim) {}

  std::size_t dim() const noexcept { return K_ * L_ + D_; }
  std::size_t input_offset(int user) const noexcept { return static_cast<std::size_t>(user - 1) * L_; }
  std::size_t source_offset() const noexcept { return K_ * L_; }

 private:
  std::size_t K_, L_, D_;
};

/// A linear function of the ambient vector, as a matrix with dim() columns.
struct LinearObservable {
  FMatrix map;
  std::string label;
};

namespace observe {
LinearObservable input(const KeyScheme& scheme, int user);
LinearObservable key(const KeyScheme& scheme, int user);
LinearObservable message(const KeyScheme& scheme, int user);
LinearObservable input_sum(const KeyScheme& scheme);
LinearObservable source_key(const KeyScheme& scheme);
std::vector<LinearObservable> inputs(const KeyScheme& scheme, UserSet users);
std::vector<LinearObservable> keys(const KeyScheme& scheme, UserSet users);
std::vector<LinearObservable> messages(const KeyScheme& scheme, UserSet users);
}  // namespace observe

/// H(obs | given) in extension symbols: rank(obs ∪ given) - rank(given).
/// Exact because every observable is a linear image of a uniform vector.
/// Throws Error(DimMismatch) when widths disagree.
Rational linear_entropy(std::span<const LinearObservable> obs, std::span<const LinearObservable> given);

/// I((W_k)_{k in S}; (X_k)_{k in [K]} | sum W, (W_k, Z_k)_{k in T}).
Rational security_mi(const KeyScheme& scheme, const SetPair& pair);

enum class Relation { Equal, AtLeast };

struct AuditItem {
  std::string check;    // e.g. "security_mi", "pair_bound"
  std::string subject;  // e.g. "S={1} T={2,4}" or "user 3"
  Rational value;
  Rational bound;
  Relation relation = Relation::Equal;
  bool pass = false;
};

struct AuditReport {
  std::vector<AuditItem> items;
  bool overall = true;

  void add(AuditItem item);
  void merge(const AuditReport& other);
  std::size_t failures() const;
};

std::string_view to_string(Relation r) noexcept;

/// Security MI (must be 0) and the rank equality
/// rank(C_{S∪T}) - rank(C_T) = |S\T| L for every generator pair.
AuditReport security_audit(const KeyScheme& scheme);

/// Converse checks, each an entropy bound evaluated by rank:
///   user_entropy  H(X_u | (W_k, Z_k)_{k != u}) >= L for every user
///   outside_keys  H(Z_{[K] minus (S ∪ T)} | Z_T) >= L
///   secured_keys  H(Z_{(S ∪ T) ∩ E} | Z_{T minus E}) >= |(S ∪ T) ∩ E| L, E = union of security sets
///   pair_bound    as secured_keys with the total set S̄, and equality on achieving pairs
/// over generator pairs with T trimmed to T minus S (pairs covering all K users
/// drop the largest member of S), plus H(Z_Σ) = R* L and H(Z_1..Z_K) = R* L.
AuditReport converse_audit(const KeyScheme& scheme, const Pattern& p, const PatternAnalysis& analysis);

/// Security MI over every closure pair, skipped when the closures hold more
/// than `max_pairs` pairs. Returns an empty report when skipped.
AuditReport closure_security_audit(const KeyScheme& scheme, std::size_t max_pairs = 4096);

/// security_audit + converse_audit + closure_security_audit.
AuditReport full_audit(const KeyScheme& scheme);

}  // namespace wss
