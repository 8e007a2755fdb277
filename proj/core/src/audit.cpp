#include "wss/audit.hpp"

#include <algorithm>
#include <cassert>

#include "wss/error.hpp"

namespace wss {
namespace observe {

LinearObservable input(const KeyScheme& scheme, int user) {
  const AmbientLayout layout(scheme);
  FMatrix m(scheme.L, layout.dim(), scheme.modulus());
  for (std::size_t i = 0; i < scheme.L; ++i) m(i, layout.input_offset(user) + i) = 1;
  return {std::move(m), "W" + std::to_string(user)};
}

LinearObservable key(const KeyScheme& scheme, int user) {
  const AmbientLayout layout(scheme);
  const FMatrix& c = scheme.key_matrix(user);
  FMatrix m(c.rows(), layout.dim(), scheme.modulus());
  for (std::size_t r = 0; r < c.rows(); ++r) {
    for (std::size_t j = 0; j < c.cols(); ++j) m(r, layout.source_offset() + j) = c(r, j);
  }
  return {std::move(m), "Z" + std::to_string(user)};
}

LinearObservable message(const KeyScheme& scheme, int user) {
  const AmbientLayout layout(scheme);
  const FMatrix& c = scheme.key_matrix(user);
  FMatrix m(scheme.L, layout.dim(), scheme.modulus());
  for (std::size_t i = 0; i < scheme.L; ++i) {
    m(i, layout.input_offset(user) + i) = 1;
    if (c.rows() == 0) continue;
    for (std::size_t j = 0; j < c.cols(); ++j) m(i, layout.source_offset() + j) = c(i, j);
  }
  return {std::move(m), "X" + std::to_string(user)};
}

LinearObservable input_sum(const KeyScheme& scheme) {
  const AmbientLayout layout(scheme);
  FMatrix m(scheme.L, layout.dim(), scheme.modulus());
  for (int k = 1; k <= scheme.users(); ++k) {
    for (std::size_t i = 0; i < scheme.L; ++i) m(i, layout.input_offset(k) + i) = 1;
  }
  return {std::move(m), "sumW"};
}

LinearObservable source_key(const KeyScheme& scheme) {
  const AmbientLayout layout(scheme);
  FMatrix m(scheme.source_dim, layout.dim(), scheme.modulus());
  for (std::size_t j = 0; j < scheme.source_dim; ++j) m(j, layout.source_offset() + j) = 1;
  return {std::move(m), "Zsigma"};
}

namespace {
template <typename Fn>
std::vector<LinearObservable> each(UserSet users, Fn&& fn) {
  std::vector<LinearObservable> out;
  for (int k : users.members()) out.push_back(fn(k));
  return out;
}
}  // namespace

std::vector<LinearObservable> inputs(const KeyScheme& scheme, UserSet users) {
  return each(users, [&](int k) { return input(scheme, k); });
}
std::vector<LinearObservable> keys(const KeyScheme& scheme, UserSet users) {
  return each(users, [&](int k) { return key(scheme, k); });
}
std::vector<LinearObservable> messages(const KeyScheme& scheme, UserSet users) {
  return each(users, [&](int k) { return message(scheme, k); });
}

}  // namespace observe

namespace {

std::size_t stacked_rank(std::span<const LinearObservable> a, std::span<const LinearObservable> b, std::size_t width,
                         std::uint64_t modulus) {
  std::vector<FMatrix> parts;
  for (const auto& o : a) parts.push_back(o.map);
  for (const auto& o : b) parts.push_back(o.map);
  return field_rank(vstack(parts, width, modulus));
}

template <typename... Spans>
std::vector<LinearObservable> concat(const Spans&... spans) {
  std::vector<LinearObservable> out;
  (out.insert(out.end(), spans.begin(), spans.end()), ...);
  return out;
}

std::string pair_subject(UserSet s, UserSet t) { return "S=" + s.to_string() + " T=" + t.to_string(); }

}  // namespace

Rational linear_entropy(std::span<const LinearObservable> obs, std::span<const LinearObservable> given) {
  std::size_t width = 0;
  std::uint64_t modulus = 0;
  for (const auto* list : {&obs, &given}) {
    for (const auto& o : *list) {
      if (width == 0 && modulus == 0) {
        width = o.map.cols();
        modulus = o.map.modulus();
      } else if (o.map.cols() != width || o.map.modulus() != modulus) {
        throw Error(ErrorCode::DimMismatch, "observables over different ambient spaces");
      }
    }
  }
  if (modulus == 0) return 0;
  const std::size_t joint = stacked_rank(obs, given, width, modulus);
  const std::size_t cond = stacked_rank({}, given, width, modulus);
  assert(joint <= cond + stacked_rank(obs, {}, width, modulus));
  return Rational(static_cast<long long>(joint - cond));
}

Rational security_mi(const KeyScheme& scheme, const SetPair& pair) {
  const auto cond = concat(std::vector{observe::input_sum(scheme)}, observe::inputs(scheme, pair.colluding),
                           observe::keys(scheme, pair.colluding));
  const auto secret = observe::inputs(scheme, pair.security);
  const auto all_x = observe::messages(scheme, UserSet::all(scheme.users()));
  // I(A; B | C) = H(B | C) - H(B | C, A)
  return linear_entropy(all_x, cond) - linear_entropy(all_x, concat(cond, secret));
}

std::string_view to_string(Relation r) noexcept { return r == Relation::Equal ? "==" : ">="; }

void AuditReport::add(AuditItem item) {
  overall = overall && item.pass;
  items.push_back(std::move(item));
}

void AuditReport::merge(const AuditReport& other) {
  for (const auto& item : other.items) add(item);
}

std::size_t AuditReport::failures() const {
  return static_cast<std::size_t>(std::count_if(items.begin(), items.end(), [](const AuditItem& i) { return !i.pass; }));
}

namespace {

AuditItem compare(std::string check, std::string subject, Rational value, Rational bound, Relation rel) {
  const bool pass = rel == Relation::Equal ? value == bound : value >= bound;
  return {std::move(check), std::move(subject), std::move(value), std::move(bound), rel, pass};
}

}  // namespace

AuditReport security_audit(const KeyScheme& scheme) {
  AuditReport report;
  const Pattern& p = scheme.pattern;
  const Rational L(static_cast<long long>(scheme.L));
  for (UserSet s : p.security) {
    for (UserSet t : p.colluding) {
      report.add(compare("security_mi", pair_subject(s, t), security_mi(scheme, {s, t}), 0, Relation::Equal));
      if ((s | t).size() > p.K - 1) continue;
      const Rational rank_gap = linear_entropy(observe::keys(scheme, s - t), observe::keys(scheme, t));
      report.add(compare("coalition_rank", pair_subject(s, t), rank_gap, Rational((s - t).size()) * L, Relation::Equal));
    }
  }
  return report;
}

AuditReport converse_audit(const KeyScheme& scheme, const Pattern& p, const PatternAnalysis& analysis) {
  AuditReport report;
  const Rational L(static_cast<long long>(scheme.L));
  const UserSet universe = UserSet::all(p.K);
  UserSet explicit_set;
  for (UserSet s : p.security) explicit_set |= s;
  const UserSet& total = analysis.total_set;

  for (int u = 1; u <= p.K; ++u) {
    const UserSet others = universe - UserSet{u};
    const auto given = concat(observe::inputs(scheme, others), observe::keys(scheme, others));
    const std::vector msg{observe::message(scheme, u)};
    report.add(compare("user_entropy", "user " + std::to_string(u), linear_entropy(msg, given), L, Relation::AtLeast));
  }

  auto check_pair = [&](UserSet s, UserSet t, bool achieving, const std::string& subject) {
    const UserSet uni = s | t;
    report.add(compare("outside_keys", subject,
                       linear_entropy(observe::keys(scheme, universe - uni), observe::keys(scheme, t)), L,
                       Relation::AtLeast));
    report.add(compare("secured_keys", subject,
                       linear_entropy(observe::keys(scheme, uni & explicit_set), observe::keys(scheme, t - explicit_set)),
                       Rational((uni & explicit_set).size()) * L, Relation::AtLeast));
    report.add(compare("pair_bound", subject,
                       linear_entropy(observe::keys(scheme, uni & total), observe::keys(scheme, t - total)),
                       Rational((uni & total).size()) * L, achieving ? Relation::Equal : Relation::AtLeast));
  };

  for (UserSet s : p.security) {
    for (UserSet t : p.colluding) {
      const bool achieving = ((s | t) & total).size() == analysis.a_star;
      const UserSet trimmed = t - s;
      if ((s | trimmed).size() <= p.K - 1) {
        check_pair(s, trimmed, achieving, pair_subject(s, trimmed));
      } else {
        // |S ∪ T| = K: drop one secure user so the union has K-1 members.
        const UserSet smaller = s - UserSet{s.max()};
        check_pair(smaller, trimmed, achieving, pair_subject(smaller, trimmed) + " (trimmed from " + s.to_string() + ")");
      }
    }
  }

  const std::vector zs{observe::source_key(scheme)};
  const Rational target = scheme.rate * L;
  report.add(compare("rate_tight", "H(Zsigma)", linear_entropy(zs, {}), target, Relation::Equal));
  report.add(compare("key_entropy", "H(Z_1..Z_K)", linear_entropy(observe::keys(scheme, universe), {}), target,
                     Relation::Equal));
  return report;
}

AuditReport closure_security_audit(const KeyScheme& scheme, std::size_t max_pairs) {
  AuditReport report;
  const Pattern& p = scheme.pattern;
  if (p.K > kClosureOracleMaxUsers) return report;
  const auto sec = downward_closure(p.security);
  const auto col = downward_closure(p.colluding);
  if (sec.size() * col.size() > max_pairs) return report;
  std::size_t checked = 0;
  std::size_t failed = 0;
  for (UserSet s : sec) {
    for (UserSet t : col) {
      ++checked;
      const Rational mi = security_mi(scheme, {s, t});
      if (mi != 0) {
        ++failed;
        report.add(compare("closure_security_mi", pair_subject(s, t), mi, 0, Relation::Equal));
      }
    }
  }
  report.add(compare("closure_security", std::to_string(checked) + " closure pairs", Rational(static_cast<long long>(failed)),
                     0, Relation::Equal));
  return report;
}

AuditReport full_audit(const KeyScheme& scheme) {
  const PatternAnalysis analysis = analyze(scheme.pattern);
  AuditReport report = security_audit(scheme);
  report.merge(converse_audit(scheme, scheme.pattern, analysis));
  report.merge(closure_security_audit(scheme));
  return report;
}

}  // namespace wss
