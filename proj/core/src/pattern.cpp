#include "wss/pattern.hpp"

#include <algorithm>
#include <string>

#include "wss/error.hpp"

namespace wss {

std::vector<UserSet> maximal_sets(std::span<const UserSet> sets) {
  std::vector<UserSet> out;
  for (UserSet s : sets) {
    const bool dominated = std::any_of(sets.begin(), sets.end(), [s](UserSet o) {
      return s != o && s.is_subset_of(o);
    });
    if (!dominated && std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

Pattern normalize_pattern(int K, std::span<const UserSet> security_raw,
                          std::span<const UserSet> colluding_raw) {
  if (K < 2 || K > UserSet::kMaxUsers) {
    throw Error(ErrorCode::RejectRange, "K must lie in [2, 64], got " + std::to_string(K));
  }
  const UserSet universe = UserSet::all(K);
  auto check_range = [&](std::span<const UserSet> sets, const char* what) {
    for (UserSet s : sets) {
      if (!s.is_subset_of(universe)) {
        throw Error(ErrorCode::RejectRange,
                    std::string(what) + " set " + s.to_string() + " has a member outside 1.." + std::to_string(K));
      }
    }
  };
  check_range(security_raw, "security");
  check_range(colluding_raw, "colluding");

  Pattern p;
  p.K = K;
  p.security = maximal_sets(security_raw);
  if (p.security.empty() || (p.security.size() == 1 && p.security.front().empty())) {
    throw Error(ErrorCode::RejectEmptySecurity, "all security sets are empty");
  }
  for (UserSet t : colluding_raw) {
    if (t.size() > K - 2) {
      throw Error(ErrorCode::RejectLargeCoalition,
                  "colluding set " + t.to_string() + " exceeds K-2 = " + std::to_string(K - 2) + " users");
    }
  }
  p.colluding = maximal_sets(colluding_raw);
  if (p.colluding.empty()) p.colluding.push_back(UserSet{});
  return p;
}

bool closure_contains(std::span<const UserSet> antichain, UserSet s) noexcept {
  if (s.empty()) return true;
  return std::any_of(antichain.begin(), antichain.end(), [s](UserSet g) { return s.is_subset_of(g); });
}

std::vector<UserSet> downward_closure(std::span<const UserSet> antichain) {
  std::vector<UserSet> out;
  for (UserSet g : antichain) for_each_subset(g, [&](UserSet s) { out.push_back(s); });
  out.push_back(UserSet{});
  std::sort(out.begin(), out.end(), [](UserSet a, UserSet b) { return a.mask() < b.mask(); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

UserSet explicit_union(std::span<const UserSet> security) {
  UserSet u;
  for (UserSet s : security) u |= s;
  return u;
}

// Shared tail of analyze/closure_oracle: given the pair lists, derive a*, the
// achieving pairs and Q.
void fill_overlap(PatternAnalysis& a, int K, std::span<const UserSet> sec, std::span<const UserSet> col) {
  a.a_star = 0;
  for (UserSet s : sec) {
    for (UserSet t : col) a.a_star = std::max(a.a_star, ((s | t) & a.total_set).size());
  }
  for (UserSet s : sec) {
    for (UserSet t : col) {
      if (((s | t) & a.total_set).size() == a.a_star) {
        a.achieving_pairs.push_back({s, t});
        a.q_union |= s | t;
      }
    }
  }
  a.case_label = classify(a.a_star, a.total_set.size(), a.q_union.size(), K);
}

}  // namespace

UserSet implicit_security_set(const Pattern& p) {
  const UserSet universe = UserSet::all(p.K);
  const UserSet explicit_set = explicit_union(p.security);
  UserSet out;
  // u qualifies when some generator pair covers [K]\{u}: trimming u from both
  // generators yields a closure pair whose union is exactly [K]\{u}.
  for (int u = 1; u <= p.K; ++u) {
    if (explicit_set.contains(u)) continue;
    const UserSet rest = universe - UserSet{u};
    for (UserSet s : p.security) {
      for (UserSet t : p.colluding) {
        if (rest.is_subset_of(s | t)) out.insert(u);
      }
    }
  }
  return out;
}

CaseLabel classify(int a_star, int total_size, int q_size, int K) noexcept {
  if (a_star == K) return CaseLabel::Full;
  if (a_star < total_size) return CaseLabel::OtherLt;
  return q_size == K ? CaseLabel::If : CaseLabel::OtherQ;
}

std::string_view to_string(CaseLabel c) noexcept {
  switch (c) {
    case CaseLabel::Full: return "FULL";
    case CaseLabel::If: return "IF";
    case CaseLabel::OtherLt: return "OTHER_LT";
    case CaseLabel::OtherQ: return "OTHER_Q";
  }
  return "?";
}

CaseLabel parse_case_label(std::string_view text) {
  for (CaseLabel c : {CaseLabel::Full, CaseLabel::If, CaseLabel::OtherLt, CaseLabel::OtherQ}) {
    if (to_string(c) == text) return c;
  }
  throw Error(ErrorCode::ParseError, "unknown case label '" + std::string(text) + "'");
}

PatternAnalysis analyze(const Pattern& p) {
  PatternAnalysis a;
  a.implicit_set = implicit_security_set(p);
  a.total_set = explicit_union(p.security) | a.implicit_set;
  fill_overlap(a, p.K, p.security, p.colluding);
  return a;
}

PatternAnalysis closure_oracle(const Pattern& p) {
  if (p.K > kClosureOracleMaxUsers) {
    throw Error(ErrorCode::SizeLimit, "closure oracle supports K <= 12, got " + std::to_string(p.K));
  }
  const auto sec = downward_closure(p.security);
  const auto col = downward_closure(p.colluding);
  const UserSet universe = UserSet::all(p.K);

  PatternAnalysis a;
  UserSet explicit_set;
  for (UserSet s : sec) explicit_set |= s;
  // Literal reading: collect [K]\(S∪T) over every pair with |S∪T| = K-1.
  for (UserSet s : sec) {
    for (UserSet t : col) {
      if ((s | t).size() == p.K - 1) a.implicit_set |= universe - (s | t);
    }
  }
  a.implicit_set = a.implicit_set - explicit_set;
  a.total_set = explicit_set | a.implicit_set;
  fill_overlap(a, p.K, sec, col);
  return a;
}

}  // namespace wss
