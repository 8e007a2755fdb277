#include "wss/user_set.hpp"

#include <algorithm>

namespace wss {

UserSet::UserSet(std::initializer_list<int> users) {
  for (int u : users) insert(u);
}

std::vector<int> UserSet::members() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
  return out;
}

std::string UserSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (int u : members()) {
    if (!first) s += ',';
    s += std::to_string(u);
    first = false;
  }
  return s + "}";
}

bool lex_less(UserSet a, UserSet b) noexcept {
  const auto ma = a.members();
  const auto mb = b.members();
  return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(), mb.end());
}

}  // namespace wss
