#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace wss {

/// A subset of the users {1..64}. User k occupies bit k-1.
class UserSet {
 public:
  static constexpr int kMaxUsers = 64;

  constexpr UserSet() = default;
  UserSet(std::initializer_list<int> users);

  static constexpr UserSet from_mask(std::uint64_t mask) noexcept {
    UserSet s;
    s.bits_ = mask;
    return s;
  }
  /// {1..K}
  static constexpr UserSet all(int K) noexcept {
    return from_mask(K >= kMaxUsers ? ~std::uint64_t{0} : (std::uint64_t{1} << K) - 1);
  }

  constexpr std::uint64_t mask() const noexcept { return bits_; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr int size() const noexcept { return std::popcount(bits_); }

  constexpr bool contains(int user) const noexcept {
    return user >= 1 && user <= kMaxUsers && ((bits_ >> (user - 1)) & 1U) != 0;
  }
  constexpr void insert(int user) noexcept { bits_ |= std::uint64_t{1} << (user - 1); }
  constexpr void erase(int user) noexcept { bits_ &= ~(std::uint64_t{1} << (user - 1)); }

  constexpr bool is_subset_of(UserSet other) const noexcept {
    return (bits_ & ~other.bits_) == 0;
  }

  /// Smallest / largest member; 0 when empty.
  constexpr int min() const noexcept { return empty() ? 0 : std::countr_zero(bits_) + 1; }
  constexpr int max() const noexcept { return empty() ? 0 : kMaxUsers - std::countl_zero(bits_); }

  /// Members in ascending order.
  std::vector<int> members() const;
  /// "{1,3,4}"
  std::string to_string() const;

  friend constexpr UserSet operator|(UserSet a, UserSet b) noexcept { return from_mask(a.bits_ | b.bits_); }
  friend constexpr UserSet operator&(UserSet a, UserSet b) noexcept { return from_mask(a.bits_ & b.bits_); }
  /// Set difference a \ b.
  friend constexpr UserSet operator-(UserSet a, UserSet b) noexcept { return from_mask(a.bits_ & ~b.bits_); }
  UserSet& operator|=(UserSet o) noexcept { bits_ |= o.bits_; return *this; }

  friend constexpr bool operator==(UserSet, UserSet) noexcept = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Lexicographic order of the ascending member lists; the canonical listing order.
bool lex_less(UserSet a, UserSet b) noexcept;

/// Visits every subset of `s` (including the empty set and `s` itself).
template <typename Fn>
void for_each_subset(UserSet s, Fn&& fn) {
  const std::uint64_t full = s.mask();
  std::uint64_t sub = full;
  while (true) {
    fn(UserSet::from_mask(sub));
    if (sub == 0) break;
    sub = (sub - 1) & full;
  }
}

}  // namespace wss
