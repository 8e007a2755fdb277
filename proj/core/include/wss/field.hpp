#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace wss {

using Fe = std::uint64_t;
__extension__ using Wide = unsigned __int128;

/// Largest modulus the arithmetic accepts (products go through 128 bits).
inline constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 62;

/// Arithmetic in F_p for a prime p < 2^62.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const noexcept { return p_; }

  Fe add(Fe a, Fe b) const noexcept {
    const Fe s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Fe sub(Fe a, Fe b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Fe neg(Fe a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Fe mul(Fe a, Fe b) const noexcept {
    return static_cast<Fe>((static_cast<Wide>(a) * b) % p_);
  }
  Fe pow(Fe base, std::uint64_t exp) const noexcept;
  /// Inverse of a nonzero element (Fermat).
  Fe inv(Fe a) const noexcept { return pow(a, p_ - 2); }
  Fe reduce(std::int64_t v) const noexcept;

 private:
  std::uint64_t p_;
};

/// Dense row-major matrix over F_p. Zero-row and zero-column shapes are valid.
class FMatrix {
 public:
  FMatrix() = default;
  FMatrix(std::size_t rows, std::size_t cols, std::uint64_t modulus);
  FMatrix(std::size_t rows, std::size_t cols, std::uint64_t modulus, std::vector<Fe> data);

  static FMatrix identity(std::size_t n, std::uint64_t modulus);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  PrimeField field() const { return PrimeField(modulus_); }

  Fe& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Fe operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const Fe> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  const std::vector<Fe>& data() const noexcept { return data_; }

  bool is_zero() const noexcept;
  /// Rows [first, first+count).
  FMatrix row_block(std::size_t first, std::size_t count) const;

  friend bool operator==(const FMatrix&, const FMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::uint64_t modulus_ = 2;
  std::vector<Fe> data_;
};

FMatrix operator+(const FMatrix& a, const FMatrix& b);
FMatrix operator-(const FMatrix& a);
FMatrix operator*(const FMatrix& a, const FMatrix& b);
/// Matrix times column vector.
std::vector<Fe> operator*(const FMatrix& a, std::span<const Fe> v);

/// Vertical concatenation. All parts need `cols` columns and the same modulus.
FMatrix vstack(std::span<const FMatrix> parts, std::size_t cols, std::uint64_t modulus);
FMatrix vstack(const FMatrix& top, const FMatrix& bottom);

/// Rank over F_p by Gaussian elimination (every nonzero pivot is invertible).
std::size_t field_rank(const FMatrix& m);

/// Seeded source of uniform field elements: std::mt19937_64 (bit-exact across
/// standard libraries) plus rejection sampling, so streams depend only on
/// (seed, p, call order).
class FieldRng {
 public:
  explicit FieldRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  Fe uniform(std::uint64_t p);

 private:
  std::mt19937_64 engine_;
};

/// Row-major i.i.d. uniform entries.
FMatrix sample_uniform(std::size_t rows, std::size_t cols, std::uint64_t p, FieldRng& rng);
FMatrix sample_uniform(std::size_t rows, std::size_t cols, std::uint64_t p, std::uint64_t seed);

/// SplitMix64 finalizer; used to derive retry and per-round seeds.
std::uint64_t derive_seed(std::uint64_t seed) noexcept;

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n) noexcept;
/// Smallest prime strictly greater than n.
std::uint64_t next_prime_above(std::uint64_t n);

}  // namespace wss
