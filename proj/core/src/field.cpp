#include "wss/field.hpp"

#include <cassert>
#include <limits>
#include <string>
#include <utility>

#include "wss/error.hpp"

namespace wss {

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p < 2 || p >= kMaxModulus) throw Error(ErrorCode::FieldTooLarge, "modulus out of range: " + std::to_string(p));
}

Fe PrimeField::pow(Fe base, std::uint64_t exp) const noexcept {
  Fe result = 1 % p_;
  base %= p_;
  while (exp > 0) {
    if (exp & 1U) result = mul(result, base);
    base = mul(base, base);
    exp >>= 1U;
  }
  return result;
}

Fe PrimeField::reduce(std::int64_t v) const noexcept {
  const auto p = static_cast<std::int64_t>(p_);
  std::int64_t r = v % p;
  if (r < 0) r += p;
  return static_cast<Fe>(r);
}

FMatrix::FMatrix(std::size_t rows, std::size_t cols, std::uint64_t modulus)
    : rows_(rows), cols_(cols), modulus_(modulus), data_(rows * cols, 0) {}

FMatrix::FMatrix(std::size_t rows, std::size_t cols, std::uint64_t modulus, std::vector<Fe> data)
    : rows_(rows), cols_(cols), modulus_(modulus), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw Error(ErrorCode::DimMismatch, "matrix data length does not match shape");
  for (Fe& v : data_) {
    if (v >= modulus) throw Error(ErrorCode::ParseError, "matrix entry not reduced mod " + std::to_string(modulus));
  }
}

FMatrix FMatrix::identity(std::size_t n, std::uint64_t modulus) {
  FMatrix m(n, n, modulus);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool FMatrix::is_zero() const noexcept {
  for (Fe v : data_) {
    if (v != 0) return false;
  }
  return true;
}

FMatrix FMatrix::row_block(std::size_t first, std::size_t count) const {
  if (first + count > rows_) throw Error(ErrorCode::DimMismatch, "row block out of range");
  FMatrix out(count, cols_, modulus_);
  std::copy(data_.begin() + static_cast<std::ptrdiff_t>(first * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((first + count) * cols_), out.data_.begin());
  return out;
}

namespace {

void require_same_field(const FMatrix& a, const FMatrix& b) {
  if (a.modulus() != b.modulus()) throw Error(ErrorCode::DimMismatch, "matrices over different fields");
}

}  // namespace

FMatrix operator+(const FMatrix& a, const FMatrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::DimMismatch, "sum of unequal shapes");
  const PrimeField f = a.field();
  FMatrix out(a.rows(), a.cols(), a.modulus());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = f.add(a(r, c), b(r, c));
  }
  return out;
}

FMatrix operator-(const FMatrix& a) {
  const PrimeField f = a.field();
  FMatrix out(a.rows(), a.cols(), a.modulus());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = f.neg(a(r, c));
  }
  return out;
}

FMatrix operator*(const FMatrix& a, const FMatrix& b) {
  require_same_field(a, b);
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimMismatch, "product of incompatible shapes");
  const PrimeField f = a.field();
  FMatrix out(a.rows(), b.cols(), a.modulus());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Fe v = a(r, k);
      if (v == 0) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) = f.add(out(r, c), f.mul(v, b(k, c)));
    }
  }
  return out;
}

std::vector<Fe> operator*(const FMatrix& a, std::span<const Fe> v) {
  if (a.cols() != v.size()) throw Error(ErrorCode::DimMismatch, "matrix-vector shapes differ");
  const PrimeField f = a.field();
  std::vector<Fe> out(a.rows(), 0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Fe acc = 0;
    for (std::size_t c = 0; c < a.cols(); ++c) acc = f.add(acc, f.mul(a(r, c), v[c]));
    out[r] = acc;
  }
  return out;
}

FMatrix vstack(std::span<const FMatrix> parts, std::size_t cols, std::uint64_t modulus) {
  std::size_t rows = 0;
  for (const FMatrix& p : parts) {
    if (p.rows() == 0) continue;
    if (p.cols() != cols || p.modulus() != modulus) throw Error(ErrorCode::DimMismatch, "vstack of unequal widths");
    rows += p.rows();
  }
  std::vector<Fe> data;
  data.reserve(rows * cols);
  for (const FMatrix& p : parts) {
    if (p.rows() != 0) data.insert(data.end(), p.data().begin(), p.data().end());
  }
  return FMatrix(rows, cols, modulus, std::move(data));
}

FMatrix vstack(const FMatrix& top, const FMatrix& bottom) {
  const FMatrix parts[] = {top, bottom};
  const std::size_t cols = top.rows() != 0 ? top.cols() : bottom.cols();
  return vstack(parts, cols, top.modulus());
}

std::size_t field_rank(const FMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  const PrimeField f = m.field();
  FMatrix a = m;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != rank) {
      for (std::size_t c = col; c < a.cols(); ++c) std::swap(a(pivot, c), a(rank, c));
    }
    const Fe inv = f.inv(a(rank, col));
    for (std::size_t r = rank + 1; r < a.rows(); ++r) {
      if (a(r, col) == 0) continue;
      const Fe factor = f.mul(a(r, col), inv);
      for (std::size_t c = col; c < a.cols(); ++c) a(r, c) = f.sub(a(r, c), f.mul(factor, a(rank, c)));
    }
    ++rank;
  }
  assert(rank <= std::min(m.rows(), m.cols()));
  return rank;
}

Fe FieldRng::uniform(std::uint64_t p) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % p;
  while (true) {
    const std::uint64_t v = engine_();
    if (v < limit) return v % p;
  }
}

FMatrix sample_uniform(std::size_t rows, std::size_t cols, std::uint64_t p, FieldRng& rng) {
  FMatrix m(rows, cols, p);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.uniform(p);
  }
  return m;
}

FMatrix sample_uniform(std::size_t rows, std::size_t cols, std::uint64_t p, std::uint64_t seed) {
  FieldRng rng(seed);
  return sample_uniform(rows, cols, p, rng);
}

std::uint64_t derive_seed(std::uint64_t seed) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31U);
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<Wide>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e > 0) {
    if (e & 1U) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1U;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // These bases are a deterministic witness set for all n < 2^64.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime_above(std::uint64_t n) {
  for (std::uint64_t c = n + 1; c > n; ++c) {
    if (is_prime(c)) return c;
  }
  throw Error(ErrorCode::FieldTooLarge, "no 64-bit prime above " + std::to_string(n));
}

}  // namespace wss
