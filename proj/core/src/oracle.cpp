#include "wss/oracle.hpp"

#include <algorithm>
#include <limits>
#include <utility>
#include <vector>

#include "wss/error.hpp"

namespace wss {
namespace {

struct Counted {
  std::uint64_t code;
  std::uint64_t n;
};

/// LSD radix sort on 16-bit digits; passes above the largest key are skipped.
template <typename T, typename KeyFn>
void radix_sort(std::vector<T>& items, std::vector<T>& buffer, KeyFn key) {
  std::uint64_t top = 0;
  for (const T& it : items) top |= key(it);
  buffer.resize(items.size());
  std::vector<std::size_t> count(1 << 16);
  for (int shift = 0; shift < 64 && (top >> shift) != 0; shift += 16) {
    std::fill(count.begin(), count.end(), 0);
    for (const T& it : items) ++count[(key(it) >> shift) & 0xFFFF];
    std::size_t pos = 0;
    for (auto& c : count) pos += std::exchange(c, pos);
    for (const T& it : items) buffer[count[(key(it) >> shift) & 0xFFFF]++] = it;
    items.swap(buffer);
  }
}

// Scratch space reused across calls; the oracle runs many pairs back to back
// and fresh multi-hundred-megabyte allocations dominate otherwise.
struct Scratch {
  std::vector<std::uint64_t> codes, code_buffer;
  std::vector<std::pair<std::uint64_t, std::uint32_t>> keyed, keyed_buffer;
};

Scratch& scratch() {
  thread_local Scratch s;
  return s;
}

std::vector<Counted> run_length(std::vector<std::uint64_t>& codes, std::vector<std::uint64_t>& buffer) {
  radix_sort(codes, buffer, [](std::uint64_t c) { return c; });
  std::vector<Counted> out;
  for (std::uint64_t c : codes) {
    if (!out.empty() && out.back().code == c) {
      ++out.back().n;
    } else {
      out.push_back({c, 1});
    }
  }
  return out;
}

/// Appends digits to a base-p code, tracking how many digits fit in 64 bits.
class CodeBuilder {
 public:
  explicit CodeBuilder(std::uint64_t p) : p_(p) {}
  void push(Fe digit) { code_ = code_ * p_ + digit; }
  std::uint64_t code() const noexcept { return code_; }

 private:
  std::uint64_t p_;
  std::uint64_t code_ = 0;
};

std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / base) return std::nullopt;
    r *= base;
  }
  return r;
}

/// log_p n if n is an exact power of p.
std::optional<std::uint64_t> exact_log(std::uint64_t n, std::uint64_t p) {
  std::uint64_t e = 0;
  while (n > 1) {
    if (n % p != 0) return std::nullopt;
    n /= p;
    ++e;
  }
  return e;
}

}  // namespace

std::uint64_t oracle_atom_count(const KeyScheme& scheme) noexcept {
  const auto n = checked_pow(scheme.modulus(), scheme.users() * scheme.L + scheme.source_dim);
  return n.value_or(std::numeric_limits<std::uint64_t>::max());
}

OracleVerdict bruteforce_mi_oracle(const KeyScheme& scheme, const SetPair& pair, std::uint64_t atom_limit) {
  const std::uint64_t p = scheme.modulus();
  const int K = scheme.users();
  const std::size_t L = scheme.L;
  const std::size_t D = scheme.source_dim;
  const std::size_t dim = static_cast<std::size_t>(K) * L + D;
  const std::uint64_t atoms = oracle_atom_count(scheme);
  if (atoms > atom_limit) {
    throw Error(ErrorCode::SizeLimit, "oracle needs " + std::to_string(atoms) + " atoms");
  }

  const auto secret_users = pair.security.members();
  const auto coll_users = pair.colluding.members();
  std::size_t cond_digits = L;
  for (int k : coll_users) cond_digits += L + scheme.key_matrix(k).rows();
  const std::size_t view_digits = static_cast<std::size_t>(K) * L;
  const std::size_t secret_digits = secret_users.size() * L;
  const auto secret_radix = checked_pow(p, secret_digits);
  const auto view_radix = checked_pow(p, view_digits);
  if (!checked_pow(p, cond_digits + view_digits + secret_digits) || !secret_radix || !view_radix) {
    throw Error(ErrorCode::SizeLimit, "oracle outcome codes exceed 64 bits");
  }

  // p <= 2^24 here, so dot products of length D stay far below 2^64.
  std::vector<Fe> atom(dim, 0);
  std::vector<Fe> z;  // all keys, user-major
  std::vector<std::size_t> z_offset(static_cast<std::size_t>(K) + 1, 0);
  for (int k = 1; k <= K; ++k) z_offset[k] = z_offset[k - 1] + scheme.key_matrix(k).rows();
  z.resize(z_offset[K]);
  Scratch& work = scratch();
  std::vector<std::uint64_t>& joint_codes = work.codes;
  joint_codes.clear();
  joint_codes.reserve(atoms);

  const Fe* s = atom.data() + static_cast<std::size_t>(K) * L;
  auto w = [&](int k, std::size_t j) { return atom[static_cast<std::size_t>(k - 1) * L + j]; };
  auto key = [&](int k, std::size_t j) { return z[z_offset[k - 1] + j]; };
  auto has_key = [&](int k) { return z_offset[k] > z_offset[k - 1]; };

  bool source_changed = true;
  for (std::uint64_t i = 0; i < atoms; ++i) {
    for (int k = 1; source_changed && k <= K; ++k) {
      const FMatrix& c = scheme.key_matrix(k);
      for (std::size_t r = 0; r < c.rows(); ++r) {
        std::uint64_t acc = 0;
        for (std::size_t d = 0; d < D; ++d) acc += c(r, d) * s[d];
        z[z_offset[k - 1] + r] = acc % p;
      }
    }

    // (cond, view, secret) packed most-significant first
    CodeBuilder code(p);
    for (std::size_t j = 0; j < L; ++j) {
      std::uint64_t sum = 0;
      for (int k = 1; k <= K; ++k) sum += w(k, j);
      code.push(sum % p);
    }
    for (int k : coll_users) {
      for (std::size_t j = 0; j < L; ++j) code.push(w(k, j));
      for (std::size_t j = z_offset[k - 1]; j < z_offset[k]; ++j) code.push(z[j]);
    }
    for (int k = 1; k <= K; ++k) {
      for (std::size_t j = 0; j < L; ++j) code.push(has_key(k) ? (w(k, j) + key(k, j)) % p : w(k, j));
    }
    for (int k : secret_users) {
      for (std::size_t j = 0; j < L; ++j) code.push(w(k, j));
    }
    joint_codes.push_back(code.code());

    // odometer over (w, s); keys only change when s does
    source_changed = false;
    for (std::size_t d = 0; d < dim; ++d) {
      source_changed = d >= static_cast<std::size_t>(K) * L;
      if (++atom[d] < p) break;
      atom[d] = 0;
    }
  }

  const std::vector<Counted> joint = run_length(joint_codes, work.code_buffer);

  // Marginals derived from the joint code: view = joint / |secret|,
  // cond = view / |X|, (cond, secret) = cond * |secret| + secret. View and cond
  // groups are contiguous in the sorted joint table; (cond, secret) needs a sort.
  std::vector<Counted> view, cond, cond_secret;
  std::vector<std::uint32_t> view_of(joint.size()), cond_of(joint.size()), cs_of(joint.size());
  auto& cs_keys = work.keyed;
  cs_keys.clear();
  cs_keys.reserve(joint.size());
  for (std::size_t i = 0; i < joint.size(); ++i) {
    const Counted& e = joint[i];
    const std::uint64_t v = e.code / *secret_radix;
    const std::uint64_t c = v / *view_radix;
    if (!view.empty() && view.back().code == v) view.back().n += e.n; else view.push_back({v, e.n});
    if (!cond.empty() && cond.back().code == c) cond.back().n += e.n; else cond.push_back({c, e.n});
    view_of[i] = static_cast<std::uint32_t>(view.size() - 1);
    cond_of[i] = static_cast<std::uint32_t>(cond.size() - 1);
    cs_keys.emplace_back(c * *secret_radix + e.code % *secret_radix, static_cast<std::uint32_t>(i));
  }
  radix_sort(cs_keys, work.keyed_buffer, [](const auto& e) { return e.first; });
  for (const auto& [c, i] : cs_keys) {
    if (!cond_secret.empty() && cond_secret.back().code == c) cond_secret.back().n += joint[i].n;
    else cond_secret.push_back({c, joint[i].n});
    cs_of[i] = static_cast<std::uint32_t>(cond_secret.size() - 1);
  }

  OracleVerdict verdict;
  verdict.atoms = atoms;
  verdict.independent = true;
  // n(v,s) n(c) = n(c,s) n(v) on the joint support (counts <= 2^24, no
  // overflow). Summed over s this forces n(c,s) = 0 off the support.
  for (std::size_t i = 0; i < joint.size(); ++i) {
    if (joint[i].n * cond[cond_of[i]].n != cond_secret[cs_of[i]].n * view[view_of[i]].n) {
      verdict.independent = false;
      break;
    }
  }

  // I = [sum_joint n log n + sum_cond n log n - sum_cs n log n - sum_view n log n] / N
  std::int64_t acc = 0;
  bool exact = true;
  auto accumulate = [&](const std::vector<Counted>& table, std::int64_t sign) {
    std::uint64_t last_n = 0;
    std::optional<std::uint64_t> last_log;
    for (const Counted& e : table) {
      if (e.n != last_n) {
        last_n = e.n;
        last_log = exact_log(e.n, p);
      }
      if (!last_log) {
        exact = false;
        return;
      }
      acc += sign * static_cast<std::int64_t>(e.n * *last_log);
    }
  };
  accumulate(joint, 1);
  accumulate(cond, 1);
  accumulate(cond_secret, -1);
  accumulate(view, -1);
  if (exact) verdict.mi = Rational(BigInt(acc), BigInt(atoms));
  return verdict;
}

}  // namespace wss
