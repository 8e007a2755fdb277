#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "wss/field.hpp"
#include "wss/pattern.hpp"
#include "wss/ratecalc.hpp"
#include "wss/scheme.hpp"

namespace wss::test {

std::filesystem::path data_dir();
std::filesystem::path pattern_path(const std::string& name);
Pattern load_named(const std::string& name);

/// All subsets of size `s` as security sets, all of size `t` as colluding sets.
Pattern symmetric_pattern(int K, int s, int t);

/// Random pattern with K users; coalitions stay within K-2 members.
Pattern random_pattern(std::mt19937_64& rng, int K);
/// Rejection-samples random patterns until one classifies as IF.
Pattern random_if_pattern(std::mt19937_64& rng, int max_users);

/// LP optimum by enumerating every vertex of the epigraph polyhedron
/// {(b, t) : b >= 0, covers >= 1, t >= term sums}. Exponential; tiny instances only.
Rational lp_vertex_value(const LpInstance& lp);

/// Rank by counting the distinct vectors in the row space (p^rank of them).
std::size_t span_count_rank(const FMatrix& m);

/// Primality via a sieve of Eratosthenes up to `limit`.
std::vector<bool> prime_sieve(std::uint64_t limit);

/// A scheme whose keys are all zero: X_k = W_k, every input leaks.
KeyScheme zero_key_scheme(const Pattern& p, std::uint64_t prime, std::uint64_t L, std::uint64_t source_dim);

/// Scheme synthesized at a small prime (correctness only unless `generic`).
std::optional<KeyScheme> surrogate_scheme(const Pattern& p, std::uint64_t prime, std::uint64_t seed, bool generic);

}  // namespace wss::test
