#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wss/pattern.hpp"
#include "wss/scheme.hpp"

namespace wss {

struct RoundProvenance {
  std::string mode = "explicit";  // "explicit" or "sampled"
  std::optional<std::uint64_t> seed;
  std::uint64_t round_index = 0;

  friend bool operator==(const RoundProvenance&, const RoundProvenance&) = default;
};

/// One round: every user sends X_k = W_k + Z_k, the server adds the messages.
struct Transcript {
  std::string scheme_hash;
  std::uint64_t modulus = 2;
  std::uint64_t L = 1;
  std::vector<Column> w;  // w[k-1]
  Column z_sigma;
  std::vector<Column> z;  // empty for users without a key
  std::vector<Column> x;
  Column decoded_sum;
  RoundProvenance provenance;

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

struct RoundInputs {
  std::vector<Column> w;
  Column z_sigma;
};

/// Uniform inputs and source key drawn from one seeded stream (inputs in user
/// order, then the source key).
RoundInputs sample_round_inputs(const KeyScheme& scheme, std::uint64_t seed);

/// Seed of round `index` under a master seed; rounds are independent streams.
std::uint64_t round_seed(std::uint64_t master_seed, std::uint64_t index) noexcept;

/// Throws Error(DimMismatch) when inputs are not L long or the source key is
/// not source_dim long.
Transcript run_round(const KeyScheme& scheme, const RoundInputs& inputs, const std::string& scheme_hash = {});
Transcript run_round_seeded(const KeyScheme& scheme, std::uint64_t master_seed, std::uint64_t round_index,
                            const std::string& scheme_hash = {});

/// Checks x_k = w_k + z_k, |x_k| = L, and decoded_sum = sum x_k = sum w_k.
bool transcript_consistent(const Transcript& t);
/// |x_k| = L for every user.
bool messages_have_input_length(const Transcript& t);
bool decoded_correctly(const Transcript& t);

/// What the server sees when colluding with `coalition`: all messages, the
/// decoded sum, and (w_k, z_k) for coalition members.
struct CoalitionView {
  UserSet coalition;
  std::vector<Column> messages;
  Column decoded_sum;
  std::map<int, Column> inputs;
  std::map<int, Column> keys;
  /// Set when a pattern was supplied and the coalition lies outside its
  /// colluding system (allowed for what-if audits).
  bool outside_colluding_system = false;
};

CoalitionView coalition_view(const Transcript& t, UserSet coalition, const Pattern* pattern = nullptr);

}  // namespace wss
