#include "wss/protocol.hpp"

#include <string>

#include "wss/error.hpp"

namespace wss {

RoundInputs sample_round_inputs(const KeyScheme& scheme, std::uint64_t seed) {
  FieldRng rng(seed);
  const std::uint64_t p = scheme.modulus();
  RoundInputs in;
  in.w.resize(static_cast<std::size_t>(scheme.users()));
  for (Column& w : in.w) {
    w.resize(scheme.L);
    for (Fe& v : w) v = rng.uniform(p);
  }
  in.z_sigma.resize(scheme.source_dim);
  for (Fe& v : in.z_sigma) v = rng.uniform(p);
  return in;
}

std::uint64_t round_seed(std::uint64_t master_seed, std::uint64_t index) noexcept {
  return derive_seed(master_seed ^ derive_seed(index));
}

Transcript run_round(const KeyScheme& scheme, const RoundInputs& inputs, const std::string& scheme_hash) {
  const auto K = static_cast<std::size_t>(scheme.users());
  if (inputs.w.size() != K) throw Error(ErrorCode::DimMismatch, "expected one input per user");
  for (const Column& w : inputs.w) {
    if (w.size() != scheme.L) throw Error(ErrorCode::DimMismatch, "input length differs from L");
  }
  const PrimeField f(scheme.modulus());

  Transcript t;
  t.scheme_hash = scheme_hash;
  t.modulus = scheme.modulus();
  t.L = scheme.L;
  t.w = inputs.w;
  t.z_sigma = inputs.z_sigma;
  t.z = expand_keys(scheme, inputs.z_sigma);
  t.x.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    t.x[k] = t.w[k];
    if (!t.z[k].empty()) {
      for (std::size_t i = 0; i < scheme.L; ++i) t.x[k][i] = f.add(t.w[k][i], t.z[k][i]);
    }
  }
  // Server side: one message per user, delivered in user order.
  t.decoded_sum.assign(scheme.L, 0);
  for (const Column& msg : t.x) {
    for (std::size_t i = 0; i < scheme.L; ++i) t.decoded_sum[i] = f.add(t.decoded_sum[i], msg[i]);
  }
  return t;
}

Transcript run_round_seeded(const KeyScheme& scheme, std::uint64_t master_seed, std::uint64_t round_index,
                            const std::string& scheme_hash) {
  const std::uint64_t seed = round_seed(master_seed, round_index);
  Transcript t = run_round(scheme, sample_round_inputs(scheme, seed), scheme_hash);
  t.provenance = {"sampled", master_seed, round_index};
  return t;
}

bool messages_have_input_length(const Transcript& t) {
  for (const Column& x : t.x) {
    if (x.size() != t.L) return false;
  }
  return true;
}

bool decoded_correctly(const Transcript& t) {
  const PrimeField f(t.modulus);
  Column sum(t.L, 0);
  for (const Column& w : t.w) {
    if (w.size() != t.L) return false;
    for (std::size_t i = 0; i < t.L; ++i) sum[i] = f.add(sum[i], w[i]);
  }
  return sum == t.decoded_sum;
}

bool transcript_consistent(const Transcript& t) {
  if (!messages_have_input_length(t) || t.w.size() != t.x.size() || t.z.size() != t.x.size()) return false;
  const PrimeField f(t.modulus);
  Column sum(t.L, 0);
  for (std::size_t k = 0; k < t.x.size(); ++k) {
    for (std::size_t i = 0; i < t.L; ++i) {
      const Fe key = t.z[k].empty() ? 0 : t.z[k][i];
      if (t.x[k][i] != f.add(t.w[k][i], key)) return false;
      sum[i] = f.add(sum[i], t.x[k][i]);
    }
  }
  return sum == t.decoded_sum && decoded_correctly(t);
}

CoalitionView coalition_view(const Transcript& t, UserSet coalition, const Pattern* pattern) {
  CoalitionView v;
  v.coalition = coalition;
  v.messages = t.x;
  v.decoded_sum = t.decoded_sum;
  for (int k : coalition.members()) {
    if (static_cast<std::size_t>(k) > t.w.size()) throw Error(ErrorCode::RejectRange, "coalition member outside 1..K");
    v.inputs[k] = t.w[static_cast<std::size_t>(k - 1)];
    v.keys[k] = t.z[static_cast<std::size_t>(k - 1)];
  }
  if (pattern != nullptr) v.outside_colluding_system = !closure_contains(pattern->colluding, coalition);
  return v;
}

}  // namespace wss
