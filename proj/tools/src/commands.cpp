#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <ostream>

#include "wss/audit.hpp"
#include "wss/error.hpp"
#include "wss/oracle.hpp"
#include "wss/protocol.hpp"
#include "wss/ratecalc.hpp"
#include "wss/scheme.hpp"
#include "wss/serialize.hpp"

namespace wss::cli {
namespace {

struct RunConfig {
  std::string pattern_path;
  std::string scheme_path;
  std::string out_path;
  std::uint64_t q = 2;
  std::uint64_t seed = 0;
  std::uint64_t rounds = 1;
  bool oracle = false;
  std::uint64_t oracle_prime = 3;
};

std::uint64_t parse_seed(const std::string& text) {
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(text, &used, 0);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw Error(ErrorCode::ParseError, "WSS_SEED is not an integer: " + text);
  return v;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::RetryExhausted:
    case ErrorCode::InternalFault:
      return kFailed;
    default:
      return kInvalid;
  }
}

std::string summary_line(const RateAnalysis& rate) {
  std::string line = "case=" + std::string(to_string(rate.analysis.case_label)) +
                     " a*=" + std::to_string(rate.analysis.a_star);
  if (rate.lp) line += " b*=" + to_string(rate.lp->b_star);
  return line + " R*=" + to_string(rate.rate);
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  const Pattern p = load_pattern(cfg.pattern_path);
  const RateAnalysis rate = optimal_rate(p);
  if (!cfg.out_path.empty()) write_json_file(cfg.out_path, rate_report(rate));
  out << summary_line(rate) << '\n';
  return kOk;
}

int cmd_synthesize(const RunConfig& cfg, std::ostream& out) {
  const Pattern p = load_pattern(cfg.pattern_path);
  const RateAnalysis rate = optimal_rate(p);
  SynthesisOptions opts;
  opts.base_field = cfg.q;
  const KeyScheme scheme = synthesize(p, rate, cfg.seed, opts);
  const Json doc = to_json(scheme);
  if (cfg.out_path.empty()) {
    out << doc.dump(2) << '\n';
    return kOk;
  }
  write_json_file(cfg.out_path, doc);
  out << "case=" << to_string(scheme.case_label) << " p=" << scheme.modulus() << " L=" << scheme.L
      << " source_dim=" << scheme.source_dim << " retries=" << scheme.retry_count
      << " hash=" << doc.at("hash").get<std::string>() << '\n';
  return kOk;
}

KeyScheme load_scheme(const std::string& path) { return scheme_from_json(read_json_file(path)); }

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const KeyScheme scheme = load_scheme(cfg.scheme_path);
  TranscriptFile file;
  file.scheme_hash = scheme_hash(scheme);
  file.master_seed = cfg.seed;
  for (std::uint64_t r = 0; r < cfg.rounds; ++r) {
    Transcript t = run_round_seeded(scheme, cfg.seed, r, file.scheme_hash);
    if (!messages_have_input_length(t)) {
      err << "error: round " << r << ": message length differs from L\n";
      return kFailed;
    }
    if (!transcript_consistent(t) || !decoded_correctly(t)) {
      err << "error: INTERNAL_FAULT: round " << r << " decoded the wrong sum\n";
      return kFailed;
    }
    file.transcripts.push_back(std::move(t));
  }
  if (!cfg.out_path.empty()) write_json_file(cfg.out_path, to_json(file));
  out << "rounds=" << cfg.rounds << " decoded=ok L_X/L=1\n";
  return kOk;
}

struct OracleOutcome {
  bool skipped = false;
  std::string note;
  AuditReport report;
};

// Re-synthesizes at a small prime so that exhaustive enumeration is feasible.
// A surrogate that misses generic position is reported and skipped.
OracleOutcome oracle_crosscheck(const KeyScheme& scheme, std::uint64_t prime) {
  OracleOutcome res;
  const RateAnalysis rate = optimal_rate(scheme.pattern);
  SynthesisOptions opts;
  opts.prime_override = prime;
  std::optional<KeyScheme> surrogate;
  try {
    surrogate = synthesize(scheme.pattern, rate, scheme.seed, opts);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::RetryExhausted && e.code() != ErrorCode::FieldTooLarge) throw;
    res.skipped = true;
    res.note = "surrogate over F_" + std::to_string(prime) + " is not in generic position (expected at tiny primes); skipped";
    return res;
  }
  const std::uint64_t atoms = oracle_atom_count(*surrogate);
  if (atoms > kOracleAtomLimit) {
    res.skipped = true;
    res.note = "surrogate needs " + std::to_string(atoms) + " atoms, above the 2^24 limit; skipped";
    return res;
  }
  for (UserSet s : scheme.pattern.security) {
    for (UserSet t : scheme.pattern.colluding) {
      const SetPair pair{s, t};
      const OracleVerdict v = bruteforce_mi_oracle(*surrogate, pair);
      const Rational rank_mi = security_mi(*surrogate, pair);
      AuditItem item;
      item.check = "oracle_security";
      item.subject = "S=" + s.to_string() + " T=" + t.to_string() + " over F_" + std::to_string(prime);
      item.value = v.mi.value_or(rank_mi);
      item.bound = 0;
      item.relation = Relation::Equal;
      item.pass = v.independent && rank_mi == 0 && (!v.mi || *v.mi == rank_mi);
      res.report.add(std::move(item));
    }
  }
  res.note = "oracle checked " + std::to_string(res.report.items.size()) + " pairs on " + std::to_string(atoms) + " atoms";
  return res;
}

int finish_audit(const RunConfig& cfg, const AuditReport& report, const std::optional<OracleOutcome>& oracle,
                 std::ostream& out) {
  Json doc = to_json(report);
  if (oracle) doc["oracle"] = {{"skipped", oracle->skipped}, {"note", oracle->note}};
  if (!cfg.out_path.empty()) write_json_file(cfg.out_path, doc);
  for (const auto& item : report.items) {
    if (!item.pass) {
      out << "FAIL " << item.check << ' ' << item.subject << ": " << to_string(item.value) << " vs "
          << to_string(item.relation) << ' ' << to_string(item.bound) << '\n';
    }
  }
  if (oracle) out << "oracle: " << oracle->note << '\n';
  out << "checks=" << report.items.size() << " failures=" << report.failures()
      << " overall=" << (report.overall ? "pass" : "fail") << '\n';
  if (!report.overall) return kFailed;
  if (oracle && oracle->skipped) return kOracleSkipped;
  return kOk;
}

int cmd_audit(const RunConfig& cfg, std::ostream& out) {
  const KeyScheme scheme = load_scheme(cfg.scheme_path);
  AuditReport report = full_audit(scheme);
  std::optional<OracleOutcome> oracle;
  if (cfg.oracle) {
    oracle = oracle_crosscheck(scheme, cfg.oracle_prime);
    report.merge(oracle->report);
  }
  return finish_audit(cfg, report, oracle, out);
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  KeyScheme scheme;
  if (!cfg.scheme_path.empty()) {
    scheme = load_scheme(cfg.scheme_path);
  } else {
    scheme.pattern = load_pattern(cfg.pattern_path);
    scheme.seed = cfg.seed;
  }
  auto oracle = oracle_crosscheck(scheme, cfg.oracle_prime);
  return finish_audit(cfg, oracle.report, oracle, out);
}

}  // namespace

std::uint64_t effective_seed(std::uint64_t flag_seed) {
  const char* env = std::getenv("WSS_SEED");
  return env && *env ? parse_seed(env) : flag_seed;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weakly secure summation toolkit", "wss"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto seed_opt = [&](CLI::App* sub) { sub->add_option("--seed", cfg.seed, "64-bit seed (WSS_SEED overrides)"); };
  auto out_opt = [&](CLI::App* sub, const char* what) { sub->add_option("--out", cfg.out_path, what); };
  auto oracle_prime_opt = [&](CLI::App* sub) {
    sub->add_option("--oracle-prime", cfg.oracle_prime, "surrogate prime for the brute-force oracle")
        ->check(CLI::PositiveNumber);
  };

  auto* analyze = app.add_subcommand("analyze", "classify a pattern and compute the optimal key rate");
  analyze->add_option("--pattern", cfg.pattern_path, "pattern JSON")->required()->check(CLI::ExistingFile);
  out_opt(analyze, "rate report JSON");

  auto* synth = app.add_subcommand("synthesize", "build a key scheme");
  synth->add_option("--pattern", cfg.pattern_path, "pattern JSON")->required()->check(CLI::ExistingFile);
  synth->add_option("--q", cfg.q, "base field characteristic (prime)");
  seed_opt(synth);
  out_opt(synth, "scheme JSON (stdout when omitted)");

  auto* sim = app.add_subcommand("simulate", "run protocol rounds");
  sim->add_option("--scheme", cfg.scheme_path, "scheme JSON")->required()->check(CLI::ExistingFile);
  sim->add_option("--rounds", cfg.rounds, "number of rounds");
  seed_opt(sim);
  out_opt(sim, "transcript JSON");

  auto* audit = app.add_subcommand("audit", "security and converse audit");
  audit->add_option("--scheme", cfg.scheme_path, "scheme JSON")->required()->check(CLI::ExistingFile);
  audit->add_flag("--oracle", cfg.oracle, "cross-check with the brute-force oracle at a small prime");
  oracle_prime_opt(audit);
  out_opt(audit, "audit report JSON");

  auto* oracle = app.add_subcommand("oracle", "brute-force security check at a small prime");
  auto* oracle_scheme = oracle->add_option("--scheme", cfg.scheme_path, "scheme JSON")->check(CLI::ExistingFile);
  oracle->add_option("--pattern", cfg.pattern_path, "pattern JSON")->check(CLI::ExistingFile)->excludes(oracle_scheme);
  seed_opt(oracle);
  oracle_prime_opt(oracle);
  out_opt(oracle, "oracle report JSON");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    cfg.seed = effective_seed(cfg.seed);
    if (*analyze) return cmd_analyze(cfg, out);
    if (*synth) return cmd_synthesize(cfg, out);
    if (*sim) return cmd_simulate(cfg, out, err);
    if (*audit) return cmd_audit(cfg, out);
    if (cfg.scheme_path.empty() && cfg.pattern_path.empty()) {
      err << "error: oracle needs --scheme or --pattern\n";
      return kInvalid;
    }
    return cmd_oracle(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

}  // namespace wss::cli
