#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace wss::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalid = 1,       // validation or parse failure
  kFailed = 2,        // failed check, RETRY_EXHAUSTED, correctness violation
  kOracleSkipped = 3  // everything else passed, the oracle was infeasible
};

/// Runs one subcommand: analyze | synthesize | simulate | audit | oracle.
/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// WSS_SEED (decimal or 0x-hex) if set, otherwise `flag_seed`.
std::uint64_t effective_seed(std::uint64_t flag_seed);

}  // namespace wss::cli
