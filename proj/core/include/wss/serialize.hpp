#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "wss/audit.hpp"
#include "wss/field.hpp"
#include "wss/pattern.hpp"
#include "wss/protocol.hpp"
#include "wss/ratecalc.hpp"
#include "wss/scheme.hpp"

namespace wss {

using Json = nlohmann::json;

/// Reads and parses a JSON file. Throws Error(ParseError) on I/O or syntax errors.
Json read_json_file(const std::filesystem::path& path);
/// Writes `j.dump(2)` plus a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& j);

/// {"K", "security", "colluding"}; normalization is applied on load.
Json to_json(const Pattern& p);
Pattern pattern_from_json(const Json& j);
Pattern load_pattern(const std::filesystem::path& path);

/// {"a_star", "case", "b_star", "rate", "b_values", "achieving_pairs", ...}.
Json rate_report(const RateAnalysis& rate);

/// {"rows", "cols", "mod", "data"} with row-major data.
Json to_json(const FMatrix& m);
FMatrix matrix_from_json(const Json& j);

/// Scheme JSON including a "hash" member over the rest of the document.
Json to_json(const KeyScheme& s);
/// Throws Error(ParseError) when the stored hash does not match the content.
KeyScheme scheme_from_json(const Json& j);
/// Lowercase hex SHA-256 of the canonical scheme document (without "hash").
std::string scheme_hash(const KeyScheme& s);

/// Fixed-width hex for a column: each element uses hex_width(modulus) digits.
std::size_t hex_width(std::uint64_t modulus) noexcept;
std::string encode_column(const Column& c, std::uint64_t modulus);
Column decode_column(const std::string& text, std::uint64_t modulus);

Json to_json(const Transcript& t);
Transcript transcript_from_json(const Json& j);

/// {"format": "wss-transcripts/1", "scheme_hash", "master_seed", "transcripts"}.
struct TranscriptFile {
  std::string scheme_hash;
  std::uint64_t master_seed = 0;
  std::vector<Transcript> transcripts;
};
Json to_json(const TranscriptFile& f);
TranscriptFile transcript_file_from_json(const Json& j);

Json to_json(const AuditReport& r);

}  // namespace wss
