#include "wss/serialize.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <sstream>

#include "wss/error.hpp"

namespace wss {
namespace {

constexpr const char* kTranscriptFormat = "wss-transcripts/1";

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

template <typename Fn>
auto guarded(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    parse_fail(std::string(what) + ": " + e.what());
  }
}

Json set_list(const std::vector<UserSet>& sets) {
  Json out = Json::array();
  for (UserSet s : sets) out.push_back(s.members());
  return out;
}

std::vector<UserSet> sets_from_json(const Json& j, int K) {
  std::vector<UserSet> out;
  for (const auto& raw : j) {
    UserSet s;
    for (const auto& m : raw) {
      const int k = m.get<int>();
      if (k < 1 || k > K || k > 64) throw Error(ErrorCode::RejectRange, "member " + std::to_string(k) + " outside [1, K]");
      s.insert(k);
    }
    out.push_back(s);
  }
  return out;
}

Json pair_json(const SetPair& pr) { return {{"S", pr.security.members()}, {"T", pr.colluding.members()}}; }

Json user_map(const std::map<int, Rational>& m) {
  Json out = Json::object();
  for (const auto& [k, v] : m) out[std::to_string(k)] = to_string(v);
  return out;
}

std::string sha256_hex(const std::string& text) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::InternalFault, "SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

Json scheme_body(const KeyScheme& s) {
  Json keys = Json::array();
  for (const FMatrix& c : s.coeff) keys.push_back(to_json(c));
  Json lp = nullptr;
  if (s.lp_echo) {
    Json nums = Json::object();
    for (const auto& [k, v] : s.lp_echo->numerators) nums[std::to_string(k)] = v;
    lp = {{"q_bar", s.lp_echo->q_bar}, {"numerators", nums}};
  }
  return {
      {"format", "wss-scheme/1"},
      {"pattern", to_json(s.pattern)},
      {"case_label", std::string(to_string(s.case_label))},
      {"field_plan",
       {{"q", s.field.q},
        {"B", s.field.B},
        {"size_bound", s.field.size_bound},
        {"p", s.field.p},
        {"symbol_unit", std::string(to_string(s.field.symbol_unit))}}},
      {"L", s.L},
      {"source_dim", s.source_dim},
      {"keys", keys},
      {"helper_u", s.helper_u ? Json(*s.helper_u) : Json(nullptr)},
      {"lp_echo", lp},
      {"rate", to_string(s.rate)},
      {"seed", s.seed},
      {"retry_count", s.retry_count},
      {"generic_check_restricted", s.generic_check_restricted},
  };
}

Json column_map(const std::vector<Column>& cols, std::uint64_t modulus) {
  Json out = Json::object();
  for (std::size_t k = 0; k < cols.size(); ++k) out[std::to_string(k + 1)] = encode_column(cols[k], modulus);
  return out;
}

std::vector<Column> columns_from_map(const Json& j, std::uint64_t modulus) {
  std::vector<Column> out(j.size());
  for (const auto& [key, value] : j.items()) {
    const std::size_t k = std::stoul(key);
    if (k < 1 || k > out.size()) parse_fail("user key " + key + " out of range");
    out[k - 1] = decode_column(value.get<std::string>(), modulus);
  }
  return out;
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open " + path.string());
  return guarded("invalid JSON", [&] { return Json::parse(in); });
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

Json to_json(const Pattern& p) {
  return {{"K", p.K}, {"security", set_list(p.security)}, {"colluding", set_list(p.colluding)}};
}

Pattern pattern_from_json(const Json& j) {
  const auto [K, security, colluding] = guarded("pattern", [&] {
    const int k = j.at("K").get<int>();
    if (k < 2 || k > 64) throw Error(ErrorCode::RejectRange, "K must lie in [2, 64]");
    return std::tuple{k, sets_from_json(j.at("security"), k),
                      j.contains("colluding") ? sets_from_json(j.at("colluding"), k) : std::vector<UserSet>{}};
  });
  return normalize_pattern(K, security, colluding);
}

Pattern load_pattern(const std::filesystem::path& path) { return pattern_from_json(read_json_file(path)); }

Json rate_report(const RateAnalysis& rate) {
  const PatternAnalysis& a = rate.analysis;
  Json pairs = Json::array();
  for (const auto& pr : a.achieving_pairs) pairs.push_back(pair_json(pr));
  Json report = {
      {"case", std::string(to_string(a.case_label))},
      {"a_star", a.a_star},
      {"implicit_set", a.implicit_set.members()},
      {"total_set", a.total_set.members()},
      {"q_union", a.q_union.members()},
      {"achieving_pairs", pairs},
      {"rate", to_string(rate.rate)},
      {"b_star", nullptr},
      {"b_values", Json::object()},
  };
  if (rate.lp) {
    report["b_star"] = to_string(rate.lp->b_star);
    report["b_values"] = user_map(rate.lp->b_values);
    report["q_bar"] = rate.lp->q_bar;
  }
  return report;
}

Json to_json(const FMatrix& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"mod", m.modulus()}, {"data", m.data()}};
}

FMatrix matrix_from_json(const Json& j) {
  return guarded("matrix", [&] {
    return FMatrix(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(), j.at("mod").get<std::uint64_t>(),
                   j.at("data").get<std::vector<Fe>>());
  });
}

std::string scheme_hash(const KeyScheme& s) { return sha256_hex(scheme_body(s).dump()); }

Json to_json(const KeyScheme& s) {
  Json j = scheme_body(s);
  j["hash"] = sha256_hex(j.dump());
  return j;
}

KeyScheme scheme_from_json(const Json& j) {
  KeyScheme s = guarded("scheme", [&] {
    KeyScheme out;
    out.pattern = pattern_from_json(j.at("pattern"));
    out.case_label = parse_case_label(j.at("case_label").get<std::string>());
    const Json& fp = j.at("field_plan");
    out.field.q = fp.at("q").get<std::uint64_t>();
    out.field.B = fp.at("B").get<std::uint32_t>();
    out.field.size_bound = fp.at("size_bound").get<std::uint64_t>();
    out.field.p = fp.at("p").get<std::uint64_t>();
    const auto unit = fp.at("symbol_unit").get<std::string>();
    out.field.symbol_unit = unit == to_string(SymbolUnit::Base) ? SymbolUnit::Base : SymbolUnit::Extension;
    out.L = j.at("L").get<std::uint64_t>();
    out.source_dim = j.at("source_dim").get<std::uint64_t>();
    for (const auto& m : j.at("keys")) out.coeff.push_back(matrix_from_json(m));
    if (!j.at("helper_u").is_null()) out.helper_u = j.at("helper_u").get<int>();
    if (const Json& lp = j.at("lp_echo"); !lp.is_null()) {
      LpEcho echo;
      echo.q_bar = lp.at("q_bar").get<std::uint64_t>();
      for (const auto& [k, v] : lp.at("numerators").items()) echo.numerators[std::stoi(k)] = v.get<std::uint64_t>();
      out.lp_echo = echo;
    }
    out.rate = parse_rational(j.at("rate").get<std::string>());
    out.seed = j.at("seed").get<std::uint64_t>();
    out.retry_count = j.at("retry_count").get<std::uint32_t>();
    out.generic_check_restricted = j.at("generic_check_restricted").get<bool>();
    return out;
  });
  if (s.coeff.size() != static_cast<std::size_t>(s.pattern.K)) parse_fail("scheme needs one key matrix per user");
  for (const FMatrix& c : s.coeff) {
    if (c.cols() != s.source_dim || c.modulus() != s.field.p) parse_fail("key matrix shape disagrees with the plan");
  }
  const auto stored = guarded("scheme hash", [&] { return j.at("hash").get<std::string>(); });
  if (stored != scheme_hash(s)) parse_fail("scheme hash mismatch");
  return s;
}

std::size_t hex_width(std::uint64_t modulus) noexcept {
  std::size_t w = 1;
  for (std::uint64_t top = modulus - 1; top >= 16; top >>= 4) ++w;
  return w;
}

std::string encode_column(const Column& c, std::uint64_t modulus) {
  const std::size_t w = hex_width(modulus);
  std::string out;
  out.reserve(c.size() * w);
  static constexpr char kHex[] = "0123456789abcdef";
  for (Fe v : c) {
    for (std::size_t i = w; i-- > 0;) out += kHex[(v >> (4 * i)) & 0xF];
  }
  return out;
}

Column decode_column(const std::string& text, std::uint64_t modulus) {
  const std::size_t w = hex_width(modulus);
  if (text.size() % w != 0) parse_fail("hex column length is not a multiple of " + std::to_string(w));
  Column out;
  for (std::size_t i = 0; i < text.size(); i += w) {
    Fe v = 0;
    for (std::size_t j = 0; j < w; ++j) {
      const char ch = text[i + j];
      int d;
      if (ch >= '0' && ch <= '9') d = ch - '0';
      else if (ch >= 'a' && ch <= 'f') d = ch - 'a' + 10;
      else parse_fail(std::string("bad hex digit '") + ch + "'");
      v = (v << 4) | static_cast<Fe>(d);
    }
    if (v >= modulus) parse_fail("field element out of range");
    out.push_back(v);
  }
  return out;
}

Json to_json(const Transcript& t) {
  Json prov = {{"mode", t.provenance.mode}, {"round_index", t.provenance.round_index}};
  prov["seed"] = t.provenance.seed ? Json(*t.provenance.seed) : Json(nullptr);
  return {
      {"scheme_hash", t.scheme_hash},
      {"modulus", t.modulus},
      {"L", t.L},
      {"hex_width", hex_width(t.modulus)},
      {"w", column_map(t.w, t.modulus)},
      {"z_sigma", encode_column(t.z_sigma, t.modulus)},
      {"z", column_map(t.z, t.modulus)},
      {"x", column_map(t.x, t.modulus)},
      {"decoded_sum", encode_column(t.decoded_sum, t.modulus)},
      {"provenance", prov},
  };
}

Transcript transcript_from_json(const Json& j) {
  return guarded("transcript", [&] {
    Transcript t;
    t.scheme_hash = j.at("scheme_hash").get<std::string>();
    t.modulus = j.at("modulus").get<std::uint64_t>();
    if (t.modulus < 2) parse_fail("modulus must be at least 2");
    t.L = j.at("L").get<std::uint64_t>();
    t.w = columns_from_map(j.at("w"), t.modulus);
    t.z_sigma = decode_column(j.at("z_sigma").get<std::string>(), t.modulus);
    t.z = columns_from_map(j.at("z"), t.modulus);
    t.x = columns_from_map(j.at("x"), t.modulus);
    t.decoded_sum = decode_column(j.at("decoded_sum").get<std::string>(), t.modulus);
    const Json& prov = j.at("provenance");
    t.provenance.mode = prov.at("mode").get<std::string>();
    if (!prov.at("seed").is_null()) t.provenance.seed = prov.at("seed").get<std::uint64_t>();
    t.provenance.round_index = prov.at("round_index").get<std::uint64_t>();
    return t;
  });
}

Json to_json(const TranscriptFile& f) {
  Json rounds = Json::array();
  for (const auto& t : f.transcripts) rounds.push_back(to_json(t));
  return {{"format", kTranscriptFormat}, {"scheme_hash", f.scheme_hash}, {"master_seed", f.master_seed},
          {"transcripts", rounds}};
}

TranscriptFile transcript_file_from_json(const Json& j) {
  return guarded("transcript file", [&] {
    if (j.at("format").get<std::string>() != kTranscriptFormat) parse_fail("unknown transcript format");
    TranscriptFile f;
    f.scheme_hash = j.at("scheme_hash").get<std::string>();
    f.master_seed = j.at("master_seed").get<std::uint64_t>();
    for (const auto& t : j.at("transcripts")) f.transcripts.push_back(transcript_from_json(t));
    return f;
  });
}

Json to_json(const AuditReport& r) {
  Json items = Json::array();
  for (const auto& i : r.items) {
    items.push_back({{"check", i.check},
                     {"subject", i.subject},
                     {"value", to_string(i.value)},
                     {"bound", to_string(i.bound)},
                     {"relation", std::string(to_string(i.relation))},
                     {"pass", i.pass}});
  }
  return {{"items", items}, {"failures", r.failures()}, {"overall", r.overall ? "pass" : "fail"}};
}

}  // namespace wss
