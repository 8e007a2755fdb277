#include <gtest/gtest.h>

#include <filesystem>

#include "support.hpp"
#include "wss/error.hpp"
#include "wss/serialize.hpp"

using namespace wss;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("wss_serialize_" + name);
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalFault;
}

}  // namespace

TEST(Serialize, PatternRoundTrip) {
  const Pattern p = test::load_named("ex1");
  EXPECT_EQ(pattern_from_json(to_json(p)), p);
  EXPECT_EQ(p.K, 5);
  EXPECT_EQ(p.security.size(), 3u);  // the empty set is dropped
}

TEST(Serialize, PatternValidation) {
  EXPECT_EQ(code_of([] { pattern_from_json(Json::parse(R"({"K": 3, "security": [[4]]})")); }), ErrorCode::RejectRange);
  EXPECT_EQ(code_of([] { pattern_from_json(Json::parse(R"({"K": 3, "security": [[]]})")); }),
            ErrorCode::RejectEmptySecurity);
  EXPECT_EQ(code_of([] { pattern_from_json(Json::parse(R"({"K": 4, "security": [[1]], "colluding": [[1,2,3]]})")); }),
            ErrorCode::RejectLargeCoalition);
  EXPECT_EQ(code_of([] { pattern_from_json(Json::parse(R"({"security": [[1]]})")); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { load_pattern("/nonexistent/pattern.json"); }), ErrorCode::ParseError);
}

TEST(Serialize, RateReport) {
  const Json j = rate_report(optimal_rate(test::load_named("ex2")));
  EXPECT_EQ(j.at("case"), "IF");
  EXPECT_EQ(j.at("a_star"), 2);
  EXPECT_EQ(j.at("b_star"), "1/2");
  EXPECT_EQ(j.at("rate"), "5/2");
  EXPECT_EQ(j.at("b_values").at("3"), "1/2");
  EXPECT_EQ(j.at("achieving_pairs").size(), 3u);
  EXPECT_EQ(rate_report(optimal_rate(test::load_named("ex1"))).at("rate"), "4/1");
}

TEST(Serialize, MatrixFormat) {
  const FMatrix m(2, 3, 7, {1, 2, 3, 4, 5, 6});
  const Json j = to_json(m);
  EXPECT_EQ(j.at("rows"), 2);
  EXPECT_EQ(j.at("cols"), 3);
  EXPECT_EQ(j.at("mod"), 7);
  EXPECT_EQ(j.at("data"), Json::parse("[1,2,3,4,5,6]"));
  EXPECT_EQ(matrix_from_json(j), m);
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"rows":2,"cols":2,"mod":7,"data":[1]})")), Error);
}

TEST(Serialize, SchemeRoundTripAndHash) {
  const Pattern p = test::load_named("ex2");
  const KeyScheme s = synthesize(p, optimal_rate(p), 7);
  const Json j = to_json(s);
  EXPECT_EQ(j.at("hash"), scheme_hash(s));
  EXPECT_EQ(scheme_from_json(j), s);

  Json tampered = j;
  tampered["keys"][0]["data"][0] = (tampered["keys"][0]["data"][0].get<int>() + 1) % 1277;
  EXPECT_EQ(code_of([&] { scheme_from_json(tampered); }), ErrorCode::ParseError);

  const auto path = temp_file("scheme.json");
  write_json_file(path, j);
  EXPECT_EQ(scheme_from_json(read_json_file(path)), s);
  std::filesystem::remove(path);
}

TEST(Serialize, HexColumns) {
  EXPECT_EQ(hex_width(2), 1u);
  EXPECT_EQ(hex_width(17), 2u);
  EXPECT_EQ(hex_width(1277), 3u);
  const Column c{0, 5, 1276};
  EXPECT_EQ(encode_column(c, 1277), "0000054fc");
  EXPECT_EQ(decode_column("0000054fc", 1277), c);
  EXPECT_THROW(decode_column("0000", 1277), Error);
  EXPECT_THROW(decode_column("fff", 1277), Error);  // 4095 >= p
  EXPECT_THROW(decode_column("0g0", 1277), Error);
}

TEST(Serialize, TranscriptRoundTripIsBitExact) {
  const Pattern p = test::load_named("other_q");
  const KeyScheme s = synthesize(p, optimal_rate(p), 7);
  TranscriptFile f;
  f.scheme_hash = scheme_hash(s);
  f.master_seed = 42;
  for (std::uint64_t r = 0; r < 5; ++r) f.transcripts.push_back(run_round_seeded(s, 42, r, f.scheme_hash));
  const Json j = to_json(f);
  const TranscriptFile back = transcript_file_from_json(j);
  EXPECT_EQ(back.transcripts, f.transcripts);
  EXPECT_EQ(to_json(back).dump(), j.dump());
  EXPECT_EQ(j.at("transcripts")[0].at("z").at("5"), "");  // unkeyed user
}

TEST(Serialize, AuditReportJson) {
  AuditReport r;
  r.add({"user_entropy", "user 1", Rational(3, 2), Rational(1), Relation::AtLeast, true});
  r.add({"security_mi", "S={1} T={}", Rational(1), Rational(0), Relation::Equal, false});
  const Json j = to_json(r);
  EXPECT_EQ(j.at("overall"), "fail");
  EXPECT_EQ(j.at("failures"), 1);
  EXPECT_EQ(j.at("items")[0].at("value"), "3/2");
  EXPECT_EQ(j.at("items")[0].at("relation"), ">=");
}
