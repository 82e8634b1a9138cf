#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace torsep;

namespace {

const char* kNilpotentJson = R"({"d": 2, "weights": [[1, 1], [2, 0], [0, 2]]})";

Report run(const std::string& cmd, const std::string& text, Options opt = {}) {
  return run_command(cmd, parse_instance(text), opt);
}

}  // namespace

TEST(Report, ParsesAllInputShapes) {
  auto a = parse_instance(kNilpotentJson);
  auto b = parse_instance("# nilpotent\n2 3\n1 1\n2 0\n0 2\n");
  EXPECT_EQ(a.kind, Instance::Kind::weights);
  EXPECT_EQ(a.weights, b.weights);
  auto f = parse_instance("x*y^5");
  EXPECT_EQ(f.kind, Instance::Kind::binary_form);
  auto g = parse_instance(R"({"kind": "binary-form", "coeffs": [0, 0, 1, 0, 0]})");
  EXPECT_EQ(g.form, parse_binary_form("x^2*y^2"));
}

TEST(Report, InputErrorsNamePositions) {
  try {
    parse_instance("{\"kind\": \"weights\",, }");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 1, column"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_instance("2 2\n1 0\n"), InputError);
  EXPECT_THROW(parse_instance("2 1\n1 0 3\n"), InputError);
  EXPECT_THROW(parse_instance(R"({"d": 2, "weights": [[1]]})"), InputError);
  EXPECT_THROW(parse_instance(R"({"d": 1, "weights": [["a"]]})"), InputError);
}

TEST(Report, JsonRoundTrip) {
  Options opt;
  for (const std::string cmd : {"decide", "oracle", "verify", "ideal", "strata", "chpairs"}) {
    auto r = run(cmd, kNilpotentJson, opt);
    EXPECT_EQ(report_from_json(to_json(r)), r) << cmd;
  }
  opt.mode = Mode::projective;
  auto p = run("verify", kNilpotentJson, opt);
  EXPECT_EQ(report_from_json(to_json(p)), p);
  auto bf = run("binary", "x*(y+3x)^2");
  EXPECT_EQ(report_from_json(to_json(bf)), bf);
}

TEST(Report, TopLevelKeys) {
  auto j = to_json(run("decide", kNilpotentJson));
  for (const char* key : {"schema", "tool_version", "command", "mode", "instance", "verdicts", "seed"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_FALSE(j.contains("timing_ms"));
  EXPECT_EQ(j["schema"], "torsep/1");
  EXPECT_EQ(j["verdicts"][0]["witness_pair"], json::array({2, 1}));
}

TEST(Report, TextOutput) {
  auto text = emit_report(run("decide", "3 4\n1 0 0\n0 0 1\n1 1 0\n0 1 1\n"), "text");
  EXPECT_NE(text.find("SP (affine):"), std::string::npos) << text;
  EXPECT_NE(text.find("HOLDS"), std::string::npos) << text;
  auto m = emit_report(run("decide", kNilpotentJson), "text");
  EXPECT_NE(m.find("witness pair: (2,1)"), std::string::npos) << m;
}

TEST(Report, SameSeedSameBytes) {
  Options opt;
  opt.seed = 99;
  auto a = emit_report(run("verify", kNilpotentJson, opt), "json");
  auto b = emit_report(run("verify", kNilpotentJson, opt), "json");
  EXPECT_EQ(a, b);
}

TEST(Report, AgreementOnExamples) {
  auto r = run("verify", kNilpotentJson);
  EXPECT_FALSE(r.disagreement());
  EXPECT_EQ(exit_status(r), 0);
  ASSERT_FALSE(r.agreements.empty());
  EXPECT_EQ(r.agreements[0].binomial_scan, std::optional<bool>(false));
}

TEST(Report, ExplicitSspOnNonConeThrows) {
  Options opt;
  opt.property = "ssp";
  const char* five = "3 5\n1 0 0\n1 1 0\n0 1 2\n0 2 1\n1 0 1\n";
  EXPECT_THROW(run("decide", five, opt), HypothesisError);
  auto all = run("decide", five);
  EXPECT_EQ(all.verdicts.size(), 2u);
  EXPECT_FALSE(all.notes.empty());
}

TEST(Report, DisagreementMapsToExitFour) {
  auto r = run("verify", kNilpotentJson);
  r.agreements[0].agree = false;
  EXPECT_EQ(exit_status(r), 4);
  auto s = run("decide", kNilpotentJson);
  s.verified[0] = false;
  EXPECT_EQ(exit_status(s), 4);
  auto t = run("ideal", kNilpotentJson);
  t.vanishing->failures = 1;
  EXPECT_EQ(exit_status(t), 4);
}
