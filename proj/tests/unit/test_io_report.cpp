#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include <json.hpp>

#include "ginv/io.hpp"
#include "ginv/random.hpp"
#include "ginv/report.hpp"
#include "support.hpp"

namespace {

using namespace ginv;
using test::shape;
using test::unit_matrix;

TEST(ParseElement, Examples) {
  const AlgebraElement two = parse_element(R"({"shape":[1],"blocks":[[[[2.0,0.0]]]]})");
  EXPECT_EQ(two, AlgebraElement::from_matrix(ComplexMatrix(1, 1, {cplx(2.0)})));
  EXPECT_EQ(parse_element(R"({"shape":[2],"blocks":[[[[0,0],[1,0]],[[0,0],[0,0]]]]})"), unit_matrix(2, 1, 2));
  EXPECT_THROW(parse_element(R"({"shape":[2],"blocks":[[[[1,0]]]]})"), validation_error);
}

TEST(ParseElement, ErrorsCarryContext) {
  try {
    parse_element("{\n\"shape\": [2],\n\"blocks\": [ oops ]\n}");
    FAIL() << "expected a parse error";
  } catch (const parse_error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  try {
    parse_element(R"({"shape":[1],"blocks":[[[["x",0]]]]})");
    FAIL() << "expected a parse error";
  } catch (const parse_error& e) {
    EXPECT_NE(std::string(e.what()).find("blocks[0][0][0]"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_element(R"({"shape":[1]})"), parse_error);
  EXPECT_THROW(parse_element(R"({"shape":[1,1],"blocks":[[[[1,0]]]]})"), validation_error);
  EXPECT_THROW(parse_element(R"({"shape":[0],"blocks":[[]]})"), validation_error);
}

TEST(ParseElement, RoundTripsBitExactly) {
  auto rng = sampling::make_engine(61);
  for (const AlgebraShape& s : {shape({1}), shape({3}), shape({2, 3}), shape({8})}) {
    for (int i = 0; i < 10; ++i) {
      AlgebraElement a = sampling::gaussian_element(rng, s, std::pow(10.0, i - 5));
      EXPECT_EQ(parse_element(serialize_element(a)), a);
    }
  }
  const AlgebraElement tiny = AlgebraElement::from_matrix(
      ComplexMatrix(1, 1, {cplx(std::numeric_limits<double>::denorm_min(), -0.1)}));
  EXPECT_EQ(parse_element(serialize_element(tiny)), tiny);
}

ExperimentReport sample_report() {
  ExperimentReport rep("demo");
  rep.echo("seed", "3");
  rep.add("b.second", false, "law b", {{"x", 1.5}});
  rep.add("a.first", true, "law, with comma", {{"y", 0.1}, {"z", std::numeric_limits<double>::infinity()}});
  CheckRecord e;
  e.name = "c.error";
  e.error_category = "orbit";
  e.message = "different ranks";
  rep.add(e);
  rep.sort_canonical();
  return rep;
}

TEST(Report, SummaryAndOrdering) {
  const ExperimentReport rep = sample_report();
  EXPECT_EQ(rep.summary().total, 3u);
  EXPECT_EQ(rep.summary().passed, 1u);
  EXPECT_EQ(rep.summary().failed, 2u);
  EXPECT_FALSE(rep.all_passed());
  EXPECT_EQ(rep.records().front().name, "a.first");
}

TEST(Report, JsonIsParseableAndDeterministic) {
  const std::string text = sample_report().to_json();
  EXPECT_EQ(text, sample_report().to_json());
  const auto j = nlohmann::json::parse(text);
  EXPECT_EQ(j["summary"]["total"], 3);
  EXPECT_EQ(j["config"]["seed"], "3");
  EXPECT_FALSE(j.contains("timestamp"));
  EXPECT_EQ(j["records"][0]["values"]["z"], "inf");
  EXPECT_EQ(j["records"][2]["error"]["category"], "orbit");
  EXPECT_TRUE(nlohmann::json::parse(sample_report().to_json("2026-01-01T00:00:00Z")).contains("timestamp"));
}

TEST(Report, CsvIsFlat) {
  const std::string csv = sample_report().to_csv();
  EXPECT_EQ(csv.rfind("suite,check,anchor,verdict,value\n", 0), 0u);
  EXPECT_NE(csv.find("config,,seed,,3\n"), std::string::npos);
  EXPECT_NE(csv.find("demo,a.first,\"law, with comma\",pass,y=0.1;z=inf\n"), std::string::npos);
  EXPECT_NE(csv.find("demo,c.error,,fail,error=orbit\n"), std::string::npos);
}

TEST(Report, ShortestRoundTripFormatting) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1e-8), "1e-08");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

}  // namespace
