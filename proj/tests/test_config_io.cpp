#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dswkit/config.hpp"
#include "dswkit/io.hpp"

using namespace dswkit;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("dswkit_test_" + name)).string();
}

}  // namespace

TEST(Config, ParsesPairsCommentsAndBlankLines) {
  const auto e = parse_config("# run\n\na = 1\nt = 0.1, 0.5  # times\n  frame=shifted\n");
  ASSERT_EQ(e.size(), 3u);
  EXPECT_EQ(e[0].key, "a");
  EXPECT_EQ(e[0].value, "1");
  EXPECT_EQ(e[1].value, "0.1, 0.5");
  EXPECT_EQ(e[1].line, 4);
  EXPECT_EQ(e[2].key, "frame");
}

TEST(Config, ReportsLineNumbers) {
  try {
    parse_config("a = 1\nthis is not a pair\n", "run.cfg");
    FAIL();
  } catch (const ConfigError& err) {
    EXPECT_NE(std::string(err.what()).find("run.cfg:2"), std::string::npos);
  }
  EXPECT_THROW(parse_config("= 3\n"), ConfigError);
  EXPECT_THROW(parse_config("bad key = 3\n"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/dswkit.cfg"), ConfigError);
}

TEST(Config, Numbers) {
  EXPECT_DOUBLE_EQ(parse_number("a", " 2.5 "), 2.5);
  EXPECT_THROW(parse_number("a", "2.5x"), ConfigError);
  EXPECT_THROW(parse_number("a", ""), ConfigError);
  EXPECT_THROW(parse_number("a", "nan"), ConfigError);
  const auto v = parse_number_list("t", "0.1,0.5, 1.5,2.75");
  ASSERT_EQ(v.size(), 4u);
  EXPECT_DOUBLE_EQ(v[3], 2.75);
  EXPECT_TRUE(parse_number_list("t", "").empty());
  EXPECT_EQ(parse_word_list("c1, tau_invariance").at(1), "tau_invariance");
}

TEST(Csv, RoundTripFormattingAndLfEndings) {
  const std::string p = temp_path("out.csv");
  {
    CsvWriter w(p, {"x", "value"});
    w.row(std::vector<double>{0.1, 1.0 / 3.0});
    w.row(std::vector<std::string>{"a,b", "ok"});
  }
  const std::string s = slurp(p);
  EXPECT_EQ(s, "x,value\n0.10000000000000001,0.33333333333333331\n\"a,b\",ok\n");
  EXPECT_EQ(std::stod("0.33333333333333331"), 1.0 / 3.0);
  std::filesystem::remove(p);
}

TEST(Csv, Determinism) {
  const std::string p = temp_path("a.csv"), q = temp_path("b.csv");
  for (const auto& path : {p, q}) {
    CsvWriter w(path, {"x"});
    for (int i = 0; i < 100; ++i) w.row(std::vector<double>{std::sin(i * 0.37)});
  }
  EXPECT_EQ(slurp(p), slurp(q));
  std::filesystem::remove(p);
  std::filesystem::remove(q);
}

TEST(Svg, WritesViewportAxesAndDashedSeries) {
  const std::string p = temp_path("plot.svg");
  PlotSpec spec;
  spec.title = "t=0.1 a=1 c=4";
  spec.series.push_back({"U", {0, 1, 2}, {0, 1, 0}, false, "#000"});
  spec.series.push_back({"stationary", {0, 2}, {0.5, 0.5}, true, "#f00"});
  write_svg(p, spec);
  const std::string s = slurp(p);
  EXPECT_NE(s.find("viewBox=\"0 0 800 500\""), std::string::npos);
  EXPECT_NE(s.find("stroke-dasharray"), std::string::npos);
  EXPECT_NE(s.find("t=0.1 a=1 c=4"), std::string::npos);
  EXPECT_NE(s.find("<polyline"), std::string::npos);
  std::filesystem::remove(p);
}
