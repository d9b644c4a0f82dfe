#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dichogen/cli.hpp"

using dichogen::cli::run_cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("dichogen_cli_" + name);
}

std::string write_temp(const std::string& name, const std::string& content) {
  const auto path = temp_path(name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST(Cli, GenPrintsDigits) {
  const auto r = run({"gen", "--builtin", "ex_a7", "--level", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "3622410\n");
  EXPECT_EQ(run({"gen", "--builtin", "ex_a7", "--level", "2", "--sep", ","}).out,
            "3,6,2,2,4,1,0\n");
  EXPECT_EQ(run({"gen", "--builtin", "ex_a7", "--level", "0", "--extended"}).out, "325\n");
}

TEST(Cli, GenLengthMatchesLevel) {
  for (int k = 0; k <= 10; ++k) {
    const auto r = run({"gen", "--builtin", "ex_cubic", "--level", std::to_string(k)});
    EXPECT_EQ(r.out.size(), (std::size_t{2} << k) - 1 + 1) << k;
  }
  // Values past 9 are space separated.
  const auto wide = write_temp("wide.txt", "expr = x + y + 10\na = 1\nb = 2\n");
  const auto r = run({"gen", "--spec", wide, "--level", "3"});
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), ' '), 14);
}

TEST(Cli, TreeSequences) {
  EXPECT_EQ(run({"tree", "escheme", "--level", "3"}).out,
            "8 4 9 2 10 5 11 1 12 6 13 3 14 7 15\n");
  EXPECT_EQ(run({"tree", "concat", "--count", "11"}).out, "1 2 1 3 4 2 5 1 6 3 7\n");
  EXPECT_EQ(run({"tree", "a025480", "--count", "12"}).out, "0 0 1 0 2 1 3 0 4 2 5 1\n");
}

TEST(Cli, SpecFiles) {
  const auto bad = write_temp("bad.txt", "x+");
  const auto r = run({"gen", "--spec", bad, "--level", "2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("offset 2"), std::string::npos);

  const auto good = write_temp("a7.json", R"({"expr": "(x+y+1)%7", "a": 3, "b": 5})");
  EXPECT_EQ(run({"gen", "--spec", good, "--level", "2"}).out, "3622410\n");

  const auto no_b = write_temp("nob.json", R"({"expr": "(x+y+1)%7", "a": 3})");
  const auto missing = run({"gen", "--spec", no_b, "--level", "2"});
  EXPECT_EQ(missing.code, 2);
  EXPECT_NE(missing.err.find("\"b\""), std::string::npos);

  EXPECT_EQ(run({"gen", "--spec", temp_path("absent.json").string(), "--level", "1"}).code, 2);
  EXPECT_EQ(run({"gen", "--builtin", "nope", "--level", "1"}).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"gen", "--builtin", "ex_a7"}).code, 1);
  EXPECT_EQ(run({"gen", "--level", "2"}).code, 1);
  const auto both = run({"gen", "--builtin", "ex_a7", "--spec", "x", "--level", "2"});
  EXPECT_EQ(both.code, 1);
  EXPECT_TRUE(both.out.empty());
  EXPECT_EQ(run({"gen", "--builtin", "ex_a7", "--level", "25"}).code, 1);
  EXPECT_EQ(run({"gen", "--builtin", "ex_a7", "--level", "3", "--max-level", "2"}).code, 1);
  EXPECT_EQ(run({"access", "--builtin", "ex_a7", "--level", "3", "--index", "abc"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_NE(run({"gen", "--help"}).out.find("--level"), std::string::npos);
}

TEST(Cli, RuntimeErrors) {
  const auto r = run({"access", "--builtin", "ex_a7", "--level", "2", "--index", "9"});
  EXPECT_EQ(r.code, 3);
  const auto div = write_temp("div.txt", "expr = x % (y - 5)\na = 3\nb = 5\n");
  EXPECT_EQ(run({"gen", "--spec", div, "--level", "1"}).code, 3);
}

TEST(Cli, AccessFarIndices) {
  const auto r = run({"access", "--builtin", "ex_a7", "--level", "2", "--index", "1", "--count",
                      "7"});
  EXPECT_EQ(r.out, "3622410\n");
  const auto far = run({"access", "--builtin", "ex_b7", "--level", "100", "--index",
                        "19807040628566084398385987584", "--count", "41"});
  EXPECT_EQ(far.code, 0);
  EXPECT_EQ(far.out.size(), 42u);
}

TEST(Cli, TestVerbEmitsJson) {
  const auto r = run({"test", "--builtin", "ex_a7", "--level", "16"});
  EXPECT_EQ(r.code, 0);
  const auto report = nlohmann::json::parse(r.out);
  ASSERT_TRUE(report.is_array());
  EXPECT_EQ(report.size(), 13u);
  EXPECT_EQ(report[0]["name"], "runs");
  const auto short_run = run({"test", "--builtin", "ex_a7", "--level", "5"});
  EXPECT_EQ(short_run.code, 4);
  EXPECT_TRUE(nlohmann::json::parse(short_run.out)[0]["too_short"].is_object());
}

TEST(Cli, PlotWritesFiles) {
  const auto dir = temp_path("plots");
  std::filesystem::remove_all(dir);
  const auto r = run({"plot", "--builtin", "ex_a7", "--level", "8", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* stem : {"bar", "dft", "walk", "scatter"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / (std::string(stem) + ".svg"))) << stem;
    EXPECT_TRUE(std::filesystem::exists(dir / (std::string(stem) + ".csv"))) << stem;
  }
}

TEST(Cli, CheckAndBuiltins) {
  const auto m4 = run({"check", "--builtin", "ex_m4"});
  EXPECT_NE(m4.out.find("certificate: NotContinuative"), std::string::npos);
  EXPECT_NE(m4.out.find("witness: level 1"), std::string::npos);
  EXPECT_NE(run({"check", "--builtin", "ex_cubic", "--depth", "6"}).out.find("FixedPoint"),
            std::string::npos);
  const auto list = run({"builtins"});
  EXPECT_EQ(std::count(list.out.begin(), list.out.end(), '\n'), 14);
  EXPECT_NE(list.out.find("ex_r48"), std::string::npos);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"test", "--builtin", "ex_gcd", "--level", "15"};
  EXPECT_EQ(run(args).out, run(args).out);
}
