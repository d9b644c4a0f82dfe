#include <gtest/gtest.h>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <map>
#include <random>

#include "dichogen/genlang.hpp"
#include "dichogen/special.hpp"
#include "dichogen/stattests.hpp"

using namespace dichogen;
using namespace dichogen::stats;
using HighPrecision = boost::multiprecision::cpp_bin_float_50;

namespace {

const TestOptions kWaived{kDefaultAlpha, false};

BitSeq bits(std::string_view text) {
  BitSeq s;
  for (char c : text) s.push_back(c == '1');
  return s;
}

BitSeq repeat(std::string_view pattern, std::size_t times) {
  std::string s;
  for (std::size_t i = 0; i < times; ++i) s += pattern;
  return bits(s);
}

BitSeq random_bits(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  BitSeq s(n);
  for (auto& b : s) b = static_cast<std::uint8_t>(rng() & 1u);
  return s;
}

double oracle_erfc(double x) {
  return boost::math::erfc(HighPrecision(x)).convert_to<double>();
}

double oracle_igamc(double a, double x) {
  return boost::math::gamma_q(HighPrecision(a), HighPrecision(x)).convert_to<double>();
}

double relative_error(double got, double want) {
  return want == 0.0 ? std::fabs(got) : std::fabs(got - want) / std::fabs(want);
}

const TestResult& find(const std::vector<TestResult>& report, const std::string& name,
                       double lag = 0.0) {
  for (const auto& r : report) {
    if (r.name != name) continue;
    if (name != "autocorr") return r;
    for (const auto& [k, v] : r.params) {
      if (k == "lag" && v == lag) return r;
    }
  }
  throw std::runtime_error("no result " + name);
}

BitSeq complement(BitSeq s) {
  for (auto& b : s) b ^= 1u;
  return s;
}

}  // namespace

TEST(Special, ErfcMatchesHighPrecision) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dist(-3.0, 9.0);
  for (int i = 0; i < 100; ++i) {
    const double x = dist(rng);
    EXPECT_LT(relative_error(special::erfc(x), oracle_erfc(x)), 1e-10) << x;
  }
}

TEST(Special, IgamcMatchesHighPrecision) {
  std::mt19937_64 rng(100);
  std::uniform_real_distribution<double> shape(0.5, 64.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    // Half-integer shapes as used by the chi-square tests, plus generic ones.
    const double a = i % 2 ? std::round(2.0 * shape(rng)) / 2.0 : shape(rng);
    const double x = unit(rng) * (3.0 * a + 20.0);
    const double want = oracle_igamc(a, x);
    if (want < 1e-250) continue;
    EXPECT_LT(relative_error(special::igamc(a, x), want), 1e-10) << a << " " << x;
  }
}

TEST(Special, EdgeValues) {
  EXPECT_EQ(special::igamc(3.0, 0.0), 1.0);
  EXPECT_THROW(special::igamc(0.0, 1.0), std::domain_error);
  EXPECT_DOUBLE_EQ(special::erfc(0.0), 1.0);
  EXPECT_NEAR(special::normal_cdf(1.959963984540054), 0.975, 1e-12);
  EXPECT_NEAR(special::kolmogorov_q(1.3580986), 0.05, 1e-6);
  // Both series agree where they switch over.
  EXPECT_NEAR(special::kolmogorov_q(1.1799999), special::kolmogorov_q(1.1800001), 1e-6);
}

TEST(ProjectMod2, Examples) {
  EXPECT_EQ(project_mod2({3, 6, 2, 2, 4, 1, 0}), bits("1000010"));
  EXPECT_EQ(project_mod2({2, 4, 8}), bits("000"));
  EXPECT_EQ(project_mod2({1}), bits("1"));
  EXPECT_EQ(project_mod2({-3, -2}), bits("10"));
}

TEST(Freq, Examples) {
  const auto r = freq(bits("1011010101"), kWaived);
  const double want = oracle_erfc(2.0 / std::sqrt(20.0));
  EXPECT_NEAR(r.p_value, want, 1e-12);
  EXPECT_NEAR(r.p_value, 0.5271, 1e-4);
  EXPECT_LT(freq(BitSeq(100, 0)).p_value, 1e-10);
}

// Worked examples with published reference values for the standard tests.
TEST(ReferenceValues, SmallWorkedExamples) {
  EXPECT_NEAR(freq(bits("1011010101"), kWaived).p_value, 0.527089, 1e-6);
  const auto b = blocks(bits("0110011010"), 3, kWaived);
  EXPECT_NEAR(b.statistic, 1.0, 1e-12);
  EXPECT_NEAR(b.p_value, 0.801252, 1e-6);
  const auto r = runs(bits("1001101011"), kWaived);
  EXPECT_EQ(r.statistic, 7.0);
  EXPECT_NEAR(r.p_value, 0.147232, 1e-6);
  const auto c = cusum(bits("1011010111"), kWaived);
  EXPECT_EQ(c.statistic, 4.0);
  EXPECT_NEAR(c.p_value, 0.4116588, 1e-6);
  // Every |X_j| for j < 5 is 2 or sqrt(20), all below T = sqrt(10 ln 20), so N1 = 5.
  const auto d = dft_test(bits("1001010011"), kWaived);
  const double d_want = (5.0 - 4.75) / std::sqrt(10.0 * 0.95 * 0.05 / 4.0);
  EXPECT_NEAR(d.statistic, d_want, 1e-12);
  EXPECT_NEAR(d.p_value, std::erfc(d_want / std::sqrt(2.0)), 1e-12);
  const auto l = longrun(bits("11001100000101010110110001001100111000000000001001001101010100010001"
                              "001111010110100000001101011111001100111001101101100010110010"));
  EXPECT_NEAR(l.statistic, 4.882605, 1e-5);
  EXPECT_NEAR(l.p_value, 0.180609, 2e-5);  // published value is rounded
  EXPECT_NEAR(l.p_value, boost::math::gamma_q(1.5, l.statistic / 2.0), 1e-12);
}

TEST(TwoBits, BalancedPairs) {
  const auto r = twobits(repeat("00011011", 64));
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_EQ(r.p_value, 1.0);
  EXPECT_TRUE(r.pass);
}

TEST(Autocorr, PerLagResults) {
  const auto alternating = repeat("01", 500);
  const auto results = autocorr(alternating);
  ASSERT_EQ(results.size(), 4u);
  EXPECT_LT(results[0].p_value, 1e-10);  // lag 1: every pair differs
  EXPECT_LT(results[1].p_value, 1e-10);  // lag 2: no pair differs
}

TEST(TooShort, ReportedNotThrown) {
  const auto r = freq(bits("0101"));
  ASSERT_TRUE(r.too_short);
  EXPECT_EQ(r.too_short->required, 100u);
  EXPECT_EQ(r.too_short->actual, 4u);
  EXPECT_FALSE(r.pass);
  EXPECT_TRUE(blocks(BitSeq(2000, 0)).too_short);
  EXPECT_TRUE(longrun(BitSeq(127, 0)).too_short);
  EXPECT_TRUE(dft_test(BitSeq(999, 0)).too_short);
  EXPECT_TRUE(maurer(BitSeq(9839, 0)).too_short);
  EXPECT_FALSE(maurer(random_bits(9840, 1)).too_short);
  EXPECT_TRUE(ks_discrete(BitSeq(99, 0)).too_short);
  const auto report = run_battery(Word(50, 1));
  EXPECT_EQ(report.size(), 13u);
  for (const auto& entry : report) EXPECT_TRUE(entry.too_short) << entry.name;
  EXPECT_NE(report_json(report).find("\"too_short\""), std::string::npos);
}

TEST(Horner, Examples) {
  EXPECT_EQ(horner_value(bits("1000000000")), 512u);
  EXPECT_EQ(horner_scaled(bits("1000000000")), std::vector<double>{0.5});
  EXPECT_EQ(horner_pairs(bits("10000000001000000000")),
            (std::vector<std::pair<double, double>>{{0.5, 0.5}}));
  EXPECT_EQ(horner_pairs(BitSeq(40, 0)),
            (std::vector<std::pair<double, double>>{{0.0, 0.0}, {0.0, 0.0}}));
  EXPECT_THROW(horner_pairs(BitSeq(19, 0)), TooShortError);
}

TEST(Horner, BijectiveOnBlocks) {
  for (std::size_t len = 1; len <= 10; ++len) {
    std::vector<bool> seen(std::size_t{1} << len, false);
    for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << len); ++pattern) {
      BitSeq block(len);
      for (std::size_t i = 0; i < len; ++i) block[i] = (pattern >> (len - 1 - i)) & 1u;
      const auto u = horner_value(block);
      ASSERT_LT(u, seen.size());
      ASSERT_FALSE(seen[u]);
      seen[u] = true;
    }
  }
}

TEST(Horner, FirstPairOfGeneratedSequence) {
  const auto spec = lang::compile(lang::builtin("ex_a7"));
  const BitSeq s = project_mod2(row(spec, 14));
  std::uint64_t u1 = 0, u2 = 0;
  for (int i = 0; i < 10; ++i) u1 = 2 * u1 + s[static_cast<std::size_t>(i)];
  for (int i = 10; i < 20; ++i) u2 = 2 * u2 + s[static_cast<std::size_t>(i)];
  const auto pairs = horner_pairs(s);
  EXPECT_EQ(pairs.front().first, static_cast<double>(u1) / 1024.0);
  EXPECT_EQ(pairs.front().second, static_cast<double>(u2) / 1024.0);
}

TEST(KsDiscrete, Examples) {
  const auto r = ks_discrete(repeat("1000000000", 100));
  EXPECT_DOUBLE_EQ(r.statistic, 0.5);
  EXPECT_LT(r.p_value, 1e-10);
  for (int grid : {4, 10, 1000}) {
    std::vector<double> v;
    for (int k = 0; k < grid; ++k) v.push_back(static_cast<double>(k) / grid);
    EXPECT_NEAR(ks_uniform_statistic(v), 1.0 / grid, 1e-12);
  }
}

TEST(Battery, OrderAndRandomInput) {
  const auto report = run_battery_bits(random_bits(1u << 15, 20240101));
  const std::vector<std::string> expected{
      "runs",    "freq",  "cusum",       "blocks", "autocorr", "autocorr", "autocorr",
      "autocorr", "longrun", "2bits", "ks_discrete", "DFT",  "Maurer"};
  std::vector<std::string> names;
  for (const auto& r : report) names.push_back(r.name);
  EXPECT_EQ(names, expected);
  for (const auto& r : report) {
    EXPECT_FALSE(r.too_short) << r.name;
    EXPECT_GT(r.p_value, 1e-4) << r.name;
    EXPECT_LT(r.p_value, 1.0) << r.name;
  }
}

TEST(Battery, DegenerateInputsFail) {
  const auto zeros = run_battery(Word(1u << 15, 0));
  for (const char* name : {"freq", "runs", "cusum", "longrun"}) {
    EXPECT_LT(find(zeros, name).p_value, kDefaultAlpha) << name;
  }
  Word alternating(1u << 15);
  for (std::size_t i = 0; i < alternating.size(); ++i) alternating[i] = static_cast<Value>(i % 2);
  const auto alt = run_battery(alternating);
  EXPECT_LT(find(alt, "autocorr", 1).p_value, kDefaultAlpha);
  EXPECT_LT(find(alt, "DFT").p_value, kDefaultAlpha);
}

TEST(Battery, DeterministicAndBounded) {
  const auto s = random_bits(50000, 3);
  const auto first = run_battery_bits(s);
  const auto second = run_battery_bits(s);
  EXPECT_EQ(report_json(first), report_json(second));
  for (const auto& r : first) {
    EXPECT_GE(r.p_value, 0.0);
    EXPECT_LE(r.p_value, 1.0);
    EXPECT_EQ(r.pass, r.p_value >= kDefaultAlpha);
  }
}

TEST(Battery, ComplementSymmetry) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto s = random_bits(20000, seed);
    const auto c = complement(s);
    EXPECT_NEAR(freq(s).p_value, freq(c).p_value, 1e-12);
    EXPECT_NEAR(runs(s).p_value, runs(c).p_value, 1e-12);
    EXPECT_NEAR(blocks(s).p_value, blocks(c).p_value, 1e-12);
    EXPECT_NEAR(twobits(s).p_value, twobits(c).p_value, 1e-12);
    const auto as = autocorr(s), ac = autocorr(c);
    for (std::size_t i = 0; i < as.size(); ++i) EXPECT_NEAR(as[i].p_value, ac[i].p_value, 1e-12);
  }
}

TEST(Battery, JsonShape) {
  const auto json = report_json({freq(random_bits(1000, 9))});
  EXPECT_EQ(json.find("\"name\""), json.find('"'));
  EXPECT_LT(json.find("\"name\""), json.find("\"statistic\""));
  EXPECT_LT(json.find("\"statistic\""), json.find("\"p_value\""));
  EXPECT_LT(json.find("\"p_value\""), json.find("\"params\""));
  EXPECT_LT(json.find("\"params\""), json.find("\"pass\""));
}

TEST(Battery, MonteCarloCalibration) {
  // 200 disjoint substreams of one seeded source; every test should reject
  // about 1% of them at alpha = 0.01.
  std::mt19937_64 rng(0x5eed);
  const std::size_t n = 1u << 15;
  std::map<std::string, int> rejections;
  std::map<std::string, int> totals;
  for (int stream = 0; stream < 200; ++stream) {
    BitSeq s(n);
    for (auto& b : s) b = static_cast<std::uint8_t>(rng() >> 63);
    for (const auto& r : run_battery_bits(s)) {
      std::string key = r.name;
      for (const auto& [k, v] : r.params) {
        if (k == "lag") key += std::to_string(static_cast<int>(v));
      }
      ++totals[key];
      if (!r.pass) ++rejections[key];
    }
  }
  for (const auto& [name, total] : totals) {
    EXPECT_EQ(total, 200);
    EXPECT_LE(rejections[name], 10) << name;
  }
}
