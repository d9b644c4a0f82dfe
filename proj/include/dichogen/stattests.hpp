#pragma once

// Bit-level randomness battery run on the mod-2 projection of a generated
// sequence: runs, frequency, cumulative sums, block frequency,
// autocorrelation, longest run, 2-bit, discrete Kolmogorov-Smirnov, spectral
// and Maurer's universal test.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dichogen/genkernel.hpp"

namespace dichogen::stats {

using BitSeq = std::vector<std::uint8_t>;

inline constexpr double kDefaultAlpha = 0.01;

struct TooShort {
  std::size_t required = 0;
  std::size_t actual = 0;
};

/// One test outcome. A test whose length precondition fails reports
/// `too_short`, p_value 0 and a NaN statistic instead of throwing.
struct TestResult {
  std::string name;
  double statistic = 0.0;
  double p_value = 0.0;
  std::vector<std::pair<std::string, double>> params;  // insertion ordered, includes alpha
  bool pass = false;
  std::optional<TooShort> too_short;
};

struct TestOptions {
  double alpha = kDefaultAlpha;
  /// Waives the minimum-length preconditions; for hand-checkable small cases.
  bool enforce_min_length = true;
};

/// Thrown by helpers that return data rather than a TestResult.
class TooShortError : public std::runtime_error {
 public:
  TooShortError(std::string name, std::size_t required, std::size_t actual);
  std::size_t required() const { return required_; }
  std::size_t actual() const { return actual_; }

 private:
  std::size_t required_;
  std::size_t actual_;
};

BitSeq project_mod2(const Word& values);

TestResult freq(const BitSeq& s, const TestOptions& options = {});
TestResult runs(const BitSeq& s, const TestOptions& options = {});
TestResult cusum(const BitSeq& s, const TestOptions& options = {});
TestResult blocks(const BitSeq& s, std::size_t block_size = 128, const TestOptions& options = {});
std::vector<TestResult> autocorr(const BitSeq& s, std::span<const std::size_t> lags,
                                 const TestOptions& options = {});
std::vector<TestResult> autocorr(const BitSeq& s, const TestOptions& options = {});
TestResult longrun(const BitSeq& s, const TestOptions& options = {});
TestResult twobits(const BitSeq& s, const TestOptions& options = {});
TestResult dft_test(const BitSeq& s, const TestOptions& options = {});
TestResult maurer(const BitSeq& s, const TestOptions& options = {});
TestResult ks_discrete(const BitSeq& s, std::size_t block_len = 10,
                       const TestOptions& options = {});

/// Reads bits MSB first as a base-2 integer: ((b1 * 2 + b2) * 2 + ...).
std::uint64_t horner_value(std::span<const std::uint8_t> bits);

/// Horner values of consecutive non-overlapping blocks, scaled by 2^-block_len
/// into [0, 1). A trailing partial block is dropped.
std::vector<double> horner_scaled(const BitSeq& s, std::size_t block_len = 10);

/// (v1, v2), (v3, v4), ... of the scaled block values. Throws TooShortError
/// when fewer than two blocks exist.
std::vector<std::pair<double, double>> horner_pairs(const BitSeq& s, std::size_t block_len = 10);

/// One-sample Kolmogorov-Smirnov distance between the empirical law of
/// `sample` and the uniform law on [0, 1].
double ks_uniform_statistic(std::vector<double> sample);

/// Projects mod 2 and runs every test with default parameters, in the fixed
/// order runs, freq, cusum, blocks, autocorr (lags 1, 2, 4, 8), longrun,
/// 2bits, ks_discrete, DFT, Maurer.
std::vector<TestResult> run_battery(const Word& values, double alpha = kDefaultAlpha);
std::vector<TestResult> run_battery_bits(const BitSeq& bits, double alpha = kDefaultAlpha);

/// JSON array of {name, statistic, p_value, params, pass}; precondition
/// failures add a "too_short" object and null statistic and p_value.
std::string report_json(const std::vector<TestResult>& report);

}  // namespace dichogen::stats
