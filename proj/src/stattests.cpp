#include "dichogen/stattests.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <nlohmann/json.hpp>

#include "dichogen/special.hpp"
#include "internal/dft.hpp"

namespace dichogen::stats {

namespace {

using special::erfc;
using special::igamc;

constexpr std::size_t kMinBasic = 100;
constexpr std::size_t kMinLongrun = 128;
constexpr std::size_t kMinDft = 1000;

TestResult make_result(std::string name, double statistic, double p, const TestOptions& options,
                       std::vector<std::pair<std::string, double>> params = {}) {
  TestResult r;
  r.name = std::move(name);
  r.statistic = statistic;
  r.p_value = std::clamp(p, 0.0, 1.0);
  r.params = std::move(params);
  r.params.emplace_back("alpha", options.alpha);
  r.pass = r.p_value >= options.alpha;
  return r;
}

std::optional<TestResult> check_length(const std::string& name, std::size_t required,
                                       std::size_t actual, const TestOptions& options,
                                       std::vector<std::pair<std::string, double>> params = {}) {
  if (!options.enforce_min_length || actual >= required) return std::nullopt;
  TestResult r = make_result(name, std::numeric_limits<double>::quiet_NaN(), 0.0, options,
                             std::move(params));
  r.pass = false;
  r.too_short = TooShort{required, actual};
  return r;
}

double as_double(std::size_t v) { return static_cast<double>(v); }

}  // namespace

TooShortError::TooShortError(std::string name, std::size_t required, std::size_t actual)
    : std::runtime_error(name + ": needs at least " + std::to_string(required) + " bits, got " +
                         std::to_string(actual)),
      required_(required),
      actual_(actual) {}

BitSeq project_mod2(const Word& values) {
  BitSeq bits;
  bits.reserve(values.size());
  for (Value v : values) bits.push_back(static_cast<std::uint8_t>(((v % 2) + 2) % 2));
  return bits;
}

// S = |sum(2b - 1)|, p = erfc(S / sqrt(2n)); the statistic is S / sqrt(n).
TestResult freq(const BitSeq& s, const TestOptions& options) {
  if (auto r = check_length("freq", kMinBasic, s.size(), options)) return *r;
  const double n = as_double(s.size());
  std::int64_t sum = 0;
  for (auto b : s) sum += b ? 1 : -1;
  const double s_obs = std::fabs(static_cast<double>(sum)) / std::sqrt(n);
  return make_result("freq", s_obs, erfc(s_obs / std::numbers::sqrt2), options);
}

TestResult runs(const BitSeq& s, const TestOptions& options) {
  if (auto r = check_length("runs", kMinBasic, s.size(), options)) return *r;
  const double n = as_double(s.size());
  const double pi = as_double(static_cast<std::size_t>(std::count(s.begin(), s.end(), 1))) / n;
  std::size_t v = 1;
  for (std::size_t i = 1; i < s.size(); ++i) v += s[i] != s[i - 1];
  const double vobs = as_double(v);
  // Frequency pretest: the run count is meaningless for a strongly biased sequence.
  if (std::fabs(pi - 0.5) >= 2.0 / std::sqrt(n)) {
    return make_result("runs", vobs, 0.0, options, {{"pi", pi}});
  }
  const double q = pi * (1.0 - pi);
  const double p = erfc(std::fabs(vobs - 2.0 * n * q) / (2.0 * std::sqrt(2.0 * n) * q));
  return make_result("runs", vobs, p, options, {{"pi", pi}});
}

// Forward-mode cumulative sums with the exact NIST summation ranges.
TestResult cusum(const BitSeq& s, const TestOptions& options) {
  if (auto r = check_length("cusum", kMinBasic, s.size(), options)) return *r;
  const double n = as_double(s.size());
  std::int64_t partial = 0;
  std::int64_t z = 0;
  for (auto b : s) {
    partial += b ? 1 : -1;
    z = std::max<std::int64_t>(z, partial < 0 ? -partial : partial);
  }
  if (z == 0) return make_result("cusum", 0.0, 1.0, options, {{"mode", 0.0}});
  const double zd = static_cast<double>(z);
  const double sqrt_n = std::sqrt(n);
  using special::normal_cdf;
  // Bounds truncate toward zero, as in the reference implementation.
  double sum1 = 0.0;
  for (auto k = static_cast<std::int64_t>((-n / zd + 1.0) / 4.0);
       k <= static_cast<std::int64_t>((n / zd - 1.0) / 4.0); ++k) {
    const double kd = static_cast<double>(k);
    sum1 += normal_cdf((4.0 * kd + 1.0) * zd / sqrt_n) - normal_cdf((4.0 * kd - 1.0) * zd / sqrt_n);
  }
  double sum2 = 0.0;
  for (auto k = static_cast<std::int64_t>((-n / zd - 3.0) / 4.0);
       k <= static_cast<std::int64_t>((n / zd - 1.0) / 4.0); ++k) {
    const double kd = static_cast<double>(k);
    sum2 += normal_cdf((4.0 * kd + 3.0) * zd / sqrt_n) - normal_cdf((4.0 * kd + 1.0) * zd / sqrt_n);
  }
  return make_result("cusum", zd, 1.0 - sum1 + sum2, options, {{"mode", 0.0}});
}

// chi^2 = 4M sum (pi_i - 1/2)^2 over N = floor(n / M) blocks, p = igamc(N/2, chi^2/2).
TestResult blocks(const BitSeq& s, std::size_t block_size, const TestOptions& options) {
  const double m = as_double(block_size);
  if (block_size == 0) throw std::invalid_argument("blocks: block size must be positive");
  if (auto r = check_length("blocks", 20 * block_size, s.size(), options, {{"M", m}})) return *r;
  const std::size_t count = s.size() / block_size;
  if (count == 0) throw TooShortError("blocks", block_size, s.size());
  double chi2 = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const auto first = s.begin() + static_cast<std::ptrdiff_t>(i * block_size);
    const double ones = as_double(static_cast<std::size_t>(
        std::count(first, first + static_cast<std::ptrdiff_t>(block_size), 1)));
    const double dev = ones / m - 0.5;
    chi2 += dev * dev;
  }
  chi2 *= 4.0 * m;
  return make_result("blocks", chi2, igamc(as_double(count) / 2.0, chi2 / 2.0), options,
                     {{"M", m}});
}

std::vector<TestResult> autocorr(const BitSeq& s, std::span<const std::size_t> lags,
                                 const TestOptions& options) {
  std::vector<TestResult> out;
  for (std::size_t d : lags) {
    const double lag = as_double(d);
    if (auto r = check_length("autocorr", std::max(kMinBasic, d + 1), s.size(), options,
                              {{"lag", lag}})) {
      out.push_back(*r);
      continue;
    }
    if (d == 0 || d >= s.size()) throw std::invalid_argument("autocorr: lag must be in [1, n)");
    std::size_t flips = 0;
    for (std::size_t i = 0; i + d < s.size(); ++i) flips += s[i] ^ s[i + d];
    const double len = as_double(s.size() - d);
    const double z = 2.0 * (as_double(flips) - len / 2.0) / std::sqrt(len);
    out.push_back(make_result("autocorr", z, erfc(std::fabs(z) / std::numbers::sqrt2), options,
                              {{"lag", lag}}));
  }
  return out;
}

std::vector<TestResult> autocorr(const BitSeq& s, const TestOptions& options) {
  static constexpr std::array<std::size_t, 4> kLags{1, 2, 4, 8};
  return autocorr(s, kLags, options);
}

// Longest run of ones per block; block size and category table picked from n.
TestResult longrun(const BitSeq& s, const TestOptions& options) {
  if (auto r = check_length("longrun", kMinLongrun, s.size(), options)) return *r;
  struct Table {
    std::size_t block;
    std::size_t lowest;  // runs <= lowest share the first category
    std::vector<double> probabilities;
  };
  static const Table kSmall{8, 1, {0.2148, 0.3672, 0.2305, 0.1875}};
  static const Table kMedium{128, 4, {0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124}};
  static const Table kLarge{10000, 10, {0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727}};
  const Table& table = s.size() < 6272 ? kSmall : s.size() < 750000 ? kMedium : kLarge;

  const std::size_t categories = table.probabilities.size();
  const std::size_t count = s.size() / table.block;
  std::vector<double> observed(categories, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t longest = 0;
    std::size_t current = 0;
    for (std::size_t j = 0; j < table.block; ++j) {
      current = s[i * table.block + j] ? current + 1 : 0;
      longest = std::max(longest, current);
    }
    const std::size_t category =
        std::min(categories - 1, longest <= table.lowest ? 0 : longest - table.lowest);
    observed[category] += 1.0;
  }
  const double n_blocks = as_double(count);
  double chi2 = 0.0;
  for (std::size_t c = 0; c < categories; ++c) {
    const double expected = n_blocks * table.probabilities[c];
    chi2 += (observed[c] - expected) * (observed[c] - expected) / expected;
  }
  const double k = as_double(categories - 1);
  return make_result("longrun", chi2, igamc(k / 2.0, chi2 / 2.0), options,
                     {{"M", as_double(table.block)}, {"K", k}});
}

// Non-overlapping pairs over four equiprobable cells, df = 3.
TestResult twobits(const BitSeq& s, const TestOptions& options) {
  if (auto r = check_length("2bits", kMinBasic, s.size(), options)) return *r;
  std::array<double, 4> counts{};
  const std::size_t pairs = s.size() / 2;
  for (std::size_t i = 0; i < pairs; ++i) counts[2 * s[2 * i] + s[2 * i + 1]] += 1.0;
  const double expected = as_double(pairs) / 4.0;
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  return make_result("2bits", chi2, igamc(1.5, chi2 / 2.0), options);
}

TestResult dft_test(const BitSeq& s, const TestOptions& options) {
  if (auto r = check_length("DFT", kMinDft, s.size(), options)) return *r;
  const std::size_t n = s.size();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = s[i] ? 1.0 : -1.0;
  const std::vector<double> magnitude = detail::real_dft_magnitudes(x);
  const double nd = as_double(n);
  const double threshold = std::sqrt(nd * std::log(1.0 / 0.05));
  const std::size_t half = n / 2;
  std::size_t below = 0;
  for (std::size_t j = 0; j < half; ++j) below += magnitude[j] < threshold;
  const double expected = 0.95 * nd / 2.0;
  const double d = (as_double(below) - expected) / std::sqrt(nd * 0.95 * 0.05 / 4.0);
  return make_result("DFT", d, erfc(std::fabs(d) / std::numbers::sqrt2), options,
                     {{"threshold", threshold}});
}

// Maurer's universal test with the Coron-Naccache variance correction.
TestResult maurer(const BitSeq& s, const TestOptions& options) {
  struct Row {
    std::size_t min_n;
    double expected;
    double variance;
  };
  // L = 6 .. 16
  static constexpr std::array<Row, 11> kRows{{
      {387840, 5.2177052, 2.954},     {904960, 6.1962507, 3.125},
      {2068480, 7.1836656, 3.238},    {4654080, 8.1764248, 3.311},
      {10342400, 9.1723243, 3.356},   {22753280, 10.170032, 3.384},
      {49643520, 11.168765, 3.401},   {107560960, 12.168070, 3.410},
      {231669760, 13.167693, 3.416},  {496435200, 14.167488, 3.419},
      {1059061760, 15.167379, 3.421},
  }};
  std::size_t index = 0;
  while (index + 1 < kRows.size() && s.size() >= kRows[index + 1].min_n) ++index;
  const std::size_t big_l = 6 + index;
  const std::size_t q = 10 * (std::size_t{1} << big_l);
  const double ld = as_double(big_l);
  if (auto r = check_length("Maurer", q * big_l + 1000 * big_l, s.size(), options,
                            {{"L", ld}, {"Q", as_double(q)}})) {
    return *r;
  }
  const std::size_t blocks_total = s.size() / big_l;
  if (blocks_total <= q) throw TooShortError("Maurer", q * big_l + big_l, s.size());
  const std::size_t k = blocks_total - q;

  std::vector<std::size_t> last_seen(std::size_t{1} << big_l, 0);
  const auto block = [&](std::size_t i) {  // 1-based block index
    return horner_value(std::span(s).subspan((i - 1) * big_l, big_l));
  };
  for (std::size_t i = 1; i <= q; ++i) last_seen[block(i)] = i;
  double sum = 0.0;
  for (std::size_t i = q + 1; i <= q + k; ++i) {
    const auto pattern = block(i);
    sum += std::log2(as_double(i - last_seen[pattern]));
    last_seen[pattern] = i;
  }
  const double kd = as_double(k);
  const double fn = sum / kd;
  const Row& row = kRows[index];
  const double c = 0.7 - 0.8 / ld + (4.0 + 32.0 / ld) * std::pow(kd, -3.0 / ld) / 15.0;
  const double sigma = c * std::sqrt(row.variance / kd);
  const double p = erfc(std::fabs(fn - row.expected) / (std::numbers::sqrt2 * sigma));
  return make_result("Maurer", fn, p, options, {{"L", ld}, {"Q", as_double(q)}, {"K", kd}});
}

std::uint64_t horner_value(std::span<const std::uint8_t> bits) {
  if (bits.size() > 63) throw std::invalid_argument("horner_value: block longer than 63 bits");
  std::uint64_t u = 0;
  for (auto b : bits) u = u * 2 + (b & 1u);
  return u;
}

std::vector<double> horner_scaled(const BitSeq& s, std::size_t block_len) {
  if (block_len == 0 || block_len > 63) {
    throw std::invalid_argument("horner_scaled: block length must be in [1, 63]");
  }
  const double scale = std::ldexp(1.0, -static_cast<int>(block_len));
  std::vector<double> v;
  v.reserve(s.size() / block_len);
  for (std::size_t i = 0; i + block_len <= s.size(); i += block_len) {
    v.push_back(static_cast<double>(horner_value(std::span(s).subspan(i, block_len))) * scale);
  }
  return v;
}

std::vector<std::pair<double, double>> horner_pairs(const BitSeq& s, std::size_t block_len) {
  if (s.size() < 2 * block_len) throw TooShortError("horner_pairs", 2 * block_len, s.size());
  const std::vector<double> v = horner_scaled(s, block_len);
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(v.size() / 2);
  for (std::size_t i = 0; i + 1 < v.size(); i += 2) pairs.emplace_back(v[i], v[i + 1]);
  return pairs;
}

double ks_uniform_statistic(std::vector<double> sample) {
  if (sample.empty()) throw std::invalid_argument("ks_uniform_statistic: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = as_double(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double upper = as_double(i + 1) / n - sample[i];
    const double lower = sample[i] - as_double(i) / n;
    d = std::max({d, upper, lower});
  }
  return d;
}

TestResult ks_discrete(const BitSeq& s, std::size_t block_len, const TestOptions& options) {
  const double len = as_double(block_len);
  if (auto r = check_length("ks_discrete", 10 * block_len, s.size(), options,
                            {{"block_len", len}})) {
    return *r;
  }
  std::vector<double> v = horner_scaled(s, block_len);
  if (v.empty()) throw TooShortError("ks_discrete", block_len, s.size());
  const double n = as_double(v.size());
  const double d = ks_uniform_statistic(std::move(v));
  return make_result("ks_discrete", d, special::kolmogorov_q(std::sqrt(n) * d), options,
                     {{"block_len", len}});
}

std::vector<TestResult> run_battery_bits(const BitSeq& bits, double alpha) {
  const TestOptions options{alpha, true};
  std::vector<TestResult> report;
  report.push_back(runs(bits, options));
  report.push_back(freq(bits, options));
  report.push_back(cusum(bits, options));
  report.push_back(blocks(bits, 128, options));
  for (TestResult& r : autocorr(bits, options)) report.push_back(std::move(r));
  report.push_back(longrun(bits, options));
  report.push_back(twobits(bits, options));
  report.push_back(ks_discrete(bits, 10, options));
  report.push_back(dft_test(bits, options));
  report.push_back(maurer(bits, options));
  return report;
}

std::vector<TestResult> run_battery(const Word& values, double alpha) {
  return run_battery_bits(project_mod2(values), alpha);
}

std::string report_json(const std::vector<TestResult>& report) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const TestResult& r : report) {
    nlohmann::ordered_json entry;
    entry["name"] = r.name;
    if (r.too_short) {
      entry["statistic"] = nullptr;
      entry["p_value"] = nullptr;
    } else {
      entry["statistic"] = r.statistic;
      entry["p_value"] = r.p_value;
    }
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [key, value] : r.params) params[key] = value;
    entry["params"] = params;
    entry["pass"] = r.pass;
    if (r.too_short) {
      entry["too_short"] = {{"required", r.too_short->required}, {"actual", r.too_short->actual}};
    }
    out.push_back(entry);
  }
  return out.dump(2);
}

}  // namespace dichogen::stats
