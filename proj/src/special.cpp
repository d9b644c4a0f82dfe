#include "dichogen/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dichogen::special {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min() / kEps;
constexpr int kMaxIterations = 100000;

// exp(-x + a ln x - ln Gamma(a)), the common prefactor of both expansions.
double prefactor(double a, double x) { return std::exp(-x + a * std::log(x) - std::lgamma(a)); }

double lower_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int i = 0; i < kMaxIterations; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEps) break;
  }
  return sum * prefactor(a, x);
}

double upper_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return prefactor(a, x) * h;
}

}  // namespace

double igamc(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) throw std::domain_error("igamc: need a > 0 and x >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - lower_series(a, x);
  return upper_fraction(a, x);
}

double erfc(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.0) return 2.0 - erfc(-x);
  return igamc(0.5, x * x);
}

double normal_cdf(double z) { return 0.5 * erfc(-z / std::numbers::sqrt2); }

double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  if (lambda < 1.18) {
    // Jacobi theta form of the lower tail, converges fast for small lambda.
    const double w = pi2 / (8.0 * lambda * lambda);
    double lower = 0.0;
    for (int j = 1; j < 100; j += 2) {
      const double term = std::exp(-j * j * w);
      lower += term;
      if (term < kEps * lower) break;
    }
    lower *= std::sqrt(2.0 * std::numbers::pi) / lambda;
    return std::clamp(1.0 - lower, 0.0, 1.0);
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j < 100; ++j, sign = -sign) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += sign * term;
    if (term < kEps * std::fabs(sum)) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace dichogen::special
