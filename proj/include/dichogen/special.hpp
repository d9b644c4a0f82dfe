#pragma once

// Special functions behind the p-values.

namespace dichogen::special {

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
///
/// Uses the power series for P(a, x) when x < a + 1 and a modified Lentz
/// evaluation of the continued fraction for Q(a, x) otherwise. Throws
/// std::domain_error for a <= 0 or x < 0.
double igamc(double a, double x);

/// Complementary error function, computed as Q(1/2, x^2) for x >= 0 and
/// 2 - erfc(-x) below zero.
double erfc(double x);

/// Standard normal distribution function.
double normal_cdf(double z);

/// Upper tail of the limiting Kolmogorov distribution,
/// Q(l) = 2 sum_{j>=1} (-1)^(j-1) exp(-2 j^2 l^2).
double kolmogorov_q(double lambda);

}  // namespace dichogen::special
