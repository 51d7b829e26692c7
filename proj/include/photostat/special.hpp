// SPDX-License-Identifier: Apache-2.0
#ifndef PHOTOSTAT_SPECIAL_HPP
#define PHOTOSTAT_SPECIAL_HPP

#include <cstdint>

namespace photostat {

/// Double factorial k!! = k (k-2) (k-4) ... for odd k, with (-1)!! = 1.
/// Throws std::domain_error for even k or k < -1. Exact up to k = 33
/// ((2n-1)!! for photon orders n <= 17 fits in int64).
std::int64_t double_factorial(int k);

/// ln(k!!) for odd k >= -1, computed via lgamma so large orders do not
/// overflow.
double log_double_factorial(int k);

/// log10 of the Poisson pmf e^{-mu} mu^k / k!, evaluated entirely in the
/// log domain. mu = 0 is exact: 0 for k = 0, -inf otherwise.
double poisson_log_pmf(std::int64_t k, double mu);

/// Natural-log Poisson pmf, same conventions as poisson_log_pmf.
double poisson_ln_pmf(std::int64_t k, double mu);

/// Regularized lower incomplete gamma P(a, x); series for x < a + 1,
/// Lentz continued fraction otherwise.
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// CDF of the Gamma(shape, scale) distribution.
double gamma_cdf(double x, double shape, double scale);

/// Survival probability of chi-square with dof degrees of freedom.
double chi_square_sf(double x, double dof);

/// Solves erfc(z / sqrt(2)) = p for z >= 0, i.e. the upper quantile of
/// |Z| for a standard normal. Monotone bisection; p in (0, 1].
double standard_normal_tail_quantile(double p);

}  // namespace photostat

#endif
