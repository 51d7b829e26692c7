// SPDX-License-Identifier: Apache-2.0
#include "photostat/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace photostat {

std::int64_t double_factorial(int k) {
    if (k < -1 || (k >= 0 && k % 2 == 0)) {
        throw std::domain_error("double_factorial: k must be odd and >= -1, got " +
                                std::to_string(k));
    }
    if (k <= 1) return 1;  // (-1)!! = 1!! = 1 by convention
    if (k > 33) {
        throw std::domain_error("double_factorial: k!! overflows int64 for k > 33");
    }
    std::int64_t p = 1;
    for (int j = k; j >= 3; j -= 2) p *= j;
    return p;
}

double log_double_factorial(int k) {
    if (k < -1 || (k >= 0 && k % 2 == 0)) {
        throw std::domain_error("log_double_factorial: k must be odd and >= -1");
    }
    if (k <= 1) return 0.0;
    // (2m-1)!! = (2m)! / (2^m m!)
    const double m = (k + 1) / 2.0;
    return std::lgamma(2.0 * m + 1.0) - m * std::log(2.0) - std::lgamma(m + 1.0);
}

double poisson_ln_pmf(std::int64_t k, double mu) {
    if (k < 0 || mu < 0.0 || std::isnan(mu)) {
        throw std::domain_error("poisson pmf: need k >= 0 and mu >= 0");
    }
    if (mu == 0.0) {
        return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    }
    const double kd = static_cast<double>(k);
    return -mu + kd * std::log(mu) - std::lgamma(kd + 1.0);
}

double poisson_log_pmf(std::int64_t k, double mu) {
    const double ln10 = std::log(10.0);
    const double lp = poisson_ln_pmf(k, mu);
    return std::isinf(lp) ? lp : lp / ln10;
}

namespace {

// Series expansion of P(a,x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz continued fraction for Q(a,x), valid for x >= a + 1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_p(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::domain_error("gamma_p: need a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::domain_error("gamma_q: need a > 0, x >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double gamma_cdf(double x, double shape, double scale) {
    if (shape <= 0.0 || scale <= 0.0) {
        throw std::domain_error("gamma_cdf: need shape > 0, scale > 0");
    }
    if (x <= 0.0) return 0.0;
    return gamma_p(shape, x / scale);
}

double chi_square_sf(double x, double dof) {
    return gamma_q(dof / 2.0, x / 2.0);
}

double standard_normal_tail_quantile(double p) {
    if (!(p > 0.0) || p > 1.0) {
        throw std::domain_error("standard_normal_tail_quantile: p must be in (0, 1]");
    }
    const double sqrt2 = std::sqrt(2.0);
    double lo = 0.0, hi = 40.0;  // erfc(40/sqrt2) ~ 1e-350, below any representable p
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (std::erfc(mid / sqrt2) > p) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-13 * (1.0 + hi)) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace photostat
