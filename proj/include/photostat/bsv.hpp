// SPDX-License-Identifier: Apache-2.0
#ifndef PHOTOSTAT_BSV_HPP
#define PHOTOSTAT_BSV_HPP

#include <cstdint>

namespace photostat {

/// Photon order of the emission process. Integer by construction; the
/// double factorial (2n-1)!! stays exactly representable for n <= 12.
struct NonlinearityOrder {
    int n;

    explicit NonlinearityOrder(int order);
    std::int64_t odd_double_factorial() const;  // (2n-1)!!
};

/// Per-pulse photon-number density of single-mode bright squeezed vacuum:
///   p(N) = (2 pi <N> N)^{-1/2} exp(-N / (2 <N>)),
/// the Gamma(1/2, 2<N>) law of <N> z^2 with z standard normal. Diverges
/// integrably as N -> 0+; N = 0 itself is a domain error.
double bsv_single_mode_density(double photon_number, double mean);

/// Intensity-power law driven by an n-photon process:
///   p_n(N) = ((2n-1)!!)^{1/(2n)} / (n sqrt(2 pi) <N>^{1/(2n)} N^{1-1/(2n)})
///            * exp(-((2n-1)!! N / <N>)^{1/n} / 2),
/// i.e. the law of <N> z^{2n} / (2n-1)!!. Collapses to the single-mode
/// density for n = 1. Normalized with mean exactly <N>.
double gamma_n_density(double value, double mean, NonlinearityOrder order);

/// Natural log of gamma_n_density; stable far into the stretched-
/// exponential tail.
double gamma_n_log_density(double value, double mean, NonlinearityOrder order);

/// Exact CDF via the half-normal map: F(x) = erf(z(x)/sqrt 2) with
/// z(x) = ((2n-1)!! x / <N>)^{1/(2n)}.
double gamma_n_cdf(double value, double mean, NonlinearityOrder order);

/// Survival function 1 - F, computed with erfc so deep tails keep
/// relative accuracy.
double gamma_n_survival(double value, double mean, NonlinearityOrder order);

/// Upper quantile: the x with survival(x) = tail_prob.
double gamma_n_tail_quantile(double tail_prob, double mean, NonlinearityOrder order);

/// r-th raw moment: <N>^r (2nr-1)!! / ((2n-1)!!)^r.
double gamma_n_moment(int r, double mean, NonlinearityOrder order);

/// Maps an intensity value to the half-normal coordinate z(x); z(0) = 0.
double gamma_n_z(double value, double mean, NonlinearityOrder order);

/// Inverse map: intensity at half-normal coordinate z.
double gamma_n_from_z(double z, double mean, NonlinearityOrder order);

}  // namespace photostat

#endif
