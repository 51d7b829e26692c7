// SPDX-License-Identifier: Apache-2.0
#ifndef PHOTOSTAT_INFERENCE_HPP
#define PHOTOSTAT_INFERENCE_HPP

#include <utility>
#include <vector>

#include "photostat/histogram.hpp"

namespace photostat {

struct PowerLawFit {
    double exponent = 0.0;
    double exponent_sigma = 0.0;
    double amplitude = 0.0;  // intercept in the log-log plane
};

struct ModeFit {
    int m_hat = 1;
    int ci_low = 1;
    int ci_high = 1;
    double objective = 0.0;  // negative log-likelihood at m_hat
    std::vector<std::pair<int, double>> profile;
};

/// Ordinary least squares on (log E, log mu); slope is the recovered
/// order, sigma comes from the residual variance. Needs >= 3 strictly
/// positive points.
PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points);

/// Integer grid search over mode counts: for each m the model pmf is
/// built at the histogram mean, scored by multinomial negative
/// log-likelihood, and the half-unit likelihood-ratio set around the
/// minimum gives the interval. The pmf support grows automatically
/// until at most 1e-6 of model mass is beyond it.
ModeFit estimate_mode_count(const CountHistogram& hist, NonlinearityOrder n,
                            int m_lo, int m_hi);
ModeFit estimate_mode_count_serial(const CountHistogram& hist,
                                   NonlinearityOrder n, int m_lo, int m_hi);

/// Pearson chi-square of the histogram against a model pmf, pooling
/// model bins with expected frequency below min_expected into their
/// neighbors. Alternative agreement score to the likelihood objective.
double histogram_chi_square(const CountHistogram& hist, const CountPmf& model,
                            double min_expected = 5.0);

/// Sample variance over sample mean.
double fano_factor(const CountHistogram& hist);

/// Poisson benchmark at the histogram mean: log10 of the pmf at k.
double extreme_event_log_probability(const CountHistogram& hist, int k);
/// Model tail: log10 P(K >= k) under the pmf.
double extreme_event_log_probability(const CountPmf& model, int k);

}  // namespace photostat

#endif
