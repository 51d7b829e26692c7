// SPDX-License-Identifier: Apache-2.0
#ifndef PHOTOSTAT_COUNT_PMF_HPP
#define PHOTOSTAT_COUNT_PMF_HPP

#include <stdexcept>
#include <vector>

#include "photostat/bsv.hpp"
#include "photostat/grid.hpp"

namespace photostat {

/// Probability mass function on counts 0..k_max. probs and log10_probs
/// share the support; mass beyond k_max is carried in truncation_mass so
/// probs + truncation always account for 1.
struct CountPmf {
    std::vector<double> probs;
    std::vector<double> log10_probs;
    double truncation_mass = 0.0;

    int k_max() const { return static_cast<int>(probs.size()) - 1; }
    double total() const;
    double mean() const;
    double variance() const;
    /// log10 P(K >= k) over the stored support; -inf when empty.
    double log10_survival(int k) const;

    /// Throws unless entries are non-negative, sum(probs) <= 1 + 1e-9,
    /// and truncation_mass + sum(probs) = 1 within 1e-9.
    void validate() const;
};

/// Raised when a requested k_max cannot capture enough probability mass.
class TruncationError : public std::runtime_error {
  public:
    TruncationError(const std::string& what, double captured)
        : std::runtime_error(what), captured_mass(captured) {}
    double captured_mass;
};

CountPmf poisson_pmf(double mu, int k_max);

/// Mixed-Poisson counts for one mode: P(k) = int Poisson(k; lambda)
/// rho(lambda) dlambda with rho the order-n density of mean
/// `mean_electrons`, integrated in the half-normal coordinate where the
/// density is smooth. No mass-capture threshold is enforced here; the
/// shortfall lands in truncation_mass.
CountPmf single_mode_electron_pmf(double mean_electrons, NonlinearityOrder order,
                                  int k_max);
CountPmf single_mode_electron_pmf_serial(double mean_electrons,
                                         NonlinearityOrder order, int k_max);

/// Counts from m independent modes sharing mean_electrons equally: the
/// m-fold discrete self-convolution of the single-mode pmf at mean/m
/// (sums of independent mixed-Poisson variables mix the summed rate).
/// Throws TruncationError when the captured mass falls below 1 - 1e-6.
CountPmf electron_count_pmf(double mean_electrons, NonlinearityOrder order,
                            int mode_count, int k_max);

/// Generic bridge from an already-discretized rate density; a density
/// concentrated on one grid point reproduces Poisson exactly.
CountPmf mixed_poisson_pmf(const DiscretizedDensity& rate_density, int k_max);

/// Alternative overlay mode: aggregates rate-density mass into unit bins
/// [k - 1/2, k + 1/2) instead of Poisson mixing.
CountPmf density_bin_pmf(const DiscretizedDensity& rate_density, int k_max);

/// Convolution with Poisson(poisson_mean) on the support of base,
/// renormalized over that shared support.
CountPmf admixture_pmf(const CountPmf& base, double poisson_mean);

/// emitters-fold discrete self-convolution; mean scales by `emitters`.
CountPmf k_emitter_pmf(const CountPmf& single_emitter, int emitters);

/// Exact lower-triangular discrete convolution truncated to the longer
/// input's support.
CountPmf convolve_pmf(const CountPmf& a, const CountPmf& b);

/// Total-variation distance, absent entries treated as zero mass.
double tv_distance(const CountPmf& a, const CountPmf& b);

}  // namespace photostat

#endif
