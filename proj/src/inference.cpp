// SPDX-License-Identifier: Apache-2.0
#include "photostat/inference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "photostat/special.hpp"

namespace photostat {
namespace {

constexpr double kProbFloor = 1e-300;

int initial_support(const CountHistogram& hist, double mean,
                    NonlinearityOrder n, int m) {
    // Union bound on the sum tail: m modes, per-mode survival tail_mass/m.
    const double per_mode = mean / static_cast<double>(m);
    const double upper =
        gamma_n_tail_quantile(5e-7 / static_cast<double>(m), per_mode, n);
    int k = 256;
    const int need = std::max(2 * hist.max_count(),
                              static_cast<int>(std::ceil(upper)));
    while (k < need && k < (1 << 20)) k <<= 1;
    return k;
}

double objective_for_m(const CountHistogram& hist, double mean,
                       NonlinearityOrder n, int m) {
    int k_max = initial_support(hist, mean, n, m);
    CountPmf pmf;
    for (;;) {
        try {
            pmf = electron_count_pmf(mean, n, m, k_max);
            break;
        } catch (const TruncationError&) {
            if (k_max >= (1 << 20)) throw;
            k_max <<= 1;
        }
    }
    double nll = 0.0;
    for (const auto& [k, f] : hist.counts) {
        const double p =
            k <= pmf.k_max() ? std::max(pmf.probs[k], kProbFloor) : kProbFloor;
        nll -= static_cast<double>(f) * std::log(p);
    }
    return nll;
}

ModeFit estimate_impl(const CountHistogram& hist, NonlinearityOrder n,
                      int m_lo, int m_hi, bool parallel) {
    if (m_lo < 1 || m_hi < m_lo) {
        throw std::domain_error("mode range must satisfy 1 <= m_lo <= m_hi");
    }
    hist.validate();
    const double mean = hist.mean();
    if (!(mean > 0.0)) throw std::domain_error("histogram mean must be positive");

    const int count = m_hi - m_lo + 1;
    std::vector<double> obj(static_cast<std::size_t>(count));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (int i = 0; i < count; ++i) {
        obj[i] = objective_for_m(hist, mean, n, m_lo + i);
    }
    (void)parallel;

    int best = -1;
    for (int i = 0; i < count; ++i) {
        if (!std::isfinite(obj[i])) continue;
        if (best < 0 || obj[i] < obj[best]) best = i;
    }
    if (best < 0) {
        throw std::runtime_error("no finite objective in the mode range");
    }

    ModeFit fit;
    fit.m_hat = m_lo + best;
    fit.objective = obj[best];
    fit.ci_low = fit.m_hat;
    fit.ci_high = fit.m_hat;
    const double cutoff = obj[best] + 0.5;
    for (int i = 0; i < count; ++i) {
        if (std::isfinite(obj[i]) && obj[i] <= cutoff) {
            fit.ci_low = std::min(fit.ci_low, m_lo + i);
            fit.ci_high = std::max(fit.ci_high, m_lo + i);
        }
    }
    fit.profile.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) fit.profile.emplace_back(m_lo + i, obj[i]);
    return fit;
}

}  // namespace

PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) {
        throw std::domain_error("need at least three points");
    }
    const double n = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& [e, mu] : points) {
        if (!(e > 0.0) || !(mu > 0.0)) {
            throw std::domain_error("points must be strictly positive");
        }
        sx += std::log(e);
        sy += std::log(mu);
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [e, mu] : points) {
        const double dx = std::log(e) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(mu) - my);
    }
    if (!(sxx > 0.0)) throw std::domain_error("energies must not be all equal");

    PowerLawFit fit;
    fit.exponent = sxy / sxx;
    fit.amplitude = my - fit.exponent * mx;
    double rss = 0.0;
    for (const auto& [e, mu] : points) {
        const double r =
            std::log(mu) - (fit.amplitude + fit.exponent * std::log(e));
        rss += r * r;
    }
    const double s2 = rss / (n - 2.0);
    fit.exponent_sigma = std::max(std::sqrt(s2 / sxx), 1e-15);
    return fit;
}

ModeFit estimate_mode_count(const CountHistogram& hist, NonlinearityOrder n,
                            int m_lo, int m_hi) {
    return estimate_impl(hist, n, m_lo, m_hi, true);
}

ModeFit estimate_mode_count_serial(const CountHistogram& hist,
                                   NonlinearityOrder n, int m_lo, int m_hi) {
    return estimate_impl(hist, n, m_lo, m_hi, false);
}

double histogram_chi_square(const CountHistogram& hist, const CountPmf& model,
                            double min_expected) {
    hist.validate();
    const double total = static_cast<double>(hist.total_pulses);
    const int k_top = std::max(hist.max_count(), model.k_max());
    double chi2 = 0.0;
    double grp_exp = 0.0;
    double grp_obs = 0.0;
    bool have_open_group = false;
    for (int k = 0; k <= k_top; ++k) {
        const double p = k <= model.k_max() ? model.probs[k] : 0.0;
        const auto it = hist.counts.find(k);
        grp_exp += total * p;
        grp_obs += it != hist.counts.end() ? static_cast<double>(it->second) : 0.0;
        have_open_group = true;
        if (grp_exp >= min_expected) {
            const double d = grp_obs - grp_exp;
            chi2 += d * d / grp_exp;
            grp_exp = 0.0;
            grp_obs = 0.0;
            have_open_group = false;
        }
    }
    if (have_open_group && grp_exp > 0.0) {
        const double d = grp_obs - grp_exp;
        chi2 += d * d / grp_exp;
    }
    return chi2;
}

double fano_factor(const CountHistogram& hist) {
    const double mu = hist.mean();
    if (!(mu > 0.0)) throw std::domain_error("histogram mean is zero");
    return hist.variance() / mu;
}

double extreme_event_log_probability(const CountHistogram& hist, int k) {
    return poisson_log_pmf(k, hist.mean());
}

double extreme_event_log_probability(const CountPmf& model, int k) {
    return model.log10_survival(k);
}

}  // namespace photostat
