// SPDX-License-Identifier: Apache-2.0
#include "photostat/count_pmf.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "photostat/detail/quadrature.hpp"
#include "photostat/fft.hpp"
#include "photostat/special.hpp"

namespace photostat {
namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014327;

// Poisson(j; lambda) for j in [k_lo, k_hi], written to out[j - k_lo].
// Upward recursion from a log-domain anchor at the band edge; bands are
// cut at ~10 sigma so the anchor never underflows.
void poisson_row(double lambda, int k_lo, int k_hi, double* out) {
    if (lambda == 0.0) {
        for (int j = k_lo; j <= k_hi; ++j) out[j - k_lo] = (j == 0) ? 1.0 : 0.0;
        return;
    }
    // Find the first entry whose log-probability is representable and
    // anchor the recursion there; entries before it are genuinely below
    // the double range and stay zero.
    const double ll = std::log(lambda);
    int anchor = k_lo;
    double lp = -lambda + static_cast<double>(k_lo) * ll -
                std::lgamma(static_cast<double>(k_lo) + 1.0);
    while (lp <= -740.0 && anchor < k_hi) {
        out[anchor - k_lo] = 0.0;
        ++anchor;
        lp = -lambda + static_cast<double>(anchor) * ll -
             std::lgamma(static_cast<double>(anchor) + 1.0);
    }
    double p = std::exp(lp);
    out[anchor - k_lo] = p;
    for (int j = anchor + 1; j <= k_hi; ++j) {
        p *= lambda / static_cast<double>(j);
        out[j - k_lo] = p;
    }
}

// Full row 0..k_max that stays finite for any lambda: recursion below
// the underflow knee, per-entry log evaluation above it.
void poisson_row_full(double lambda, int k_max, double weight, double* acc) {
    if (lambda <= 700.0) {
        std::vector<double> row(static_cast<std::size_t>(k_max) + 1);
        poisson_row(lambda, 0, k_max, row.data());
        for (int j = 0; j <= k_max; ++j) acc[j] += weight * row[j];
        return;
    }
    const double ll = std::log(lambda);
    for (int j = 0; j <= k_max; ++j) {
        const double lp = -lambda + static_cast<double>(j) * ll -
                          std::lgamma(static_cast<double>(j) + 1.0);
        if (lp > -745.0) acc[j] += weight * std::exp(lp);
    }
}

void fill_log10(CountPmf& pmf) {
    pmf.log10_probs.resize(pmf.probs.size());
    for (std::size_t i = 0; i < pmf.probs.size(); ++i) {
        pmf.log10_probs[i] =
            pmf.probs[i] > 0.0 ? std::log10(pmf.probs[i]) : -HUGE_VAL;
    }
}

void finalize(CountPmf& pmf) {
    double s = 0.0;
    for (double p : pmf.probs) s += p;
    pmf.truncation_mass = std::max(0.0, 1.0 - s);
    fill_log10(pmf);
}

// In-place m-fold self-convolution of a pmf on 0..k_max. Direct repeated
// squaring below the transform cutover, frequency-domain power above it.
// Truncation to k_max is exact for the kept entries either way: counts
// are non-negative, so P_sum(k) only involves lower indices.
void self_convolve_pow(std::vector<double>& probs, int m) {
    const std::size_t size = probs.size();
    if (m == 1 || size == 0) return;

    if (size <= 1024) {
        std::vector<double> result(size, 0.0);
        result[0] = 1.0;
        std::vector<double> base = probs;
        std::vector<double> scratch(size);
        int e = m;
        auto mul = [&](const std::vector<double>& a, const std::vector<double>& b,
                       std::vector<double>& dst) {
            std::fill(dst.begin(), dst.end(), 0.0);
            for (std::size_t i = 0; i < size; ++i) {
                const double ai = a[i];
                if (ai == 0.0) continue;
                for (std::size_t j = 0; i + j < size; ++j) {
                    dst[i + j] += ai * b[j];
                }
            }
        };
        while (e > 0) {
            if (e & 1) {
                mul(result, base, scratch);
                result.swap(scratch);
            }
            e >>= 1;
            if (e > 0) {
                mul(base, base, scratch);
                base.swap(scratch);
            }
        }
        probs = std::move(result);
        return;
    }

    const std::size_t padded = next_pow2(2 * size);
    std::vector<std::complex<double>> spec(padded);
    for (std::size_t i = 0; i < size; ++i) spec[i] = probs[i];
    fft_radix2(spec, false);
    for (auto& h : spec) {
        const double r = std::abs(h);
        if (r == 0.0) continue;
        const double arg = std::arg(h);
        const double rm = std::pow(r, static_cast<double>(m));
        const double am = arg * static_cast<double>(m);
        h = std::complex<double>(rm * std::cos(am), rm * std::sin(am));
    }
    fft_radix2(spec, true);
    for (std::size_t i = 0; i < size; ++i) {
        probs[i] = std::max(0.0, spec[i].real());
    }
}

struct Panel {
    double a;
    double b;
};

// Sum of independent per-mode Poisson draws mixes the summed rate, so
// the single-mode pmf is the only quadrature ever needed; panels follow
// the local feature scale of Poisson(k; lambda(z)) along z.
CountPmf single_mode_impl(double mean, NonlinearityOrder order, int k_max,
                          bool parallel) {
    if (!(mean > 0.0)) throw std::domain_error("mean must be positive");
    if (k_max < 0) throw std::domain_error("k_max must be >= 0");

    const int n = order.n;
    const double lambda_cap =
        static_cast<double>(k_max) + 12.0 * std::sqrt(k_max + 1.0) + 60.0;
    const double z_cap = gamma_n_z(lambda_cap, mean, order);
    const double z_hi = std::min(9.5, z_cap);

    std::vector<Panel> panels;
    double z = 0.0;
    while (z < z_hi) {
        const double lam = gamma_n_from_z(std::max(z, 1e-6), mean, order);
        double w = 0.35 * std::max(z, 0.05) /
                   (2.0 * n * std::sqrt(std::max(lam, 1.0)));
        w = std::min(std::max(w, 5e-4), 0.1);
        const double b = std::min(z + w, z_hi);
        panels.push_back({z, b});
        z = b;
    }

    const std::size_t chunk_size = 32;
    const std::size_t num_chunks = (panels.size() + chunk_size - 1) / chunk_size;
    std::vector<std::vector<double>> partial(num_chunks);

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (std::size_t c = 0; c < num_chunks; ++c) {
        std::vector<double> acc(static_cast<std::size_t>(k_max) + 1, 0.0);
        std::vector<double> row(static_cast<std::size_t>(k_max) + 1);
        const std::size_t first = c * chunk_size;
        const std::size_t last = std::min(first + chunk_size, panels.size());
        for (std::size_t p = first; p < last; ++p) {
            const double mid = 0.5 * (panels[p].a + panels[p].b);
            const double half = 0.5 * (panels[p].b - panels[p].a);
            for (std::size_t i = 0; i < detail::gl16_x.size(); ++i) {
                for (int sgn = -1; sgn <= 1; sgn += 2) {
                    const double zn = mid + sgn * half * detail::gl16_x[i];
                    const double lam = gamma_n_from_z(zn, mean, order);
                    const double wgt = detail::gl16_w[i] * half * 2.0 *
                                       kInvSqrt2Pi * std::exp(-0.5 * zn * zn);
                    const double sd = std::sqrt(lam);
                    const int k_lo = std::max(
                        0, static_cast<int>(std::floor(lam - 10.0 * sd - 30.0)));
                    const int k_hi = std::min(
                        k_max, static_cast<int>(std::ceil(lam + 10.0 * sd + 30.0)));
                    if (k_lo > k_hi) continue;
                    poisson_row(lam, k_lo, k_hi, row.data());
                    for (int k = k_lo; k <= k_hi; ++k) {
                        acc[k] += wgt * row[k - k_lo];
                    }
                }
            }
        }
        partial[c] = std::move(acc);
    }
    (void)parallel;

    CountPmf out;
    out.probs.assign(static_cast<std::size_t>(k_max) + 1, 0.0);
    for (std::size_t c = 0; c < num_chunks; ++c) {
        for (int k = 0; k <= k_max; ++k) out.probs[k] += partial[c][k];
    }
    finalize(out);
    return out;
}

}  // namespace

double CountPmf::total() const {
    double s = 0.0;
    for (double p : probs) s += p;
    return s;
}

double CountPmf::mean() const {
    double s = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        s += static_cast<double>(k) * probs[k];
    }
    return s;
}

double CountPmf::variance() const {
    const double mu = mean();
    double s2 = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        const double d = static_cast<double>(k);
        s2 += d * d * probs[k];
    }
    return s2 - mu * mu;
}

double CountPmf::log10_survival(int k) const {
    const int lo = std::max(k, 0);
    double s = 0.0;
    for (int j = k_max(); j >= lo; --j) s += probs[j];
    return s > 0.0 ? std::log10(s) : -HUGE_VAL;
}

void CountPmf::validate() const {
    if (probs.size() != log10_probs.size()) {
        throw std::runtime_error("probs/log10_probs size mismatch");
    }
    double s = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw std::runtime_error("pmf entry negative or non-finite");
        }
        s += p;
    }
    if (s > 1.0 + 1e-9) throw std::runtime_error("pmf mass exceeds 1");
    if (std::fabs(s + truncation_mass - 1.0) > 1e-9) {
        throw std::runtime_error("pmf mass + truncation does not account for 1");
    }
}

CountPmf poisson_pmf(double mu, int k_max) {
    if (!(mu >= 0.0)) throw std::domain_error("mu must be non-negative");
    if (k_max < 0) throw std::domain_error("k_max must be >= 0");
    CountPmf out;
    out.probs.assign(static_cast<std::size_t>(k_max) + 1, 0.0);
    poisson_row_full(mu, k_max, 1.0, out.probs.data());
    finalize(out);
    return out;
}

CountPmf single_mode_electron_pmf(double mean_electrons, NonlinearityOrder order,
                                  int k_max) {
    return single_mode_impl(mean_electrons, order, k_max, true);
}

CountPmf single_mode_electron_pmf_serial(double mean_electrons,
                                         NonlinearityOrder order, int k_max) {
    return single_mode_impl(mean_electrons, order, k_max, false);
}

CountPmf electron_count_pmf(double mean_electrons, NonlinearityOrder order,
                            int mode_count, int k_max) {
    if (mode_count < 1) throw std::domain_error("mode_count must be >= 1");
    const double per_mode = mean_electrons / static_cast<double>(mode_count);
    CountPmf out = single_mode_electron_pmf(per_mode, order, k_max);
    self_convolve_pow(out.probs, mode_count);
    finalize(out);
    const double captured = out.total();
    if (captured < 1.0 - 1e-6) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "k_max=%d captures mass %.9f < 1 - 1e-6 "
                      "(mean=%.6g, n=%d, m=%d)",
                      k_max, captured, mean_electrons, order.n, mode_count);
        throw TruncationError(buf, captured);
    }
    return out;
}

CountPmf mixed_poisson_pmf(const DiscretizedDensity& rate_density, int k_max) {
    if (k_max < 0) throw std::domain_error("k_max must be >= 0");
    rate_density.validate(1e-6);
    const double lambda_cap =
        static_cast<double>(k_max) + 12.0 * std::sqrt(k_max + 1.0) + 60.0;
    CountPmf out;
    out.probs.assign(static_cast<std::size_t>(k_max) + 1, 0.0);
    for (std::size_t i = 0; i < rate_density.size(); ++i) {
        const double w = rate_density.mass[i];
        if (w == 0.0) continue;
        const double lam = rate_density.grid[i];
        if (lam > lambda_cap) continue;  // all of its mass lands past k_max
        poisson_row_full(lam, k_max, w, out.probs.data());
    }
    finalize(out);
    return out;
}

CountPmf density_bin_pmf(const DiscretizedDensity& rate_density, int k_max) {
    if (k_max < 0) throw std::domain_error("k_max must be >= 0");
    rate_density.validate(1e-6);
    CountPmf out;
    out.probs.assign(static_cast<std::size_t>(k_max) + 1, 0.0);
    for (std::size_t i = 0; i < rate_density.size(); ++i) {
        const long long k = std::llround(rate_density.grid[i]);
        if (k >= 0 && k <= k_max) {
            out.probs[static_cast<std::size_t>(k)] += rate_density.mass[i];
        }
    }
    finalize(out);
    return out;
}

CountPmf admixture_pmf(const CountPmf& base, double poisson_mean) {
    if (!(poisson_mean >= 0.0)) {
        throw std::domain_error("poisson_mean must be non-negative");
    }
    if (poisson_mean == 0.0) return base;
    const int k_max = base.k_max();
    const int band = std::min(
        k_max, static_cast<int>(
                   std::ceil(poisson_mean + 10.0 * std::sqrt(poisson_mean) + 30.0)));
    std::vector<double> row(static_cast<std::size_t>(band) + 1);
    poisson_row(poisson_mean, 0, band, row.data());

    CountPmf out;
    out.probs.assign(static_cast<std::size_t>(k_max) + 1, 0.0);
    for (int j = 0; j <= k_max; ++j) {
        const double bj = base.probs[j];
        if (bj == 0.0) continue;
        const int d_hi = std::min(band, k_max - j);
        for (int d = 0; d <= d_hi; ++d) {
            out.probs[j + d] += bj * row[d];
        }
    }
    const double s = out.total();
    if (!(s > 0.0)) throw std::runtime_error("admixture left no mass on support");
    for (double& p : out.probs) p /= s;
    finalize(out);
    return out;
}

CountPmf k_emitter_pmf(const CountPmf& single_emitter, int emitters) {
    if (emitters < 1) throw std::domain_error("emitters must be >= 1");
    if (emitters == 1) return single_emitter;
    CountPmf out;
    out.probs = single_emitter.probs;
    self_convolve_pow(out.probs, emitters);
    finalize(out);
    return out;
}

CountPmf convolve_pmf(const CountPmf& a, const CountPmf& b) {
    const std::size_t size = std::max(a.probs.size(), b.probs.size());
    CountPmf out;
    out.probs.assign(size, 0.0);
    for (std::size_t i = 0; i < a.probs.size(); ++i) {
        const double ai = a.probs[i];
        if (ai == 0.0) continue;
        const std::size_t j_hi = std::min(b.probs.size(), size - i);
        for (std::size_t j = 0; j < j_hi; ++j) {
            out.probs[i + j] += ai * b.probs[j];
        }
    }
    finalize(out);
    return out;
}

double tv_distance(const CountPmf& a, const CountPmf& b) {
    const std::size_t size = std::max(a.probs.size(), b.probs.size());
    double d = 0.0;
    for (std::size_t k = 0; k < size; ++k) {
        const double pa = k < a.probs.size() ? a.probs[k] : 0.0;
        const double pb = k < b.probs.size() ? b.probs[k] : 0.0;
        d += std::fabs(pa - pb);
    }
    return 0.5 * d;
}

}  // namespace photostat
