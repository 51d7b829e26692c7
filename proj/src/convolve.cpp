// SPDX-License-Identifier: Apache-2.0
#include "photostat/convolve.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "photostat/fft.hpp"
#include "photostat/special.hpp"

namespace photostat {

double suggested_lattice_upper(double total_mean, NonlinearityOrder order,
                               int modes, double tail_mass) {
    if (modes < 1) throw std::domain_error("modes must be >= 1");
    if (!(tail_mass > 0.0 && tail_mass < 1.0)) {
        throw std::domain_error("tail_mass must lie in (0, 1)");
    }
    const double m = static_cast<double>(modes);
    const double per_mode = total_mean / m;
    // The sum exceeds a high edge either through one extreme mode or
    // through a coordinated excursion of the bulk. Budget half the tail
    // to a single jump (union bound over modes) and half to a Gaussian
    // slack on the remaining m - 1 modes.
    const double jump =
        gamma_n_tail_quantile(0.5 * tail_mass / m, per_mode, order);
    const double rest_mean = (m - 1.0) * per_mode;
    const double var1 =
        gamma_n_moment(2, per_mode, order) - per_mode * per_mode;
    const double rest_sd = std::sqrt((m - 1.0) * var1);
    const double slack =
        standard_normal_tail_quantile(0.5 * tail_mass) * rest_sd;
    return jump + rest_mean + slack;
}

DiscretizedDensity convolve_modes(const DiscretizedDensity& single_mode,
                                  int m, double total_mean) {
    if (single_mode.kind != GridKind::linear) {
        throw std::invalid_argument("convolve_modes needs a linear lattice");
    }
    if (m < 1) throw std::domain_error("mode count must be >= 1");
    if (!(total_mean > 0.0)) throw std::domain_error("total_mean must be positive");

    const double per_mode = total_mean / static_cast<double>(m);
    const double in_mean = single_mode.mean();
    if (std::fabs(in_mean - per_mode) > 0.05 * per_mode) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "lattice mean %.6g inconsistent with total_mean/m = %.6g",
                      in_mean, per_mode);
        throw std::invalid_argument(buf);
    }
    if (m == 1) return single_mode;

    const std::size_t k = single_mode.size();
    const std::size_t padded = next_pow2(2 * k);
    std::vector<std::complex<double>> spec(padded);
    for (std::size_t i = 0; i < k; ++i) spec[i] = single_mode.mass[i];

    fft_radix2(spec, false);
    // H^m per frequency bin in polar form; |H| <= total input mass so the
    // power stays bounded for any m.
    for (auto& h : spec) {
        const double r = std::abs(h);
        if (r == 0.0) continue;
        const double arg = std::arg(h);
        const double rm = std::pow(r, static_cast<double>(m));
        const double am = arg * static_cast<double>(m);
        h = std::complex<double>(rm * std::cos(am), rm * std::sin(am));
    }
    fft_radix2(spec, true);

    double full_sum = 0.0;
    for (const auto& v : spec) full_sum += v.real();
    const double expected = std::pow(single_mode.total_mass(),
                                     static_cast<double>(m));
    const double drift = std::fabs(full_sum - expected);
    if (drift > 1e-4) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "transform normalization drift %.3e (m=%d, K=%zu, "
                      "round-trip mass %.12g vs %.12g)",
                      drift, m, k, full_sum, expected);
        throw std::runtime_error(buf);
    }

    DiscretizedDensity out;
    out.kind = GridKind::linear;
    out.grid = single_mode.grid;
    out.mass.resize(k);
    double kept = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double v = std::max(0.0, spec[i].real());
        out.mass[i] = v;
        kept += v;
    }
    out.truncated_tail_mass = std::max(0.0, 1.0 - kept);
    return out;
}

}  // namespace photostat
