// SPDX-License-Identifier: Apache-2.0
#ifndef PHOTOSTAT_OPTICS_HPP
#define PHOTOSTAT_OPTICS_HPP

#include <cmath>
#include <stdexcept>

namespace photostat {

struct OpticsParams {
    double center_wavelength_nm = 1600.0;
    double bandwidth_fwhm_nm = 50.0;
    double gdd_fs2 = 0.0;  // signed
    double pulse_fwhm_fs = 13.0;
};

/// tau_c = lambda^2 / (c * dlambda), no pulse-shape factor. With a
/// Gaussian shape factor the result would be ~12% smaller; callers
/// comparing against shaped conventions should expect that offset.
inline double coherence_time_fs(double center_wavelength_nm,
                                double bandwidth_fwhm_nm) {
    if (!(center_wavelength_nm > 0.0) || !(bandwidth_fwhm_nm > 0.0)) {
        throw std::domain_error("wavelength and bandwidth must be positive");
    }
    constexpr double c_nm_per_fs = 299.792458;
    return center_wavelength_nm * center_wavelength_nm /
           (c_nm_per_fs * bandwidth_fwhm_nm);
}

inline double coherence_time_fs(const OpticsParams& p) {
    return coherence_time_fs(p.center_wavelength_nm, p.bandwidth_fwhm_nm);
}

/// Number of independent temporal modes inside a time window:
/// ceil(window / tau_c), never below 1.
inline int temporal_mode_count(double window_fs, double coherence_fs) {
    if (!(window_fs > 0.0) || !(coherence_fs > 0.0)) {
        throw std::domain_error("times must be positive");
    }
    const double ratio = window_fs / coherence_fs;
    const int m = static_cast<int>(std::ceil(ratio - 1e-12));
    return m < 1 ? 1 : m;
}

/// Temporal stretch factor of a transform-limited Gaussian pulse of
/// fwhm tau under group delay dispersion:
/// sqrt(1 + (4 ln2 |gdd| / tau^2)^2).
inline double gdd_broadening(double pulse_fwhm_fs, double gdd_fs2) {
    if (!(pulse_fwhm_fs > 0.0)) {
        throw std::domain_error("pulse fwhm must be positive");
    }
    const double x = 4.0 * M_LN2 * std::fabs(gdd_fs2) /
                     (pulse_fwhm_fs * pulse_fwhm_fs);
    return std::sqrt(1.0 + x * x);
}

inline double gdd_broadening(const OpticsParams& p) {
    return gdd_broadening(p.pulse_fwhm_fs, p.gdd_fs2);
}

}  // namespace photostat

#endif
