// SPDX-License-Identifier: Apache-2.0
#ifndef PHOTOSTAT_EMISSION_HPP
#define PHOTOSTAT_EMISSION_HPP

#include <cstdint>
#include <vector>

#include "photostat/histogram.hpp"
#include "photostat/rng.hpp"

namespace photostat {

enum class SourceKind { coherent, bsv };

struct PhotonSource {
    SourceKind kind = SourceKind::coherent;
    double mean_photons = 1.0;
    int mode_count = 1;  // ignored for coherent sources

    /// Effective mode count: 1 for coherent regardless of mode_count.
    int effective_modes() const;
    void validate() const;
};

struct EmissionConfig {
    /// Photon order of the emission law. Real-valued exponents are
    /// accepted for coherent sources (fitted slopes are not integers);
    /// BSV rates need the (2n-1)!! normalization and therefore require
    /// an integer order in 1..12.
    double nonlinearity = 4.0;
    double coupling = 1.0;  // mean electrons/pulse at the reference energy
    double efficiency = 1.0;
    double background_mean = 0.0;

    void validate() const;
};

struct SweepConfig {
    std::vector<double> pulse_energies;
    long long pulses_per_point = 10000;
    double reference_energy = 1.0;
    std::uint64_t seed = 0;

    void validate() const;
};

struct PulseRecord {
    long long pulse_index = 0;
    double intensity_weight = 0.0;
    long long electron_count = 0;
};

struct SweepPoint {
    double energy = 0.0;
    CountHistogram histogram;
    double mean_count = 0.0;
};

/// One squared-normal intensity weight per mode (each mode's photon
/// number is mean * z^2 in law); empty for coherent sources.
std::vector<double> sample_mode_weights(const PhotonSource& source, Rng& rng);

/// W = (1/m) * sum_j z_j^2 with E[W] = 1; exactly 1 for coherent light.
double sample_intensity_weight(const PhotonSource& source, Rng& rng);

/// Expected electron rate for one pulse. Coherent:
/// lambda = c (E/Eref)^n. BSV: per-mode composition
/// lambda = sum_j (c/m) (E/Eref)^n w_j^n / (2n-1)!!, whose expectation
/// over w_j = z_j^2 is again c (E/Eref)^n.
double emission_rate(const PhotonSource& source,
                     const std::vector<double>& mode_weights, double energy,
                     const EmissionConfig& config, double reference_energy);

/// Draws one pulse: Poisson(efficiency * lambda) signal plus an
/// independent Poisson background.
PulseRecord simulate_pulse(const PhotonSource& source, double energy,
                           const EmissionConfig& config,
                           double reference_energy, long long pulse_index,
                           Rng& rng);

/// Energy sweep with a per-pulse counter-based generator, so results are
/// identical for any execution order or thread count.
std::vector<SweepPoint> run_sweep(const PhotonSource& source,
                                  const SweepConfig& sweep,
                                  const EmissionConfig& config);
std::vector<SweepPoint> run_sweep_serial(const PhotonSource& source,
                                         const SweepConfig& sweep,
                                         const EmissionConfig& config);

}  // namespace photostat

#endif
