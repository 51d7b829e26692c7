// SPDX-License-Identifier: Apache-2.0
#include "photostat/emission.hpp"

#include <cmath>
#include <stdexcept>

#include "photostat/special.hpp"

namespace photostat {
namespace {

NonlinearityOrder bsv_order(double nonlinearity) {
    const double rounded = std::round(nonlinearity);
    if (std::fabs(nonlinearity - rounded) > 1e-9 || rounded < 1.0 ||
        rounded > 12.0) {
        throw std::domain_error(
            "BSV emission needs an integer nonlinearity in 1..12");
    }
    return NonlinearityOrder(static_cast<int>(rounded));
}

double int_pow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

SweepPoint sweep_one_energy(const PhotonSource& source,
                            const SweepConfig& sweep,
                            const EmissionConfig& config, std::size_t e_idx,
                            bool parallel) {
    SweepPoint point;
    point.energy = sweep.pulse_energies[e_idx];
#ifdef _OPENMP
#pragma omp parallel if (parallel)
#endif
    {
        CountHistogram local;
#ifdef _OPENMP
#pragma omp for schedule(static) nowait
#endif
        for (long long p = 0; p < sweep.pulses_per_point; ++p) {
            Rng rng = derive_rng(sweep.seed, e_idx, static_cast<std::uint64_t>(p));
            const PulseRecord rec =
                simulate_pulse(source, point.energy, config,
                               sweep.reference_energy, p, rng);
            local.add(static_cast<int>(rec.electron_count));
        }
#ifdef _OPENMP
#pragma omp critical
#endif
        point.histogram.merge(local);
    }
    (void)parallel;
    point.mean_count = point.histogram.mean();
    return point;
}

std::vector<SweepPoint> run_sweep_impl(const PhotonSource& source,
                                       const SweepConfig& sweep,
                                       const EmissionConfig& config,
                                       bool parallel) {
    source.validate();
    sweep.validate();
    config.validate();
    std::vector<SweepPoint> points;
    points.reserve(sweep.pulse_energies.size());
    for (std::size_t e = 0; e < sweep.pulse_energies.size(); ++e) {
        points.push_back(sweep_one_energy(source, sweep, config, e, parallel));
    }
    return points;
}

}  // namespace

int PhotonSource::effective_modes() const {
    return kind == SourceKind::coherent ? 1 : mode_count;
}

void PhotonSource::validate() const {
    if (!(mean_photons > 0.0)) {
        throw std::domain_error("mean_photons must be positive");
    }
    if (mode_count < 1) throw std::domain_error("mode_count must be >= 1");
}

void EmissionConfig::validate() const {
    if (!(nonlinearity > 0.0)) {
        throw std::domain_error("nonlinearity must be positive");
    }
    if (!(coupling >= 0.0)) throw std::domain_error("coupling must be >= 0");
    if (!(efficiency > 0.0 && efficiency <= 1.0)) {
        throw std::domain_error("efficiency must lie in (0, 1]");
    }
    if (!(background_mean >= 0.0)) {
        throw std::domain_error("background_mean must be >= 0");
    }
}

void SweepConfig::validate() const {
    if (pulse_energies.empty()) {
        throw std::domain_error("pulse_energies must be non-empty");
    }
    for (double e : pulse_energies) {
        if (!(e > 0.0)) throw std::domain_error("pulse energies must be positive");
    }
    if (pulses_per_point < 1) {
        throw std::domain_error("pulses_per_point must be >= 1");
    }
    if (!(reference_energy > 0.0)) {
        throw std::domain_error("reference_energy must be positive");
    }
}

std::vector<double> sample_mode_weights(const PhotonSource& source, Rng& rng) {
    if (source.kind == SourceKind::coherent) return {};
    std::vector<double> weights(static_cast<std::size_t>(source.mode_count));
    for (auto& w : weights) {
        const double z = rng.normal();
        w = z * z;
    }
    return weights;
}

double sample_intensity_weight(const PhotonSource& source, Rng& rng) {
    if (source.kind == SourceKind::coherent) return 1.0;
    const std::vector<double> weights = sample_mode_weights(source, rng);
    double s = 0.0;
    for (double w : weights) s += w;
    return s / static_cast<double>(weights.size());
}

double emission_rate(const PhotonSource& source,
                     const std::vector<double>& mode_weights, double energy,
                     const EmissionConfig& config, double reference_energy) {
    if (!(energy > 0.0) || !(reference_energy > 0.0)) {
        throw std::domain_error("energies must be positive");
    }
    const double scale =
        config.coupling * std::pow(energy / reference_energy, config.nonlinearity);
    if (source.kind == SourceKind::coherent) return scale;

    const NonlinearityOrder order = bsv_order(config.nonlinearity);
    if (mode_weights.size() != static_cast<std::size_t>(source.mode_count)) {
        throw std::invalid_argument("one weight per mode is required");
    }
    const double norm =
        static_cast<double>(order.odd_double_factorial()) *
        static_cast<double>(source.mode_count);
    double s = 0.0;
    for (double w : mode_weights) s += int_pow(w, order.n);
    return scale * s / norm;
}

PulseRecord simulate_pulse(const PhotonSource& source, double energy,
                           const EmissionConfig& config,
                           double reference_energy, long long pulse_index,
                           Rng& rng) {
    PulseRecord rec;
    rec.pulse_index = pulse_index;
    const std::vector<double> weights = sample_mode_weights(source, rng);
    if (source.kind == SourceKind::coherent) {
        rec.intensity_weight = 1.0;
    } else {
        double s = 0.0;
        for (double w : weights) s += w;
        rec.intensity_weight = s / static_cast<double>(weights.size());
    }
    const double lambda =
        emission_rate(source, weights, energy, config, reference_energy);
    rec.electron_count = rng.poisson(config.efficiency * lambda) +
                         rng.poisson(config.background_mean);
    return rec;
}

std::vector<SweepPoint> run_sweep(const PhotonSource& source,
                                  const SweepConfig& sweep,
                                  const EmissionConfig& config) {
    return run_sweep_impl(source, sweep, config, true);
}

std::vector<SweepPoint> run_sweep_serial(const PhotonSource& source,
                                         const SweepConfig& sweep,
                                         const EmissionConfig& config) {
    return run_sweep_impl(source, sweep, config, false);
}

}  // namespace photostat
