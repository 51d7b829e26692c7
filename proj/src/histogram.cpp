// SPDX-License-Identifier: Apache-2.0
#include "photostat/histogram.hpp"

#include <cmath>
#include <stdexcept>

namespace photostat {

void CountHistogram::add(int k, std::uint64_t times) {
    if (k < 0) throw std::domain_error("counts must be non-negative");
    counts[k] += times;
    total_pulses += times;
}

void CountHistogram::merge(const CountHistogram& other) {
    for (const auto& [k, f] : other.counts) counts[k] += f;
    total_pulses += other.total_pulses;
}

int CountHistogram::max_count() const {
    return counts.empty() ? 0 : counts.rbegin()->first;
}

double CountHistogram::mean() const {
    if (total_pulses == 0) throw std::domain_error("empty histogram");
    double s = 0.0;
    for (const auto& [k, f] : counts) {
        s += static_cast<double>(k) * static_cast<double>(f);
    }
    return s / static_cast<double>(total_pulses);
}

double CountHistogram::variance() const {
    if (total_pulses == 0) throw std::domain_error("empty histogram");
    if (total_pulses == 1) return 0.0;
    const double mu = mean();
    double ss = 0.0;
    for (const auto& [k, f] : counts) {
        const double d = static_cast<double>(k) - mu;
        ss += d * d * static_cast<double>(f);
    }
    return ss / static_cast<double>(total_pulses - 1);
}

CountPmf CountHistogram::empirical_pmf(int k_max) const {
    if (total_pulses == 0) throw std::domain_error("empty histogram");
    if (k_max < 0) k_max = max_count();
    CountPmf out;
    out.probs.assign(static_cast<std::size_t>(k_max) + 1, 0.0);
    const double inv = 1.0 / static_cast<double>(total_pulses);
    for (const auto& [k, f] : counts) {
        if (k <= k_max) out.probs[k] = static_cast<double>(f) * inv;
    }
    double s = 0.0;
    for (double p : out.probs) s += p;
    out.truncation_mass = std::max(0.0, 1.0 - s);
    out.log10_probs.resize(out.probs.size());
    for (std::size_t i = 0; i < out.probs.size(); ++i) {
        out.log10_probs[i] =
            out.probs[i] > 0.0 ? std::log10(out.probs[i]) : -HUGE_VAL;
    }
    return out;
}

void CountHistogram::validate() const {
    std::uint64_t s = 0;
    for (const auto& [k, f] : counts) {
        if (k < 0) throw std::runtime_error("negative count key");
        s += f;
    }
    if (s != total_pulses) {
        throw std::runtime_error("frequencies do not sum to total_pulses");
    }
}

double tv_distance(const CountHistogram& hist, const CountPmf& pmf) {
    const CountPmf emp = hist.empirical_pmf(
        std::max(hist.max_count(), pmf.k_max()));
    return tv_distance(emp, pmf);
}

}  // namespace photostat
