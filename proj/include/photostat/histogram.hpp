// SPDX-License-Identifier: Apache-2.0
#ifndef PHOTOSTAT_HISTOGRAM_HPP
#define PHOTOSTAT_HISTOGRAM_HPP

#include <cstdint>
#include <map>

#include "photostat/count_pmf.hpp"

namespace photostat {

/// Frequency table of integer counts per pulse.
struct CountHistogram {
    std::map<int, std::uint64_t> counts;
    std::uint64_t total_pulses = 0;

    void add(int k, std::uint64_t times = 1);
    void merge(const CountHistogram& other);
    int max_count() const;
    double mean() const;
    /// Unbiased sample variance; 0 for a single pulse.
    double variance() const;
    /// Empirical pmf on 0..k_max (k_max < 0 selects the observed maximum).
    CountPmf empirical_pmf(int k_max = -1) const;

    /// Throws unless frequencies are consistent with total_pulses.
    void validate() const;
};

double tv_distance(const CountHistogram& hist, const CountPmf& pmf);

}  // namespace photostat

#endif
