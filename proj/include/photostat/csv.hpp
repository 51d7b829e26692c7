// SPDX-License-Identifier: Apache-2.0
#ifndef PHOTOSTAT_CSV_HPP
#define PHOTOSTAT_CSV_HPP

#include <string>
#include <utility>
#include <vector>

#include "photostat/emission.hpp"
#include "photostat/grid.hpp"
#include "photostat/histogram.hpp"

namespace photostat {

// Writers emit a header line and %.17g numbers so identical inputs give
// byte-identical files. Readers are strict and name the offending line.

void write_histogram_csv(const std::string& path, const CountHistogram& hist);
CountHistogram read_histogram_csv(const std::string& path);

/// Columns: support, mass, log10_mass.
void write_pmf_csv(const std::string& path, const CountPmf& pmf);
void write_density_csv(const std::string& path, const DiscretizedDensity& d);

/// Long form, one row per (energy, count) cell: energy, k, frequency.
void write_sweep_csv(const std::string& path,
                     const std::vector<SweepPoint>& points);
/// Columns: energy, mean.
void write_sweep_means_csv(const std::string& path,
                           const std::vector<SweepPoint>& points);

/// Two real columns (header optional); used for (energy, mean) inputs.
std::vector<std::pair<double, double>> read_xy_csv(const std::string& path);

}  // namespace photostat

#endif
