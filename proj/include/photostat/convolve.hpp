// SPDX-License-Identifier: Apache-2.0
#ifndef PHOTOSTAT_CONVOLVE_HPP
#define PHOTOSTAT_CONVOLVE_HPP

#include "photostat/grid.hpp"

namespace photostat {

/// Lattice upper edge large enough that the sum of `modes` independent
/// order-n variables with total mean `total_mean` keeps all but
/// `tail_mass` of its probability below it (union bound on the per-mode
/// survival function).
double suggested_lattice_upper(double total_mean, NonlinearityOrder order,
                               int modes, double tail_mass = 1e-9);

/// Distribution of the sum of m iid copies of `single_mode`, which must
/// be a linear lattice built with per-mode mean = total_mean/m. The
/// result lives on the same lattice; mass pushed past the upper edge is
/// reported as truncation. Transform-based with repeated squaring in the
/// frequency domain, so the cost is O(K log K) for any m.
///
/// Throws when the transform round trip drifts by more than 1e-4 in
/// total mass, or when the input lattice mean is inconsistent with
/// total_mean/m.
DiscretizedDensity convolve_modes(const DiscretizedDensity& single_mode,
                                  int m, double total_mean);

}  // namespace photostat

#endif
