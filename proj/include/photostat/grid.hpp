// SPDX-License-Identifier: Apache-2.0
#ifndef PHOTOSTAT_GRID_HPP
#define PHOTOSTAT_GRID_HPP

#include <cstddef>
#include <vector>

#include "photostat/bsv.hpp"

namespace photostat {

enum class GridKind { linear, logarithmic };

/// A continuous density reduced to per-bin probability masses. For the
/// logarithmic kind, grid[i] is the mass centroid of bin i so discrete
/// moments reproduce the continuous ones to quadrature accuracy. For the
/// linear kind, grid[i] = i * step and mass[i] is the triangular-kernel
/// (hat) weight of the distribution at that lattice point; hats reproduce
/// linear functions, so the lattice mean is exact up to truncation.
struct DiscretizedDensity {
    std::vector<double> grid;
    std::vector<double> mass;
    GridKind kind = GridKind::logarithmic;
    double truncated_tail_mass = 0.0;  // probability beyond the grid, reported never silent

    double total_mass() const;
    double mean() const;
    double second_moment() const;
    std::size_t size() const { return grid.size(); }
    double step() const;  // linear lattice spacing; throws for logarithmic grids

    /// Throws unless |total_mass + truncated_tail_mass - 1| <= tol.
    void validate(double tol = 1e-6) const;
};

struct GridConfig {
    std::size_t bins = 1u << 14;
    double tail_mass = 1e-8;    // mass allowed beyond either grid end
    double norm_tol = 1e-6;     // acceptable |sum(mass) + tails - 1|
};

/// Discretizes the order-n intensity density on a logarithmic grid wide
/// enough that the mass clipped at both ends stays below
/// config.tail_mass. Per-bin masses by Gauss-Legendre quadrature of the
/// density in log coordinates; fails with the achieved error if the grid
/// cannot meet config.norm_tol.
DiscretizedDensity discretize(double mean, NonlinearityOrder order,
                              const GridConfig& config);

/// Resamples the order-n density onto a uniform lattice 0, h, 2h, ...
/// covering [0, upper] with `bins` points, for transform-based
/// convolution. Hat weights are integrated exactly in the half-normal
/// coordinate.
DiscretizedDensity discretize_lattice(double mean, NonlinearityOrder order,
                                      std::size_t bins, double upper);

}  // namespace photostat

#endif
