#pragma once

#include <span>
#include <string>
#include <vector>

#include "maxzonoid/distribution.hpp"

namespace maxzonoid {

/// sigma_s: one atom zeta/|zeta| of mass s/n per row with |zeta| >= s.
/// Throws when no row exceeds s.
SpectralMeasure empirical_spectral(const SampleMatrix& samples, double s, ReferenceNorm ref = ReferenceNorm::l1);

/// Coordinatewise rescaling of the atoms so that every marginal sum is 1.
SpectralMeasure normalize_marginals(const SpectralMeasure& sigma);

struct DirectionEstimate {
    Vec direction;
    double value = 0.0;
};

struct ZonoidEstimate {
    Polygon2D polygon;
    /// Indices of estimates moved into [max_i u_i, sum_i u_i].
    std::vector<std::size_t> clipped;
    std::string note;
};

/// Intersection of {x : <x, u_k> <= l_k} with the unit square, rescaled so
/// that h(e_i) = 1. Planar only: in higher dimensions such an intersection
/// need not be a max-zonoid, so the estimator is disabled there.
ZonoidEstimate estimate_zonoid_2d(std::span<const DirectionEstimate> estimates);

struct ConvergencePoint {
    double s = 0.0;
    std::size_t exceedances = 0;
    /// NaN when no row exceeds s.
    double distance = 0.0;
    bool empty = false;
};

/// Hausdorff distance between the normalized zonoid of sigma_s and the target,
/// for each threshold in the increasing grid.
std::vector<ConvergencePoint> convergence_diagnostic(const SampleMatrix& samples, std::span<const double> s_grid,
                                                     const MaxZonoid& target, std::size_t grid_n = 0);

}  // namespace maxzonoid
