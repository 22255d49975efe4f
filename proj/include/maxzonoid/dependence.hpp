#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "maxzonoid/distribution.hpp"

namespace maxzonoid {

/// Scalar functional with its Monte Carlo error (0 on exact paths).
struct DependenceValue {
    double value = 0.0;
    double std_error = 0.0;
    bool exact = true;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

/// theta_A = h(K, e_A). `subset` is a bitmask over 0-based coordinates.
double extremal_coefficient(const MaxStableModel& model, std::uint64_t subset);

/// chi = 2 - h(K, (1,1)); planar only.
double chi(const MaxStableModel& model);

/// Spearman rho through L = (K + cube)/2. Planar: 3(2 V(L°) - 1);
/// otherwise c(d! V(L°) - 1) with c = (d+1)/(2^d - d - 1).
DependenceValue spearman_rho(const MaxStableModel& model, const VolumeMethod& method = ExactVolume{});

inline constexpr double kKendallTol = 1e-8;

/// tau = 1 - int_0^1 y_1 y_2 / h(t, 1-t)^2 dt with y the coordinatewise
/// maxima of the support set; adaptive Simpson split at edge normals.
double kendall_tau_2d(const MaxStableModel& model, double tol = kKendallTol);

/// Covariance of 1/xi_1 and 1/xi_2: 2 V(K°) - 1.
DependenceValue inverted_pearson_2d(const MaxStableModel& model, const VolumeMethod& method = ExactVolume{});

/// (d! V(K°) - 1) / (d! - 1).
DependenceValue multivariate_rho(const MaxStableModel& model, const VolumeMethod& method = ExactVolume{});

/// Sample Kendall tau of paired observations without ties, O(n log n).
double empirical_kendall_tau(std::span<const double> x, std::span<const double> y);

}  // namespace maxzonoid
