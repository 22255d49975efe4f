#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "maxzonoid/geometry.hpp"

namespace maxzonoid {

/// Simple max-stable law F(x) = exp(-h(K, x*)), x* = (1/x_1, ..., 1/x_d).
///
/// The discrete spectral form is needed only for simulation. Spectral and
/// polygon bodies carry it automatically; analytic ones get it from
/// with_discretization.
class MaxStableModel {
public:
    explicit MaxStableModel(DependencySet k);
    MaxStableModel(DependencySet k, SpectralMeasure discrete);

    /// Atoms on any reference sphere; marginal sums must be 1.
    static MaxStableModel from_spectral(const SpectralMeasure& sigma);

    /// Attaches a discretization with m atoms (analytic bodies; others keep their exact atoms).
    MaxStableModel with_discretization(std::size_t m) const;

    const DependencySet& dependency_set() const { return k_; }
    const MaxZonoid& zonoid() const { return k_.zonoid(); }
    const std::optional<SpectralMeasure>& discrete() const { return discrete_; }
    std::size_t dimension() const { return k_.dimension(); }
    /// Support-function error of the attached discretization (0 when exact).
    double discretization_error() const { return discretization_error_; }

    /// Stable tail dependence function l(x) = h(K, x).
    double tail_dependence(std::span<const double> x) const { return k_.support(x); }

private:
    DependencySet k_;
    std::optional<SpectralMeasure> discrete_;
    double discretization_error_ = 0.0;
};

/// x_i in [0, +inf]; x_i = 0 gives 0 and x_i = +inf marginalizes.
double cdf(const MaxStableModel& model, std::span<const double> x);

/// C(u) = exp(-h(K, -log u)) on [0,1]^d.
double copula(const MaxStableModel& model, std::span<const double> u);

/// A(t) = h(K, (t_1, ..., t_{d-1}, 1 - sum t)) for t in the unit simplex.
double pickands(const MaxStableModel& model, std::span<const double> t);
double pickands(const MaxStableModel& model, double t);

/// Points of the level curve {F = alpha} in the plane: equispaced polar angles
/// plus, for polygonal bodies, the images of the polar vertices; ordered by
/// increasing first coordinate.
std::vector<Point2> quantile_curve(const MaxStableModel& model, double alpha, std::size_t points_n);

struct SampleMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;  // row-major
    std::uint64_t seed = 0;

    double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
    std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
    std::vector<double> column(std::size_t j) const;
};

/// Exact sampler xi_j = max_k zeta_k w_k a_kj with zeta_k iid unit Frechet.
/// Rows are generated in blocks of kMcChunk with seeds derived from (seed, block).
SampleMatrix simulate(const MaxStableModel& model, long long n, std::uint64_t seed);

/// Density of the exponent measure at an interior point z (d = 2 or 3):
/// (-1)^(d-1) prod z_i^-2 times the d-th mixed partial of h at z*, by central
/// differences with relative step 1e-4 (1e-3 in d = 3) and one Richardson step.
/// Discrete models have no density unless every atom lies on a face of the
/// simplex, in which case the interior density is 0.
double exponent_density(const MaxStableModel& model, std::span<const double> z);

/// Exponent measure of the box (a, b] with finite corners, by inclusion-exclusion.
double exponent_box_mass(const MaxStableModel& model, std::span<const double> a, std::span<const double> b);

using CdfFunction = std::function<double(std::span<const double>)>;

/// max over the grid of |F(n x)^n - F(x)|.
double max_stability_check(const CdfFunction& f, int n_fold, std::span<const Vec> grid);
double max_stability_check(const MaxStableModel& model, int n_fold, std::span<const Vec> grid);

/// Deterministic Halton grid of `count` points in (0, upper]^d.
std::vector<Vec> positive_grid(std::size_t d, std::size_t count, double upper = 3.0);

}  // namespace maxzonoid
