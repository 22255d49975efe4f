#pragma once

// Independent reference computations and random generators for the tests.
// Nothing here calls the library routine it is used to check.

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "maxzonoid/alternation.hpp"
#include "maxzonoid/polygon.hpp"
#include "maxzonoid/spectral.hpp"

namespace oracle {

using maxzonoid::Point2;
using maxzonoid::Vec;
using Engine = std::mt19937_64;

double uniform(Engine& g, double lo = 0.0, double hi = 1.0);

/// Asymptotic Kolmogorov p-value with the Stephens small-sample correction.
double ks_pvalue(double statistic, std::size_t n);
/// sup |F_n - F| against the unit Frechet cdf exp(-1/x).
double ks_statistic_frechet(std::vector<double> x);

/// Kendall tau by a Fenwick tree over y ranks.
double kendall_tau(std::span<const double> x, std::span<const double> y);
/// Quadratic-time Kendall tau for small samples.
double kendall_tau_naive(std::span<const double> x, std::span<const double> y);

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
};

/// int_E exp(-h(x)) dx by importance sampling from the density
/// exp(-max_i x_i)/d!; the weight d! exp(max_i x_i - h(x)) lies in (0, d!].
Estimate exp_integral(const std::function<double(std::span<const double>)>& h, std::size_t d, std::size_t n,
                      std::uint64_t seed);

/// Volume of {x >= 0 : |x|_p <= 1}.
double lp_orthant_volume(std::size_t d, double p);

/// Support value of a closed polygon given by vertices, max <v, x>.
double vertex_support(std::span<const Point2> vertices, double x1, double x2);

/// Convex chain from (1,0) to (0,1) with `edges` random edges: edge vectors
/// (-a_i, b_i) with sum a = sum b = 1, sorted by slope.
std::vector<Point2> random_dependency_chain(Engine& g, std::size_t edges);

/// Random atoms on the l1 simplex, rescaled coordinatewise to unit marginals.
maxzonoid::SpectralMeasure random_dependency_measure(Engine& g, std::size_t d, std::size_t atoms);

/// theta_A = sum over atoms of mass * max_{i in A} point_i for a spectral measure.
maxzonoid::ExtremalTable extremal_table_of(const maxzonoid::SpectralMeasure& sigma);

/// Cdf of a discrete simple max-stable law, exp(-sum_k w_k max_i a_ki / x_i).
double discrete_cdf(const maxzonoid::SpectralMeasure& sigma, std::span<const double> x);

}  // namespace oracle
