#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <vector>

namespace maxzonoid {

using Vec = std::vector<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Standard normal cdf through erfc; absolute error well below 1e-15.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double factorial(int n);

/// Adaptive Simpson quadrature of f on [a, b] with absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth = 48);

/// Adaptive Simpson with forced breakpoints; `breaks` may be unsorted and may
/// contain points outside [a, b], which are ignored.
double adaptive_simpson_split(const std::function<double(double)>& f, double a, double b,
                              std::vector<double> breaks, double abs_tol);

// Random numbers -----------------------------------------------------------

std::uint64_t splitmix64(std::uint64_t& state);

/// Seed for the chunk with the given index, derived only from (seed, index).
std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk_index);

/// mt19937_64 (bit-exact across standard libraries) with uniforms on the open
/// interval (0, 1) built from the top 53 bits.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }
    std::uint64_t bits() { return engine_(); }
    /// Unit Frechet variate -1/log(U).
    double frechet() { return -1.0 / std::log(uniform()); }
    double exponential() { return -std::log(uniform()); }
    /// Gamma(shape, 1) for integer shape, as a sum of exponentials.
    double gamma_int(int shape);
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n; }

private:
    std::mt19937_64 engine_;
};

/// Samples are processed in fixed-size chunks, each with its own derived seed,
/// so results do not depend on how chunks are scheduled.
inline constexpr std::size_t kMcChunk = 1 << 16;

struct McMoments {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
};

/// Mean and standard error of `draw(rng)` over n draws, chunked deterministically.
McMoments mc_mean(std::size_t n, std::uint64_t seed, const std::function<double(Rng&)>& draw);

// Direction grids ----------------------------------------------------------

/// Radical-inverse (Halton) point with index `i` (starting at 1) in dimension d.
Vec halton_point(std::size_t i, std::size_t d);

/// n directions on the full unit sphere: equispaced angles in 2-D, Halton
/// points pushed through the normal quantile in higher dimensions. Grids are
/// nested: the first n points of a larger grid form the smaller grid (in 2-D
/// when n divides the larger count).
std::vector<Vec> sphere_directions(std::size_t d, std::size_t n);

/// Directions in the closed nonnegative orthant. 2-D: n + 1 angles k*pi/(2n).
/// Higher dimensions: absolute values of sphere_directions plus the basis vectors.
std::vector<Vec> orthant_directions(std::size_t d, std::size_t n);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace maxzonoid
