#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "maxzonoid/numerics.hpp"
#include "maxzonoid/polygon.hpp"
#include "maxzonoid/spectral.hpp"

namespace maxzonoid {

/// Support function given in closed form on the closed orthant.
struct AnalyticNorm {
    std::size_t dim = 0;
    std::function<double(std::span<const double>)> value;
    /// Optional gradient; when empty, callers fall back to finite differences.
    std::function<Vec(std::span<const double>)> gradient;
    std::string label;
};

/// Convex body in the nonnegative orthant generated by cross-polytopes,
/// handled through its support function.
///
/// Discrete spectral measures are the canonical form. Planar polygons and
/// analytic norms are kept as given and converted on demand.
class MaxZonoid {
public:
    using Representation = std::variant<SpectralMeasure, Polygon2D, AnalyticNorm>;

    explicit MaxZonoid(SpectralMeasure sigma);
    explicit MaxZonoid(Polygon2D polygon);
    explicit MaxZonoid(AnalyticNorm norm);

    std::size_t dimension() const { return dim_; }
    const Representation& representation() const { return rep_; }

    bool is_spectral() const { return std::holds_alternative<SpectralMeasure>(rep_); }
    bool is_polygon() const { return std::holds_alternative<Polygon2D>(rep_); }
    bool is_analytic() const { return std::holds_alternative<AnalyticNorm>(rep_); }

    /// h(K, x) for x in the closed orthant. Coordinates may be +infinity; the
    /// value is +infinity exactly when such a coordinate meets positive mass.
    double support(std::span<const double> x) const;

    /// Support value for an arbitrary direction of R^d. The body is a lower
    /// set of the orthant, so this is h(K, max(u, 0)).
    double support_full(std::span<const double> u) const;

    /// Exact spectral form for spectral and polygon representations.
    std::optional<SpectralMeasure> spectral(ReferenceNorm ref = ReferenceNorm::l1) const;

    /// Coordinatewise maxima of the support set F(K, x) (the partial
    /// derivatives of h where they exist). Analytic norms without a gradient
    /// use central differences.
    Vec support_point_max(std::span<const double> x) const;

    std::string describe() const;

private:
    Representation rep_;
    std::size_t dim_;
};

/// Max-zonoid with h(e_i) = 1 for all i (unit Frechet marginals).
class DependencySet {
public:
    explicit DependencySet(MaxZonoid zonoid, double tol = kGeomTol);

    const MaxZonoid& zonoid() const { return zonoid_; }
    std::size_t dimension() const { return zonoid_.dimension(); }
    double support(std::span<const double> x) const { return zonoid_.support(x); }

private:
    MaxZonoid zonoid_;
};

// Operations ------------------------------------------------------------------

double support_function(const MaxZonoid& k, std::span<const double> x);

/// lambda*K = {(lambda_1 x_1, ..., lambda_d x_d) : x in K}; h(lambda K, x) = h(K, lambda x).
MaxZonoid scale(const MaxZonoid& k, std::span<const double> lambda);

/// Projection onto the coordinates listed (0-based, strictly increasing),
/// which equals the section of K by that coordinate subspace.
MaxZonoid project(const MaxZonoid& k, std::span<const std::size_t> coords);

/// h(K1 x K2, (x1, x2)) = h(K1, x1) + h(K2, x2).
MaxZonoid cartesian_product(const MaxZonoid& k1, const MaxZonoid& k2);

enum class CombineMode { sum, difference };

/// sum: h(x) = h(K1, lambda x) + h(K2, (1 - lambda) x), lambda in [0,1]^d.
/// difference: spectral measure of K1 minus that of lambda*K2, which must stay
/// nonnegative atom by atom (NegativeMassError otherwise).
MaxZonoid minkowski_combine(const MaxZonoid& k1, const MaxZonoid& k2, std::span<const double> lambda,
                            CombineMode mode);
MaxZonoid minkowski_combine(const MaxZonoid& k1, const MaxZonoid& k2, double lambda, CombineMode mode);

/// deficit() is the signed mass left on the offending atom (negative).
class NegativeMassError : public std::invalid_argument {
public:
    NegativeMassError(Vec atom, double deficit);
    const Vec& atom() const { return atom_; }
    double deficit() const { return deficit_; }

private:
    Vec atom_;
    double deficit_;
};

struct PowerMean {
    double p = 1.0;
    double lambda = 0.5;
};

enum class Combine2dMode { hull, intersection, power_mean };

inline constexpr std::size_t kEnvelopeDirections = 512;

/// Planar-only combinations that stay inside the class of dependency sets.
DependencySet combine_2d(const DependencySet& k1, const DependencySet& k2, Combine2dMode mode,
                         PowerMean power = {}, std::size_t envelope_directions = kEnvelopeDirections);

/// Planar body as a polygon: exact for spectral and polygon forms, supporting
/// line envelope on `directions` + 1 normals for analytic norms.
Polygon2D to_polygon_2d(const MaxZonoid& k, std::size_t directions = kEnvelopeDirections);

/// {x in E : h(K, x) <= 1}. Exact for polygonal bodies; for analytic norms the
/// hull of `directions` + 1 boundary points u/h(u).
Polygon2D polar_2d(const MaxZonoid& k, std::size_t directions = 4096);

struct VolumeEstimate {
    double value = 0.0;
    double std_error = 0.0;
    bool exact = false;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

struct ExactVolume {};
struct MonteCarloVolume {
    std::size_t samples = 1'000'000;
    std::uint64_t seed = 1;
};
using VolumeMethod = std::variant<ExactVolume, MonteCarloVolume>;

/// Lebesgue measure of the polar set. Exact path (d = 2; trivially d = 1):
/// shoelace area of the polar polygon, or 1/2 * int_0^1 h(t, 1-t)^-2 dt for
/// analytic norms. Monte Carlo path: rejection in the box [0, 1/h(e_i)].
VolumeEstimate polar_volume(const MaxZonoid& k, const VolumeMethod& method);

inline std::size_t default_grid(std::size_t dim) { return dim == 2 ? 4096 : 20000; }

/// max over grid directions on the full sphere of |h(K1, u) - h(K2, u)|.
double hausdorff_distance(const MaxZonoid& k1, const MaxZonoid& k2, std::size_t grid_n = 0);

struct MDistance {
    double value = 0.0;
    Vec lambda;
};

/// log inf { prod lambda_i : K1 in lambda K2, K2 in lambda K1 } with
/// containment tested by support dominance on an orthant direction grid. The
/// result is an upper bound found by pattern search on log(lambda).
MDistance m_distance(const DependencySet& k1, const DependencySet& k2, std::size_t grid_n = 0);

}  // namespace maxzonoid
