#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maxzonoid/numerics.hpp"
#include "maxzonoid/polygon.hpp"

namespace maxzonoid {

class MaxZonoid;

/// Norm whose unit sphere (restricted to the nonnegative orthant) carries the
/// spectral atoms. l1 puts them on the unit simplex.
enum class ReferenceNorm { l1, l2, linf };

double reference_norm(ReferenceNorm ref, std::span<const double> x);
std::string_view to_string(ReferenceNorm ref);
ReferenceNorm parse_reference_norm(std::string_view text);

struct Atom {
    Vec point;
    double mass = 0.0;
};

/// Finite measure on the reference sphere in the nonnegative orthant.
///
/// Atoms must have unit reference norm (1e-9) and nonnegative mass; zero-mass
/// atoms are dropped and atoms closer than 1e-9 are merged with masses added.
/// The induced support function is h(x) = sum_k mass_k * max_i(point_ki * x_i).
class SpectralMeasure {
public:
    SpectralMeasure(ReferenceNorm ref, std::size_t dim, std::vector<Atom> atoms);

    ReferenceNorm reference() const { return ref_; }
    std::size_t dimension() const { return dim_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    bool empty() const { return atoms_.empty(); }

    double total_mass() const;
    /// sum_k mass_k * point_k, i.e. h(e_i) for each i.
    Vec marginal_sums() const;

    /// Support value on the closed orthant; +infinity coordinates allowed, 0*inf = 0.
    double support(std::span<const double> x) const;

private:
    ReferenceNorm ref_;
    std::size_t dim_;
    std::vector<Atom> atoms_;
};

struct WeightedPoint {
    Vec point;
    double weight = 1.0;
};

struct DependencyReport {
    bool is_dependency = false;
    Vec marginal_sums;
    double total_mass = 0.0;
};

inline constexpr double kDependencyTol = 1e-6;

/// Exact max-zonoid sum_k mass_k * cross-polytope(point_k).
MaxZonoid zonoid_from_spectral(const SpectralMeasure& sigma);

/// Planar polygon -> atoms along its edges: the edge from a^{i-1} to a^i gives
/// u = (a^{i-1}_1 - a^i_1, a^i_2 - a^{i-1}_2), an atom at u/|u| with mass |u|.
SpectralMeasure spectral_from_polygon_2d(const Polygon2D& polygon,
                                         ReferenceNorm ref = ReferenceNorm::l1);

/// Inverse of spectral_from_polygon_2d: sort the atoms' edge vectors by slope
/// and chain them from (h(e1), 0) to (0, h(e2)).
Polygon2D polygon_from_spectral_2d(const SpectralMeasure& sigma);

DependencyReport validate_dependency(const SpectralMeasure& sigma, double tol = kDependencyTol);

/// Each (z, w) becomes the atom z/|z| with mass w*|z|; zero vectors are dropped.
SpectralMeasure spectral_from_points(std::span<const WeightedPoint> zeta, std::size_t dim,
                                     ReferenceNorm ref = ReferenceNorm::l1);

SpectralMeasure rebase_reference(const SpectralMeasure& sigma, ReferenceNorm ref);

}  // namespace maxzonoid
