#include "maxzonoid/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "maxzonoid/geometry.hpp"

namespace maxzonoid {

double reference_norm(ReferenceNorm ref, std::span<const double> x)
{
    double r = 0.0;
    switch (ref) {
    case ReferenceNorm::l1:
        for (double v : x) r += std::abs(v);
        return r;
    case ReferenceNorm::l2:
        return norm2(x);
    case ReferenceNorm::linf:
        for (double v : x) r = std::max(r, std::abs(v));
        return r;
    }
    return r;
}

std::string_view to_string(ReferenceNorm ref)
{
    switch (ref) {
    case ReferenceNorm::l1: return "l1";
    case ReferenceNorm::l2: return "l2";
    case ReferenceNorm::linf: return "linf";
    }
    return "l1";
}

ReferenceNorm parse_reference_norm(std::string_view text)
{
    if (text == "l1") return ReferenceNorm::l1;
    if (text == "l2") return ReferenceNorm::l2;
    if (text == "linf") return ReferenceNorm::linf;
    throw std::invalid_argument("unknown reference norm '" + std::string(text) + "' (expected l1, l2 or linf)");
}

namespace {

constexpr double kUnitTol = 1e-9;
constexpr double kMergeTol = 1e-9;

double atom_value(const Atom& a, std::span<const double> x)
{
    double best = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (a.point[i] == 0.0) continue;
        best = std::max(best, a.point[i] * x[i]);
    }
    return best;
}

}  // namespace

SpectralMeasure::SpectralMeasure(ReferenceNorm ref, std::size_t dim, std::vector<Atom> atoms)
    : ref_(ref), dim_(dim)
{
    if (dim == 0) throw std::invalid_argument("spectral measure: dimension must be positive");
    std::vector<Atom> kept;
    kept.reserve(atoms.size());
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        Atom& a = atoms[k];
        if (a.point.size() != dim)
            throw std::invalid_argument("spectral measure: atom " + std::to_string(k) + " has dimension " +
                                        std::to_string(a.point.size()) + ", expected " + std::to_string(dim));
        if (!std::isfinite(a.mass) || a.mass < 0.0)
            throw std::invalid_argument("spectral measure: atom " + std::to_string(k) + " has invalid mass");
        for (double v : a.point)
            if (!std::isfinite(v) || v < 0.0)
                throw std::invalid_argument("spectral measure: atom " + std::to_string(k) +
                                            " must lie in the nonnegative orthant");
        if (std::abs(reference_norm(ref, a.point) - 1.0) > kUnitTol)
            throw std::invalid_argument("spectral measure: atom " + std::to_string(k) + " is not on the " +
                                        std::string(to_string(ref)) + " unit sphere");
        if (a.mass == 0.0) continue;
        kept.push_back(std::move(a));
    }
    std::sort(kept.begin(), kept.end(), [](const Atom& a, const Atom& b) { return a.point < b.point; });
    for (Atom& a : kept) {
        if (!atoms_.empty()) {
            Atom& last = atoms_.back();
            double d2 = 0.0;
            for (std::size_t i = 0; i < dim; ++i) d2 += (last.point[i] - a.point[i]) * (last.point[i] - a.point[i]);
            if (std::sqrt(d2) < kMergeTol) {
                last.mass += a.mass;
                continue;
            }
        }
        atoms_.push_back(std::move(a));
    }
}

double SpectralMeasure::total_mass() const
{
    double s = 0.0;
    for (const Atom& a : atoms_) s += a.mass;
    return s;
}

Vec SpectralMeasure::marginal_sums() const
{
    Vec s(dim_, 0.0);
    for (const Atom& a : atoms_)
        for (std::size_t i = 0; i < dim_; ++i) s[i] += a.mass * a.point[i];
    return s;
}

double SpectralMeasure::support(std::span<const double> x) const
{
    if (x.size() != dim_)
        throw std::invalid_argument("support: direction has dimension " + std::to_string(x.size()) +
                                    ", expected " + std::to_string(dim_));
    double s = 0.0;
    for (const Atom& a : atoms_) {
        const double v = atom_value(a, x);
        if (v > 0.0) s += a.mass * v;
    }
    return s;
}

MaxZonoid zonoid_from_spectral(const SpectralMeasure& sigma)
{
    if (sigma.empty()) throw std::invalid_argument("zonoid_from_spectral: spectral measure has no atoms");
    return MaxZonoid(sigma);
}

SpectralMeasure spectral_from_polygon_2d(const Polygon2D& polygon, ReferenceNorm ref)
{
    const auto& v = polygon.vertices();
    std::vector<WeightedPoint> edges;
    for (std::size_t i = 1; i < v.size(); ++i) {
        const double u1 = v[i - 1].x - v[i].x;
        const double u2 = v[i].y - v[i - 1].y;
        if (u1 < -kGeomTol || u2 < -kGeomTol)
            throw std::invalid_argument("spectral_from_polygon_2d: malformed polygon edge " + std::to_string(i));
        edges.push_back({{std::max(u1, 0.0), std::max(u2, 0.0)}, 1.0});
    }
    return spectral_from_points(edges, 2, ref);
}

Polygon2D polygon_from_spectral_2d(const SpectralMeasure& sigma)
{
    if (sigma.dimension() != 2)
        throw std::invalid_argument("polygon_from_spectral_2d: measure must be two-dimensional");
    if (sigma.empty()) throw std::invalid_argument("polygon_from_spectral_2d: measure has no atoms");
    struct Edge {
        double dx;  // leftward run
        double dy;  // upward rise
    };
    std::vector<Edge> edges;
    double x0 = 0.0;
    for (const Atom& a : sigma.atoms()) {
        edges.push_back({a.mass * a.point[0], a.mass * a.point[1]});
        x0 += a.mass * a.point[0];
    }
    // steepest edges first: descending dy/dx, compared by cross multiplication
    std::stable_sort(edges.begin(), edges.end(),
                     [](const Edge& a, const Edge& b) { return a.dy * b.dx > b.dy * a.dx; });
    std::vector<Point2> chain;
    chain.push_back({x0, 0.0});
    Point2 cur = chain.back();
    for (const Edge& e : edges) {
        cur = {cur.x - e.dx, cur.y + e.dy};
        chain.push_back(cur);
    }
    chain.back().x = 0.0;
    return Polygon2D::general(std::move(chain));
}

DependencyReport validate_dependency(const SpectralMeasure& sigma, double tol)
{
    DependencyReport r;
    r.marginal_sums = sigma.marginal_sums();
    r.total_mass = sigma.total_mass();
    r.is_dependency = std::all_of(r.marginal_sums.begin(), r.marginal_sums.end(),
                                  [&](double s) { return std::abs(s - 1.0) <= tol; });
    return r;
}

SpectralMeasure spectral_from_points(std::span<const WeightedPoint> zeta, std::size_t dim, ReferenceNorm ref)
{
    std::vector<Atom> atoms;
    atoms.reserve(zeta.size());
    for (std::size_t k = 0; k < zeta.size(); ++k) {
        const WeightedPoint& z = zeta[k];
        if (z.point.size() != dim)
            throw std::invalid_argument("spectral_from_points: point " + std::to_string(k) + " has wrong dimension");
        if (!(z.weight > 0.0) || !std::isfinite(z.weight))
            throw std::invalid_argument("spectral_from_points: weights must be positive");
        for (double v : z.point)
            if (!(v >= 0.0) || !std::isfinite(v))
                throw std::invalid_argument("spectral_from_points: points must be finite and nonnegative");
        const double r = reference_norm(ref, z.point);
        if (r == 0.0) continue;
        Atom a;
        a.point = z.point;
        for (double& v : a.point) v /= r;
        a.mass = z.weight * r;
        atoms.push_back(std::move(a));
    }
    return SpectralMeasure(ref, dim, std::move(atoms));
}

SpectralMeasure rebase_reference(const SpectralMeasure& sigma, ReferenceNorm ref)
{
    if (sigma.reference() == ref) return sigma;
    std::vector<Atom> atoms;
    atoms.reserve(sigma.atoms().size());
    for (const Atom& a : sigma.atoms()) {
        const double r = reference_norm(ref, a.point);
        Atom b;
        b.point = a.point;
        for (double& v : b.point) v /= r;
        b.mass = a.mass * r;
        atoms.push_back(std::move(b));
    }
    return SpectralMeasure(ref, sigma.dimension(), std::move(atoms));
}

}  // namespace maxzonoid
