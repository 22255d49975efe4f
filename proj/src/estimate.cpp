#include "maxzonoid/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace maxzonoid {

SpectralMeasure empirical_spectral(const SampleMatrix& samples, double s, ReferenceNorm ref)
{
    if (!(s > 0.0) || std::isinf(s)) throw std::invalid_argument("empirical_spectral: threshold must be positive");
    if (samples.rows == 0) throw std::invalid_argument("empirical_spectral: no samples");
    const double mass = s / static_cast<double>(samples.rows);
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < samples.rows; ++i) {
        const auto row = samples.row(i);
        for (double v : row)
            if (!(v > 0.0) || std::isinf(v)) throw std::invalid_argument("empirical_spectral: samples must be positive and finite");
        const double r = reference_norm(ref, row);
        if (r < s) continue;
        Vec p(row.begin(), row.end());
        for (double& v : p) v /= r;
        atoms.push_back({std::move(p), mass});
    }
    if (atoms.empty())
        throw std::invalid_argument("empirical_spectral: no sample reaches the threshold " + std::to_string(s) +
                                    "; lower s");
    return SpectralMeasure(ref, samples.cols, std::move(atoms));
}

SpectralMeasure normalize_marginals(const SpectralMeasure& sigma)
{
    const Vec m = sigma.marginal_sums();
    for (double v : m)
        if (!(v > 0.0)) throw std::invalid_argument("normalize_marginals: a marginal sum vanishes");
    Vec inv(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) inv[i] = 1.0 / m[i];
    const MaxZonoid scaled = scale(MaxZonoid(sigma), inv);
    return *scaled.spectral(sigma.reference());
}

ZonoidEstimate estimate_zonoid_2d(std::span<const DirectionEstimate> estimates)
{
    if (estimates.size() < 2) throw std::invalid_argument("estimate_zonoid_2d: need at least two directions");
    std::vector<Point2> normals;
    std::vector<double> offsets;
    std::vector<std::size_t> clipped;
    bool bounds_x = false;
    bool bounds_y = false;
    for (std::size_t k = 0; k < estimates.size(); ++k) {
        const DirectionEstimate& e = estimates[k];
        if (e.direction.size() != 2)
            throw std::invalid_argument(
                "estimate_zonoid_2d: planar only; half-space intersections are not guaranteed max-zonoids in d >= 3");
        const double u1 = e.direction[0];
        const double u2 = e.direction[1];
        if (!(u1 >= 0.0 && u2 >= 0.0) || u1 + u2 == 0.0)
            throw std::invalid_argument("estimate_zonoid_2d: directions must be nonzero and nonnegative");
        if (!std::isfinite(e.value)) throw std::invalid_argument("estimate_zonoid_2d: non-finite estimate");
        const double lo = std::max(u1, u2);
        const double hi = u1 + u2;
        double v = e.value;
        if (v < lo || v > hi) {
            v = std::clamp(v, lo, hi);
            clipped.push_back(k);
        }
        bounds_x = bounds_x || u1 > 0.0;
        bounds_y = bounds_y || u2 > 0.0;
        normals.push_back({u1, u2});
        offsets.push_back(v);
    }
    if (!bounds_x || !bounds_y)
        throw std::invalid_argument("estimate_zonoid_2d: the directions leave the intersection unbounded");
    const Polygon2D raw = halfplane_envelope(normals, offsets, 1.0, 1.0);
    const double sx = raw.vertices().front().x;
    const double sy = raw.vertices().back().y;
    std::vector<Point2> chain;
    for (const Point2& p : raw.vertices()) chain.push_back({p.x / sx, p.y / sy});
    ZonoidEstimate out{Polygon2D(std::move(chain)), std::move(clipped), {}};
    out.note = "planar estimate; the half-space estimator is disabled for d >= 3 (not guaranteed max-zonoid)";
    if (!out.clipped.empty())
        out.note += "; " + std::to_string(out.clipped.size()) + " estimate(s) clipped into [max u_i, sum u_i]";
    return out;
}

std::vector<ConvergencePoint> convergence_diagnostic(const SampleMatrix& samples, std::span<const double> s_grid,
                                                     const MaxZonoid& target, std::size_t grid_n)
{
    if (target.dimension() != samples.cols)
        throw std::invalid_argument("convergence_diagnostic: target and samples differ in dimension");
    for (std::size_t i = 1; i < s_grid.size(); ++i)
        if (!(s_grid[i] > s_grid[i - 1])) throw std::invalid_argument("convergence_diagnostic: s grid must increase");
    std::vector<ConvergencePoint> out;
    for (double s : s_grid) {
        ConvergencePoint p;
        p.s = s;
        for (std::size_t i = 0; i < samples.rows; ++i)
            if (reference_norm(ReferenceNorm::l1, samples.row(i)) >= s) ++p.exceedances;
        if (p.exceedances == 0) {
            p.empty = true;
            p.distance = std::numeric_limits<double>::quiet_NaN();
        } else {
            const SpectralMeasure sigma = empirical_spectral(samples, s);
            p.distance = hausdorff_distance(MaxZonoid(normalize_marginals(sigma)), target, grid_n);
        }
        out.push_back(p);
    }
    return out;
}

}  // namespace maxzonoid
