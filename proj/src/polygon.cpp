#include "maxzonoid/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace maxzonoid {

namespace {

// Vertices closer than this to the chord of their neighbours are dropped as
// collinear; it bounds the support-function change of the removal.
constexpr double kCollinearTol = 1e-12;

double dist(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

double times(double coord, double x)
{
    // 0 * inf = 0 for support evaluation
    return coord == 0.0 ? 0.0 : coord * x;
}

std::vector<Point2> convex_hull(std::vector<Point2> pts)
{
    std::sort(pts.begin(), pts.end(),
              [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Point2> hull(2 * pts.size());
    std::size_t k = 0;
    auto keep = [&](Point2 o, Point2 a, Point2 b) {
        return cross(o, a, b) > kCollinearTol * dist(o, b);
    };
    for (const Point2& p : pts) {
        while (k >= 2 && !keep(hull[k - 2], hull[k - 1], p)) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        const Point2& p = pts[i];
        while (k >= lower && !keep(hull[k - 2], hull[k - 1], p)) --k;
        hull[k++] = p;
    }
    hull.resize(k - 1);
    return hull;
}

}  // namespace

std::vector<Point2> Polygon2D::tidy_chain(std::vector<Point2> chain)
{
    if (chain.size() < 2) throw std::invalid_argument("polygon: need at least two vertices");
    for (Point2& p : chain) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw std::invalid_argument("polygon: non-finite vertex");
        if (p.x < -kGeomTol || p.y < -kGeomTol)
            throw std::invalid_argument("polygon: vertex outside the nonnegative quadrant");
        p.x = std::max(p.x, 0.0);
        p.y = std::max(p.y, 0.0);
    }
    if (chain.front().y > kGeomTol)
        throw std::invalid_argument("polygon: first vertex must lie on the x-axis");
    if (chain.back().x > kGeomTol)
        throw std::invalid_argument("polygon: last vertex must lie on the y-axis");
    chain.front().y = 0.0;
    chain.back().x = 0.0;
    if (chain.front().x <= kGeomTol || chain.back().y <= kGeomTol)
        throw std::invalid_argument("polygon: degenerate axis endpoint");
    for (std::size_t i = 1; i < chain.size(); ++i) {
        if (chain[i].x > chain[i - 1].x + kGeomTol || chain[i].y < chain[i - 1].y - kGeomTol)
            throw std::invalid_argument("polygon: vertices must run anticlockwise from the x-axis to the y-axis (vertex " +
                                        std::to_string(i) + ")");
    }

    Polygon2D hull = hull_of(chain);
    // Every input vertex must sit on the hull boundary up to the tolerance;
    // deeper dents are convexity violations rather than rounding noise.
    // Vertices are ordered along the boundary, so the edge that certifies a
    // vertex only moves forward; the scan is linear overall.
    const std::vector<Point2> closed = hull.closed();
    const std::size_t m = closed.size();
    std::size_t k = 0;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        bool on_boundary = false;
        for (std::size_t step = 0; step < m && !on_boundary; ++step) {
            const std::size_t e = (k + step) % m;
            const Point2 a = closed[e];
            const Point2 b = closed[(e + 1) % m];
            const double len = dist(a, b);
            if (len == 0.0) continue;
            if (cross(a, b, chain[i]) / len <= kGeomTol) {
                on_boundary = true;
                k = e;
            }
        }
        if (!on_boundary) throw std::invalid_argument("polygon: not convex at vertex " + std::to_string(i));
    }
    return hull.chain_;
}

Polygon2D::Polygon2D(std::vector<Point2> chain) : chain_(tidy_chain(std::move(chain)))
{
    if (!is_dependency())
        throw std::invalid_argument(
            "polygon: a dependency polygon must run from (1,0) to (0,1) inside the unit square");
    chain_.front() = {1.0, 0.0};
    chain_.back() = {0.0, 1.0};
}

Polygon2D Polygon2D::general(std::vector<Point2> chain)
{
    Polygon2D p;
    p.chain_ = tidy_chain(std::move(chain));
    return p;
}

Polygon2D Polygon2D::hull_of(std::span<const Point2> points)
{
    std::vector<Point2> pts;
    pts.reserve(3 * points.size() + 1);
    pts.push_back({0.0, 0.0});
    for (const Point2& p : points) {
        if (!(p.x >= 0.0 && p.y >= 0.0) || !std::isfinite(p.x) || !std::isfinite(p.y))
            throw std::invalid_argument("polygon hull: points must be finite and nonnegative");
        pts.push_back(p);
        pts.push_back({p.x, 0.0});
        pts.push_back({0.0, p.y});
    }
    std::vector<Point2> hull = convex_hull(std::move(pts));
    if (hull.size() < 3) throw std::invalid_argument("polygon hull: degenerate point set");
    // hull starts at the origin and runs anticlockwise
    std::vector<Point2> chain;
    for (std::size_t i = 1; i < hull.size(); ++i) {
        if (!chain.empty() && dist(chain.back(), hull[i]) < kGeomTol) {
            // keep axis endpoints exact
            if (hull[i].x == 0.0) chain.back() = hull[i];
            continue;
        }
        chain.push_back(hull[i]);
    }
    Polygon2D p;
    p.chain_ = std::move(chain);
    if (p.chain_.size() < 2 || p.chain_.front().y != 0.0 || p.chain_.back().x != 0.0)
        throw std::invalid_argument("polygon hull: degenerate point set");
    return p;
}

bool Polygon2D::is_dependency(double tol) const
{
    if (std::abs(chain_.front().x - 1.0) > tol || std::abs(chain_.back().y - 1.0) > tol) return false;
    return std::all_of(chain_.begin(), chain_.end(),
                       [&](Point2 p) { return p.x <= 1.0 + tol && p.y <= 1.0 + tol; });
}

double Polygon2D::support(double x1, double x2) const
{
    double best = 0.0;
    for (const Point2& v : chain_) best = std::max(best, times(v.x, x1) + times(v.y, x2));
    return best;
}

std::vector<Point2> Polygon2D::closed() const
{
    std::vector<Point2> out;
    out.reserve(chain_.size() + 1);
    out.push_back({0.0, 0.0});
    out.insert(out.end(), chain_.begin(), chain_.end());
    return out;
}

double Polygon2D::area() const { return polygon_area(closed()); }

std::vector<Point2> clip_halfplane(const std::vector<Point2>& polygon, Point2 normal, double offset)
{
    std::vector<Point2> out;
    const std::size_t n = polygon.size();
    if (n == 0) return out;
    auto value = [&](Point2 p) { return normal.x * p.x + normal.y * p.y - offset; };
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 p = polygon[i];
        const Point2 q = polygon[(i + 1) % n];
        const double vp = value(p);
        const double vq = value(q);
        if (vp <= 0.0) out.push_back(p);
        if ((vp < 0.0 && vq > 0.0) || (vp > 0.0 && vq < 0.0)) {
            const double t = vp / (vp - vq);
            out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
        }
    }
    return out;
}

Polygon2D halfplane_envelope(std::span<const Point2> normals, std::span<const double> offsets,
                             double bx, double by)
{
    if (normals.size() != offsets.size())
        throw std::invalid_argument("halfplane_envelope: normals and offsets differ in length");
    std::vector<Point2> poly{{0.0, 0.0}, {bx, 0.0}, {bx, by}, {0.0, by}};
    for (std::size_t k = 0; k < normals.size(); ++k) {
        if (normals[k].x < 0.0 || normals[k].y < 0.0)
            throw std::invalid_argument("halfplane_envelope: normals must be nonnegative");
        if (!(offsets[k] > 0.0))
            throw std::invalid_argument("halfplane_envelope: offsets must be positive");
        poly = clip_halfplane(poly, normals[k], offsets[k]);
    }
    return Polygon2D::hull_of(poly);
}

double polygon_area(const std::vector<Point2>& closed)
{
    double s = 0.0;
    for (std::size_t i = 0; i < closed.size(); ++i) {
        const Point2 a = closed[i];
        const Point2 b = closed[(i + 1) % closed.size()];
        s += a.x * b.y - a.y * b.x;
    }
    return 0.5 * std::abs(s);
}

}  // namespace maxzonoid
