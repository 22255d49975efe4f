#pragma once

#include <span>
#include <vector>

namespace maxzonoid {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline double cross(Point2 o, Point2 a, Point2 b)
{
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

/// Vertex dedup and normalization tolerance for planar bodies.
inline constexpr double kGeomTol = 1e-9;

/// Convex polygon in the nonnegative quadrant that contains the origin and is
/// closed under moving points toward the axes (a planar max-zonoid). Stored as
/// the anticlockwise boundary chain from the x-axis endpoint (a, 0) to the
/// y-axis endpoint (0, b); the origin is implicit.
///
/// The plain constructor demands a dependency polygon: a = b = 1 and all
/// vertices inside the unit square. `general` accepts any positive a and b.
class Polygon2D {
public:
    explicit Polygon2D(std::vector<Point2> chain);

    static Polygon2D general(std::vector<Point2> chain);

    /// Smallest planar max-zonoid containing the points: the convex hull of the
    /// points, their projections onto both axes, and the origin.
    static Polygon2D hull_of(std::span<const Point2> points);

    const std::vector<Point2>& vertices() const { return chain_; }

    /// True when the endpoints are e1 and e2 and the chain lies in the unit square.
    bool is_dependency(double tol = kGeomTol) const;

    /// Support value for x in the closed quadrant; +infinity coordinates allowed.
    double support(double x1, double x2) const;

    /// Boundary including the origin, anticlockwise.
    std::vector<Point2> closed() const;

    double area() const;

private:
    Polygon2D() = default;
    static std::vector<Point2> tidy_chain(std::vector<Point2> chain);
    std::vector<Point2> chain_;
};

/// Clip a closed convex polygon (anticlockwise) to {p : n.p <= offset}.
std::vector<Point2> clip_halfplane(const std::vector<Point2>& polygon, Point2 normal, double offset);

/// Intersection of the box [0, bx] x [0, by] with the half-planes
/// {p : normals[k].p <= offsets[k]}; every normal must be nonnegative.
Polygon2D halfplane_envelope(std::span<const Point2> normals, std::span<const double> offsets,
                             double bx, double by);

/// Shoelace area of a closed polygon.
double polygon_area(const std::vector<Point2>& closed);

}  // namespace maxzonoid
