#include "maxzonoid/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace maxzonoid {

namespace {

void check_direction(std::span<const double> x, std::size_t dim)
{
    if (x.size() != dim)
        throw std::invalid_argument("support: direction has dimension " + std::to_string(x.size()) +
                                    ", expected " + std::to_string(dim));
    for (double v : x)
        if (!(v >= 0.0)) throw std::invalid_argument("support: directions must lie in the closed nonnegative orthant");
}

Vec basis(std::size_t dim, std::size_t i)
{
    Vec e(dim, 0.0);
    e[i] = 1.0;
    return e;
}

/// Atoms scaled coordinatewise by lambda (entries >= 0) and rebased; atoms
/// that vanish are dropped.
SpectralMeasure scale_atoms(const SpectralMeasure& sigma, std::span<const double> lambda)
{
    std::vector<WeightedPoint> pts;
    pts.reserve(sigma.atoms().size());
    for (const Atom& a : sigma.atoms()) {
        WeightedPoint w{a.point, a.mass};
        for (std::size_t i = 0; i < w.point.size(); ++i) w.point[i] *= lambda[i];
        pts.push_back(std::move(w));
    }
    return spectral_from_points(pts, sigma.dimension(), sigma.reference());
}

ReferenceNorm preferred_reference(const MaxZonoid& k)
{
    if (const auto* s = std::get_if<SpectralMeasure>(&k.representation())) return s->reference();
    return ReferenceNorm::l1;
}

double analytic_support(const AnalyticNorm& n, std::span<const double> x)
{
    bool has_inf = false;
    for (double v : x) has_inf = has_inf || std::isinf(v);
    if (!has_inf) return n.value(x);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isinf(x[i])) continue;
        const Vec e = basis(x.size(), i);
        if (n.value(e) > 0.0) return kInf;
    }
    Vec finite(x.begin(), x.end());
    for (double& v : finite)
        if (std::isinf(v)) v = 0.0;
    return n.value(finite);
}

}  // namespace

MaxZonoid::MaxZonoid(SpectralMeasure sigma) : rep_(std::move(sigma)), dim_(std::get<SpectralMeasure>(rep_).dimension()) {}

MaxZonoid::MaxZonoid(Polygon2D polygon) : rep_(std::move(polygon)), dim_(2) {}

MaxZonoid::MaxZonoid(AnalyticNorm norm) : rep_(std::move(norm)), dim_(std::get<AnalyticNorm>(rep_).dim)
{
    const auto& n = std::get<AnalyticNorm>(rep_);
    if (n.dim == 0 || !n.value) throw std::invalid_argument("analytic norm needs a dimension and a value function");
}

double MaxZonoid::support(std::span<const double> x) const
{
    check_direction(x, dim_);
    return std::visit(
        [&](const auto& r) -> double {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, SpectralMeasure>) return r.support(x);
            else if constexpr (std::is_same_v<T, Polygon2D>) return r.support(x[0], x[1]);
            else return analytic_support(r, x);
        },
        rep_);
}

double MaxZonoid::support_full(std::span<const double> u) const
{
    Vec plus(u.begin(), u.end());
    for (double& v : plus) v = std::max(v, 0.0);
    return support(plus);
}

std::optional<SpectralMeasure> MaxZonoid::spectral(ReferenceNorm ref) const
{
    if (const auto* s = std::get_if<SpectralMeasure>(&rep_)) return rebase_reference(*s, ref);
    if (const auto* p = std::get_if<Polygon2D>(&rep_)) return spectral_from_polygon_2d(*p, ref);
    return std::nullopt;
}

Vec MaxZonoid::support_point_max(std::span<const double> x) const
{
    check_direction(x, dim_);
    Vec y(dim_, 0.0);
    if (const auto* s = std::get_if<SpectralMeasure>(&rep_)) {
        for (const Atom& a : s->atoms()) {
            double best = 0.0;
            for (std::size_t i = 0; i < dim_; ++i) best = std::max(best, a.point[i] * x[i]);
            const double tol = 1e-13 * best;
            for (std::size_t i = 0; i < dim_; ++i)
                if (a.point[i] > 0.0 && a.point[i] * x[i] >= best - tol) y[i] += a.mass * a.point[i];
        }
        return y;
    }
    if (const auto* p = std::get_if<Polygon2D>(&rep_)) {
        const double best = p->support(x[0], x[1]);
        const double tol = 1e-13 * std::max(best, 1.0);
        for (const Point2& v : p->vertices()) {
            if (v.x * x[0] + v.y * x[1] >= best - tol) {
                y[0] = std::max(y[0], v.x);
                y[1] = std::max(y[1], v.y);
            }
        }
        return y;
    }
    const auto& n = std::get<AnalyticNorm>(rep_);
    if (n.gradient) return n.gradient(x);
    Vec xp(x.begin(), x.end());
    for (std::size_t i = 0; i < dim_; ++i) {
        const double h = 1e-6 * std::max(1.0, std::abs(x[i]));
        Vec up = xp;
        Vec dn = xp;
        up[i] += h;
        if (xp[i] >= h) {
            dn[i] -= h;
            y[i] = (n.value(up) - n.value(dn)) / (2.0 * h);
        } else {
            y[i] = (n.value(up) - n.value(xp)) / h;
        }
    }
    return y;
}

std::string MaxZonoid::describe() const
{
    std::ostringstream os;
    std::visit(
        [&](const auto& r) {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, SpectralMeasure>)
                os << "spectral(" << to_string(r.reference()) << ", " << r.atoms().size() << " atoms, d=" << dim_ << ")";
            else if constexpr (std::is_same_v<T, Polygon2D>)
                os << "polygon(" << r.vertices().size() << " vertices)";
            else
                os << "analytic(" << r.label << ", d=" << dim_ << ")";
        },
        rep_);
    return os.str();
}

DependencySet::DependencySet(MaxZonoid zonoid, double tol) : zonoid_(std::move(zonoid))
{
    for (std::size_t i = 0; i < zonoid_.dimension(); ++i) {
        const double v = zonoid_.support(basis(zonoid_.dimension(), i));
        if (!(std::abs(v - 1.0) <= tol))
            throw std::invalid_argument("dependency set: h(e_" + std::to_string(i + 1) + ") = " + std::to_string(v) +
                                        ", expected 1");
    }
}

double support_function(const MaxZonoid& k, std::span<const double> x) { return k.support(x); }

MaxZonoid scale(const MaxZonoid& k, std::span<const double> lambda)
{
    if (lambda.size() != k.dimension()) throw std::invalid_argument("scale: lambda has wrong dimension");
    for (double l : lambda)
        if (!(l > 0.0) || !std::isfinite(l)) throw std::invalid_argument("scale: lambda entries must be positive and finite");
    if (const auto* p = std::get_if<Polygon2D>(&k.representation())) {
        std::vector<Point2> chain = p->vertices();
        for (Point2& v : chain) v = {v.x * lambda[0], v.y * lambda[1]};
        return MaxZonoid(Polygon2D::general(std::move(chain)));
    }
    if (auto s = k.spectral(preferred_reference(k))) return MaxZonoid(scale_atoms(*s, lambda));
    const auto& n = std::get<AnalyticNorm>(k.representation());
    Vec lam(lambda.begin(), lambda.end());
    AnalyticNorm out;
    out.dim = n.dim;
    out.label = "scaled " + n.label;
    out.value = [n, lam](std::span<const double> x) {
        Vec y(x.begin(), x.end());
        for (std::size_t i = 0; i < y.size(); ++i) y[i] *= lam[i];
        return n.value(y);
    };
    if (n.gradient) {
        out.gradient = [n, lam](std::span<const double> x) {
            Vec y(x.begin(), x.end());
            for (std::size_t i = 0; i < y.size(); ++i) y[i] *= lam[i];
            Vec g = n.gradient(y);
            for (std::size_t i = 0; i < g.size(); ++i) g[i] *= lam[i];
            return g;
        };
    }
    return MaxZonoid(std::move(out));
}

MaxZonoid project(const MaxZonoid& k, std::span<const std::size_t> coords)
{
    if (coords.empty()) throw std::invalid_argument("project: coordinate subset must be nonempty");
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] >= k.dimension()) throw std::invalid_argument("project: coordinate out of range");
        if (i > 0 && coords[i] <= coords[i - 1])
            throw std::invalid_argument("project: coordinates must be strictly increasing");
    }
    const std::size_t d = coords.size();
    if (auto s = k.spectral(preferred_reference(k))) {
        std::vector<WeightedPoint> pts;
        for (const Atom& a : s->atoms()) {
            WeightedPoint w{Vec(d), a.mass};
            for (std::size_t i = 0; i < d; ++i) w.point[i] = a.point[coords[i]];
            pts.push_back(std::move(w));
        }
        return MaxZonoid(spectral_from_points(pts, d, s->reference()));
    }
    const auto& n = std::get<AnalyticNorm>(k.representation());
    std::vector<std::size_t> idx(coords.begin(), coords.end());
    AnalyticNorm out;
    out.dim = d;
    out.label = "projected " + n.label;
    const std::size_t full = k.dimension();
    out.value = [n, idx, full](std::span<const double> x) {
        Vec y(full, 0.0);
        for (std::size_t i = 0; i < idx.size(); ++i) y[idx[i]] = x[i];
        return n.value(y);
    };
    if (n.gradient) {
        out.gradient = [n, idx, full](std::span<const double> x) {
            Vec y(full, 0.0);
            for (std::size_t i = 0; i < idx.size(); ++i) y[idx[i]] = x[i];
            const Vec g = n.gradient(y);
            Vec r(idx.size());
            for (std::size_t i = 0; i < idx.size(); ++i) r[i] = g[idx[i]];
            return r;
        };
    }
    return MaxZonoid(std::move(out));
}

MaxZonoid cartesian_product(const MaxZonoid& k1, const MaxZonoid& k2)
{
    const std::size_t d1 = k1.dimension();
    const std::size_t d2 = k2.dimension();
    const ReferenceNorm ref = preferred_reference(k1);
    auto s1 = k1.spectral(ref);
    auto s2 = k2.spectral(ref);
    if (s1 && s2) {
        std::vector<Atom> atoms;
        for (const Atom& a : s1->atoms()) {
            Atom b{Vec(d1 + d2, 0.0), a.mass};
            std::copy(a.point.begin(), a.point.end(), b.point.begin());
            atoms.push_back(std::move(b));
        }
        for (const Atom& a : s2->atoms()) {
            Atom b{Vec(d1 + d2, 0.0), a.mass};
            std::copy(a.point.begin(), a.point.end(), b.point.begin() + static_cast<std::ptrdiff_t>(d1));
            atoms.push_back(std::move(b));
        }
        return MaxZonoid(SpectralMeasure(ref, d1 + d2, std::move(atoms)));
    }
    AnalyticNorm out;
    out.dim = d1 + d2;
    out.label = "product";
    out.value = [k1, k2, d1](std::span<const double> x) {
        return k1.support(x.subspan(0, d1)) + k2.support(x.subspan(d1));
    };
    out.gradient = [k1, k2, d1](std::span<const double> x) {
        Vec g = k1.support_point_max(x.subspan(0, d1));
        const Vec g2 = k2.support_point_max(x.subspan(d1));
        g.insert(g.end(), g2.begin(), g2.end());
        return g;
    };
    return MaxZonoid(std::move(out));
}

NegativeMassError::NegativeMassError(Vec atom, double deficit)
    : std::invalid_argument([&] {
          std::ostringstream os;
          os << "minkowski difference: negative mass " << -deficit << " at atom (";
          for (std::size_t i = 0; i < atom.size(); ++i) os << (i ? "," : "") << atom[i];
          os << ")";
          return os.str();
      }()),
      atom_(std::move(atom)),
      deficit_(deficit)
{
}

MaxZonoid minkowski_combine(const MaxZonoid& k1, const MaxZonoid& k2, std::span<const double> lambda,
                            CombineMode mode)
{
    const std::size_t d = k1.dimension();
    if (k2.dimension() != d) throw std::invalid_argument("minkowski_combine: dimensions differ");
    if (lambda.size() != d) throw std::invalid_argument("minkowski_combine: lambda has wrong dimension");
    for (double l : lambda) {
        if (!std::isfinite(l) || l < 0.0) throw std::invalid_argument("minkowski_combine: lambda must be nonnegative");
        if (mode == CombineMode::sum && l > 1.0) throw std::invalid_argument("minkowski_combine: lambda must lie in [0,1]");
    }
    const ReferenceNorm ref = preferred_reference(k1);
    auto s1 = k1.spectral(ref);
    auto s2 = k2.spectral(ref);

    if (mode == CombineMode::difference) {
        if (!s1 || !s2) throw std::invalid_argument("minkowski difference needs discrete spectral measures");
        const SpectralMeasure sub = scale_atoms(*s2, lambda);
        std::vector<Atom> atoms = s1->atoms();
        for (const Atom& b : sub.atoms()) {
            auto it = std::find_if(atoms.begin(), atoms.end(), [&](const Atom& a) {
                double d2 = 0.0;
                for (std::size_t i = 0; i < d; ++i) d2 += (a.point[i] - b.point[i]) * (a.point[i] - b.point[i]);
                return std::sqrt(d2) < 1e-9;
            });
            if (it == atoms.end()) throw NegativeMassError(b.point, -b.mass);
            const double left = it->mass - b.mass;
            if (left < -1e-12 * std::max(1.0, b.mass)) throw NegativeMassError(b.point, left);
            it->mass = std::max(left, 0.0);
            if (it->mass <= 1e-12 * std::max(1.0, b.mass)) it->mass = 0.0;
        }
        SpectralMeasure out(ref, d, std::move(atoms));
        if (out.empty()) throw std::invalid_argument("minkowski difference: result is the trivial body {0}");
        return MaxZonoid(std::move(out));
    }

    Vec rest(d);
    for (std::size_t i = 0; i < d; ++i) rest[i] = 1.0 - lambda[i];
    if (s1 && s2) {
        std::vector<Atom> atoms = scale_atoms(*s1, lambda).atoms();
        const auto more = scale_atoms(*s2, rest).atoms();
        atoms.insert(atoms.end(), more.begin(), more.end());
        return MaxZonoid(SpectralMeasure(ref, d, std::move(atoms)));
    }
    Vec lam(lambda.begin(), lambda.end());
    AnalyticNorm out;
    out.dim = d;
    out.label = "minkowski sum";
    out.value = [k1, k2, lam, rest](std::span<const double> x) {
        Vec a(x.begin(), x.end());
        Vec b(x.begin(), x.end());
        for (std::size_t i = 0; i < a.size(); ++i) {
            a[i] *= lam[i];
            b[i] *= rest[i];
        }
        return k1.support(a) + k2.support(b);
    };
    out.gradient = [k1, k2, lam, rest](std::span<const double> x) {
        Vec a(x.begin(), x.end());
        Vec b(x.begin(), x.end());
        for (std::size_t i = 0; i < a.size(); ++i) {
            a[i] *= lam[i];
            b[i] *= rest[i];
        }
        Vec g1 = k1.support_point_max(a);
        const Vec g2 = k2.support_point_max(b);
        for (std::size_t i = 0; i < g1.size(); ++i) g1[i] = lam[i] * g1[i] + rest[i] * g2[i];
        return g1;
    };
    return MaxZonoid(std::move(out));
}

MaxZonoid minkowski_combine(const MaxZonoid& k1, const MaxZonoid& k2, double lambda, CombineMode mode)
{
    const Vec lam(k1.dimension(), lambda);
    return minkowski_combine(k1, k2, lam, mode);
}

Polygon2D to_polygon_2d(const MaxZonoid& k, std::size_t directions)
{
    if (k.dimension() != 2) throw std::invalid_argument("to_polygon_2d: body must be planar");
    if (const auto* p = std::get_if<Polygon2D>(&k.representation())) return *p;
    if (const auto* s = std::get_if<SpectralMeasure>(&k.representation())) return polygon_from_spectral_2d(*s);
    std::vector<Point2> normals;
    std::vector<double> offsets;
    for (const Vec& u : orthant_directions(2, directions)) {
        normals.push_back({u[0], u[1]});
        offsets.push_back(k.support(u));
    }
    return halfplane_envelope(normals, offsets, k.support(Vec{1.0, 0.0}), k.support(Vec{0.0, 1.0}));
}

DependencySet combine_2d(const DependencySet& k1, const DependencySet& k2, Combine2dMode mode, PowerMean power,
                         std::size_t envelope_directions)
{
    if (k1.dimension() != 2 || k2.dimension() != 2)
        throw std::invalid_argument("combine_2d: both dependency sets must be planar");
    switch (mode) {
    case Combine2dMode::hull: {
        const Polygon2D p1 = to_polygon_2d(k1.zonoid(), envelope_directions);
        const Polygon2D p2 = to_polygon_2d(k2.zonoid(), envelope_directions);
        std::vector<Point2> pts = p1.vertices();
        pts.insert(pts.end(), p2.vertices().begin(), p2.vertices().end());
        return DependencySet(MaxZonoid(Polygon2D(Polygon2D::hull_of(pts).vertices())));
    }
    case Combine2dMode::intersection: {
        const Polygon2D p1 = to_polygon_2d(k1.zonoid(), envelope_directions);
        const Polygon2D p2 = to_polygon_2d(k2.zonoid(), envelope_directions);
        std::vector<Point2> poly = p1.closed();
        const std::vector<Point2> clip = p2.closed();
        for (std::size_t i = 0; i < clip.size(); ++i) {
            const Point2 a = clip[i];
            const Point2 b = clip[(i + 1) % clip.size()];
            const Point2 n{b.y - a.y, a.x - b.x};
            poly = clip_halfplane(poly, n, n.x * a.x + n.y * a.y);
        }
        return DependencySet(MaxZonoid(Polygon2D(Polygon2D::hull_of(poly).vertices())));
    }
    case Combine2dMode::power_mean: {
        if (!(power.p >= 1.0) || !std::isfinite(power.p)) throw std::invalid_argument("power mean: p must be >= 1");
        if (!(power.lambda >= 0.0 && power.lambda <= 1.0))
            throw std::invalid_argument("power mean: lambda must lie in [0,1]");
        std::vector<Point2> normals;
        std::vector<double> offsets;
        for (const Vec& u : orthant_directions(2, envelope_directions)) {
            const double h1 = k1.support(u);
            const double h2 = k2.support(u);
            normals.push_back({u[0], u[1]});
            offsets.push_back(std::pow(power.lambda * std::pow(h1, power.p) + (1.0 - power.lambda) * std::pow(h2, power.p),
                                       1.0 / power.p));
        }
        const Polygon2D env = halfplane_envelope(normals, offsets, 1.0, 1.0);
        return DependencySet(MaxZonoid(Polygon2D(env.vertices())));
    }
    }
    throw std::invalid_argument("combine_2d: unknown mode");
}

Polygon2D polar_2d(const MaxZonoid& k, std::size_t directions)
{
    if (k.dimension() != 2) throw std::invalid_argument("polar_2d: body must be planar");
    const double h1 = k.support(Vec{1.0, 0.0});
    const double h2 = k.support(Vec{0.0, 1.0});
    if (!(h1 > 0.0) || !(h2 > 0.0)) throw std::invalid_argument("polar_2d: body must reach both axes");
    if (k.is_analytic()) {
        std::vector<Point2> pts;
        for (const Vec& u : orthant_directions(2, directions)) {
            const double h = k.support(u);
            pts.push_back({u[0] / h, u[1] / h});
        }
        return Polygon2D::hull_of(pts);
    }
    const Polygon2D p = to_polygon_2d(k);
    std::vector<Point2> normals;
    std::vector<double> offsets;
    for (const Point2& v : p.vertices()) {
        normals.push_back(v);
        offsets.push_back(1.0);
    }
    return halfplane_envelope(normals, offsets, 1.0 / h1, 1.0 / h2);
}

VolumeEstimate polar_volume(const MaxZonoid& k, const VolumeMethod& method)
{
    const std::size_t d = k.dimension();
    VolumeEstimate out;
    if (std::holds_alternative<ExactVolume>(method)) {
        out.exact = true;
        if (d == 1) {
            out.value = 1.0 / k.support(Vec{1.0});
            return out;
        }
        if (d != 2) throw std::invalid_argument("polar_volume: exact path is only available in the plane");
        if (k.is_analytic()) {
            auto f = [&](double t) {
                const double h = k.support(Vec{t, 1.0 - t});
                return 1.0 / (h * h);
            };
            out.value = 0.5 * adaptive_simpson(f, 0.0, 1.0, 1e-13);
        } else {
            out.value = polar_2d(k).area();
        }
        return out;
    }
    const auto& mc = std::get<MonteCarloVolume>(method);
    Vec box(d);
    double box_volume = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
        const double h = k.support(basis(d, i));
        if (!(h > 0.0)) throw std::invalid_argument("polar_volume: body must reach every axis");
        box[i] = 1.0 / h;
        box_volume *= box[i];
    }
    const McMoments m = mc_mean(mc.samples, mc.seed, [&](Rng& rng) {
        Vec x(d);
        for (std::size_t i = 0; i < d; ++i) x[i] = box[i] * rng.uniform();
        return k.support(x) <= 1.0 ? 1.0 : 0.0;
    });
    const double p = m.mean;
    out.value = box_volume * p;
    out.std_error = box_volume * std::sqrt(p * (1.0 - p) / static_cast<double>(mc.samples));
    out.samples = mc.samples;
    out.seed = mc.seed;
    return out;
}

double hausdorff_distance(const MaxZonoid& k1, const MaxZonoid& k2, std::size_t grid_n)
{
    const std::size_t d = k1.dimension();
    if (k2.dimension() != d) throw std::invalid_argument("hausdorff_distance: dimensions differ");
    if (grid_n == 0) grid_n = default_grid(d);
    double worst = 0.0;
    for (const Vec& u : sphere_directions(d, grid_n))
        worst = std::max(worst, std::abs(k1.support_full(u) - k2.support_full(u)));
    return worst;
}

MDistance m_distance(const DependencySet& k1, const DependencySet& k2, std::size_t grid_n)
{
    const std::size_t d = k1.dimension();
    if (k2.dimension() != d) throw std::invalid_argument("m_distance: dimensions differ");
    if (grid_n == 0) grid_n = default_grid(d);
    const std::vector<Vec> dirs = orthant_directions(d, grid_n);
    Vec h1(dirs.size());
    Vec h2(dirs.size());
    for (std::size_t j = 0; j < dirs.size(); ++j) {
        h1[j] = k1.support(dirs[j]);
        h2[j] = k2.support(dirs[j]);
    }
    constexpr double kSlack = 1e-12;
    // K1 in lambda K2 and K2 in lambda K1, via support dominance.
    auto feasible = [&](const Vec& mu) {
        Vec x(d);
        for (std::size_t j = 0; j < dirs.size(); ++j) {
            for (std::size_t i = 0; i < d; ++i) x[i] = std::exp(mu[i]) * dirs[j][i];
            if (h1[j] > k2.support(x) * (1.0 + kSlack)) return false;
            if (h2[j] > k1.support(x) * (1.0 + kSlack)) return false;
        }
        return true;
    };
    // smallest feasible value of mu[i] with the other coordinates fixed;
    // feasibility is monotone in every coordinate
    auto shrink = [&](Vec& mu, std::size_t i, double tol) {
        double hi = mu[i];
        double lo = hi - 1.0;
        Vec probe = mu;
        for (;;) {
            probe[i] = lo;
            if (!feasible(probe)) break;
            hi = lo;
            lo -= 2.0 * (hi - lo + 1.0);
            if (lo < -50.0) break;
        }
        while (hi - lo > tol) {
            probe[i] = 0.5 * (lo + hi);
            if (feasible(probe)) hi = probe[i];
            else lo = probe[i];
        }
        mu[i] = hi;
    };

    // K2 lies in the unit cube, which lies in d times the unit cross-polytope,
    // which lies in d K1: mu = log d is always feasible.
    double lo = 0.0;
    double hi = std::log(static_cast<double>(d));
    if (feasible(Vec(d, lo))) hi = lo;
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        if (feasible(Vec(d, mid))) hi = mid;
        else lo = mid;
    }
    Vec mu(d, hi);
    auto total = [](const Vec& m) {
        double s = 0.0;
        for (double v : m) s += v;
        return s;
    };
    for (std::size_t i = 0; i < d; ++i) shrink(mu, i, 1e-12);
    for (double step = 0.25; step > 1e-9; step *= 0.5) {
        bool improved = true;
        while (improved) {
            improved = false;
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t j = 0; j < d; ++j) {
                    if (i == j) continue;
                    Vec trial = mu;
                    trial[i] += step;
                    shrink(trial, j, step * 1e-3);
                    if (total(trial) < total(mu) - 1e-13) {
                        mu = trial;
                        improved = true;
                    }
                }
            }
        }
    }
    MDistance out;
    out.value = total(mu);
    out.lambda.resize(d);
    for (std::size_t i = 0; i < d; ++i) out.lambda[i] = std::exp(mu[i]);
    return out;
}

}  // namespace maxzonoid
