#include "maxzonoid/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "maxzonoid/families.hpp"

namespace maxzonoid {

namespace {

constexpr double kMarginalTol = 1e-9;

void check_size(std::span<const double> x, std::size_t d, const char* what)
{
    if (x.size() != d)
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(d) + " coordinates, got " +
                                    std::to_string(x.size()));
}

void check_unit_marginals(const SpectralMeasure& s)
{
    const Vec m = s.marginal_sums();
    for (std::size_t i = 0; i < m.size(); ++i)
        if (std::abs(m[i] - 1.0) > kMarginalTol)
            throw std::invalid_argument("spectral measure: marginal sum " + std::to_string(i + 1) + " is " +
                                        std::to_string(m[i]) + ", expected 1");
}

}  // namespace

MaxStableModel::MaxStableModel(DependencySet k) : k_(std::move(k))
{
    discrete_ = k_.zonoid().spectral(ReferenceNorm::l1);
}

MaxStableModel::MaxStableModel(DependencySet k, SpectralMeasure discrete) : k_(std::move(k)), discrete_(std::move(discrete))
{
    if (discrete_->dimension() != k_.dimension())
        throw std::invalid_argument("model: discrete form has the wrong dimension");
    check_unit_marginals(*discrete_);
}

MaxStableModel MaxStableModel::from_spectral(const SpectralMeasure& sigma)
{
    check_unit_marginals(sigma);
    return MaxStableModel(DependencySet(MaxZonoid(sigma)));
}

MaxStableModel MaxStableModel::with_discretization(std::size_t m) const
{
    if (!k_.zonoid().is_analytic()) return *this;
    Discretization disc = discretize(k_, m);
    MaxStableModel out(k_, std::move(disc.measure));
    out.discretization_error_ = disc.max_support_error;
    return out;
}

double cdf(const MaxStableModel& model, std::span<const double> x)
{
    check_size(x, model.dimension(), "cdf");
    Vec inv(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (std::isnan(x[i]) || x[i] < 0.0) throw std::invalid_argument("cdf: coordinates must be nonnegative");
        if (x[i] == 0.0) return 0.0;
        inv[i] = std::isinf(x[i]) ? 0.0 : 1.0 / x[i];
    }
    return std::exp(-model.tail_dependence(inv));
}

double copula(const MaxStableModel& model, std::span<const double> u)
{
    check_size(u, model.dimension(), "copula");
    Vec y(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!(u[i] >= 0.0 && u[i] <= 1.0)) throw std::invalid_argument("copula: arguments must lie in [0,1]");
        if (u[i] == 0.0) return 0.0;
        y[i] = -std::log(u[i]);
    }
    return std::exp(-model.tail_dependence(y));
}

double pickands(const MaxStableModel& model, std::span<const double> t)
{
    const std::size_t d = model.dimension();
    check_size(t, d - 1, "pickands");
    Vec x(d);
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < d; ++i) {
        if (!(t[i] >= 0.0)) throw std::invalid_argument("pickands: t must lie in the unit simplex");
        x[i] = t[i];
        s += t[i];
    }
    if (s > 1.0 + 1e-12) throw std::invalid_argument("pickands: t must lie in the unit simplex");
    x[d - 1] = std::max(0.0, 1.0 - s);
    return model.tail_dependence(x);
}

double pickands(const MaxStableModel& model, double t)
{
    if (model.dimension() != 2) throw std::invalid_argument("pickands: scalar argument needs d = 2");
    return pickands(model, std::span<const double>(&t, 1));
}

std::vector<Point2> quantile_curve(const MaxStableModel& model, double alpha, std::size_t points_n)
{
    if (model.dimension() != 2) throw std::invalid_argument("quantile_curve: needs d = 2");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("quantile_curve: alpha must lie in (0,1)");
    if (points_n < 2) throw std::invalid_argument("quantile_curve: need at least two points");
    const double c = -std::log(alpha);

    // polar angles; the ray through v meets the polar boundary at v/h(v)
    std::vector<double> angles;
    for (std::size_t k = 1; k <= points_n; ++k)
        angles.push_back(std::numbers::pi / 2.0 * static_cast<double>(k) / static_cast<double>(points_n + 1));
    if (!model.zonoid().is_analytic()) {
        const Polygon2D polar = polar_2d(model.zonoid());
        for (const Point2& v : polar.vertices())
            if (v.x > 0.0 && v.y > 0.0) angles.push_back(std::atan2(v.y, v.x));
    }
    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end(), [](double a, double b) { return std::abs(a - b) < 1e-14; }),
                 angles.end());

    std::vector<Point2> out;
    out.reserve(angles.size());
    for (double phi : angles) {
        const Vec v{std::cos(phi), std::sin(phi)};
        const double h = model.tail_dependence(v);
        out.push_back({h / (c * v[0]), h / (c * v[1])});
    }
    return out;
}

std::vector<double> SampleMatrix::column(std::size_t j) const
{
    std::vector<double> out(rows);
    for (std::size_t i = 0; i < rows; ++i) out[i] = at(i, j);
    return out;
}

SampleMatrix simulate(const MaxStableModel& model, long long n, std::uint64_t seed)
{
    if (n <= 0) throw std::invalid_argument("simulate: sample size must be positive");
    if (!model.discrete())
        throw std::invalid_argument("simulate: the model needs a discrete spectral form (discretize it first)");
    const SpectralMeasure& s = *model.discrete();
    check_unit_marginals(s);
    const std::size_t d = model.dimension();

    // matrix rows w_k * a_k on the l1 simplex; column sums are the marginals
    std::vector<Vec> rows;
    const SpectralMeasure simplex = rebase_reference(s, ReferenceNorm::l1);
    for (const Atom& a : simplex.atoms()) {
        Vec r = a.point;
        for (double& v : r) v *= a.mass;
        rows.push_back(std::move(r));
    }

    SampleMatrix out;
    out.rows = static_cast<std::size_t>(n);
    out.cols = d;
    out.seed = seed;
    out.data.assign(out.rows * d, 0.0);
    const std::size_t chunks = (out.rows + kMcChunk - 1) / kMcChunk;
    for (std::size_t c = 0; c < chunks; ++c) {
        Rng rng(chunk_seed(seed, c));
        const std::size_t end = std::min(out.rows, (c + 1) * kMcChunk);
        for (std::size_t i = c * kMcChunk; i < end; ++i) {
            double* xi = out.data.data() + i * d;
            for (const Vec& r : rows) {
                const double z = rng.frechet();
                for (std::size_t j = 0; j < d; ++j) xi[j] = std::max(xi[j], z * r[j]);
            }
        }
    }
    return out;
}

namespace {

/// d-th mixed partial of h at x by central differences with steps delta_i.
double mixed_partial(const MaxZonoid& k, const Vec& x, const Vec& delta)
{
    const std::size_t d = x.size();
    const auto* an = std::get_if<AnalyticNorm>(&k.representation());
    if (an && an->gradient) {
        // differentiate the first gradient component in the remaining coordinates
        double acc = 0.0;
        const std::size_t corners = std::size_t{1} << (d - 1);
        for (std::size_t mask = 0; mask < corners; ++mask) {
            Vec y = x;
            double sign = 1.0;
            for (std::size_t i = 1; i < d; ++i) {
                const bool up = (mask >> (i - 1)) & 1U;
                y[i] += up ? delta[i] : -delta[i];
                if (!up) sign = -sign;
            }
            acc += sign * an->gradient(y)[0];
        }
        double denom = 1.0;
        for (std::size_t i = 1; i < d; ++i) denom *= 2.0 * delta[i];
        return acc / denom;
    }
    double acc = 0.0;
    const std::size_t corners = std::size_t{1} << d;
    for (std::size_t mask = 0; mask < corners; ++mask) {
        Vec y = x;
        double sign = 1.0;
        for (std::size_t i = 0; i < d; ++i) {
            const bool up = (mask >> i) & 1U;
            y[i] += up ? delta[i] : -delta[i];
            if (!up) sign = -sign;
        }
        acc += sign * k.support(y);
    }
    double denom = 1.0;
    for (std::size_t i = 0; i < d; ++i) denom *= 2.0 * delta[i];
    return acc / denom;
}

}  // namespace

double exponent_density(const MaxStableModel& model, std::span<const double> z)
{
    const std::size_t d = model.dimension();
    check_size(z, d, "exponent_density");
    if (d != 2 && d != 3) throw std::invalid_argument("exponent_density: supported for d = 2 and d = 3");
    if (!model.zonoid().is_analytic()) {
        // atoms on the faces of the simplex put no mass in the interior
        const std::optional<SpectralMeasure> atoms = model.zonoid().spectral(ReferenceNorm::l1);
        const bool interior = !atoms || std::any_of(atoms->atoms().begin(), atoms->atoms().end(), [](const Atom& a) {
            return std::all_of(a.point.begin(), a.point.end(), [](double v) { return v > 0.0; });
        });
        if (interior)
            throw std::invalid_argument(
                "exponent_density: the exponent measure of a discrete or polygonal model has no density; "
                "inspect its spectral atoms instead");
        for (double v : z)
            if (!(v > 0.0) || std::isinf(v)) throw std::invalid_argument("exponent_density: z must be interior");
        return 0.0;
    }
    Vec x(d);
    double jac = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
        if (!(z[i] > 0.0) || std::isinf(z[i])) throw std::invalid_argument("exponent_density: z must be interior");
        x[i] = 1.0 / z[i];
        jac /= z[i] * z[i];
    }
    const double rel = d == 2 ? 1e-4 : 1e-3;
    Vec delta(d), half(d);
    for (std::size_t i = 0; i < d; ++i) {
        delta[i] = rel * x[i];
        half[i] = 0.5 * delta[i];
    }
    const double coarse = mixed_partial(model.zonoid(), x, delta);
    const double fine = mixed_partial(model.zonoid(), x, half);
    const double mixed = (4.0 * fine - coarse) / 3.0;
    const double sign = d % 2 == 0 ? -1.0 : 1.0;
    return sign * mixed * jac;
}

double exponent_box_mass(const MaxStableModel& model, std::span<const double> a, std::span<const double> b)
{
    const std::size_t d = model.dimension();
    check_size(a, d, "exponent_box_mass");
    check_size(b, d, "exponent_box_mass");
    for (std::size_t i = 0; i < d; ++i)
        if (!(a[i] > 0.0 && b[i] > a[i] && std::isfinite(b[i])))
            throw std::invalid_argument("exponent_box_mass: need 0 < a < b < inf");
    // U(z) = mu{y : y > z} by inclusion-exclusion over V(z) = h(z*) restricted to subsets
    auto upper = [&](const Vec& zc) {
        double u = 0.0;
        const std::size_t subsets = std::size_t{1} << d;
        for (std::size_t mask = 1; mask < subsets; ++mask) {
            Vec x(d, 0.0);
            int bits = 0;
            for (std::size_t i = 0; i < d; ++i)
                if ((mask >> i) & 1U) {
                    x[i] = 1.0 / zc[i];
                    ++bits;
                }
            u += (bits % 2 == 1 ? 1.0 : -1.0) * model.tail_dependence(x);
        }
        return u;
    };
    double mass = 0.0;
    const std::size_t corners = std::size_t{1} << d;
    for (std::size_t mask = 0; mask < corners; ++mask) {
        Vec zc(d);
        int highs = 0;
        for (std::size_t i = 0; i < d; ++i) {
            const bool hi = (mask >> i) & 1U;
            zc[i] = hi ? b[i] : a[i];
            highs += hi;
        }
        mass += (highs % 2 == 0 ? 1.0 : -1.0) * upper(zc);
    }
    return mass;
}

double max_stability_check(const CdfFunction& f, int n_fold, std::span<const Vec> grid)
{
    if (n_fold < 2) throw std::invalid_argument("max_stability_check: n_fold must be at least 2");
    double worst = 0.0;
    for (const Vec& x : grid) {
        Vec nx = x;
        for (double& v : nx) v *= n_fold;
        worst = std::max(worst, std::abs(std::pow(f(nx), n_fold) - f(x)));
    }
    return worst;
}

double max_stability_check(const MaxStableModel& model, int n_fold, std::span<const Vec> grid)
{
    return max_stability_check([&](std::span<const double> x) { return cdf(model, x); }, n_fold, grid);
}

std::vector<Vec> positive_grid(std::size_t d, std::size_t count, double upper)
{
    std::vector<Vec> out;
    for (std::size_t i = 1; i <= count; ++i) {
        Vec p = halton_point(i, d);
        for (double& v : p) v *= upper;
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace maxzonoid
