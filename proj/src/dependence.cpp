#include "maxzonoid/dependence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "maxzonoid/families.hpp"

namespace maxzonoid {

namespace {

void require_planar(const MaxStableModel& model, const char* what)
{
    if (model.dimension() != 2) throw std::invalid_argument(std::string(what) + ": needs d = 2");
}

MaxZonoid unit_cube(std::size_t d)
{
    return make_family({family::Independence{}, d}).zonoid();
}

}  // namespace

double extremal_coefficient(const MaxStableModel& model, std::uint64_t subset)
{
    const std::size_t d = model.dimension();
    if (subset == 0) throw std::invalid_argument("extremal_coefficient: subset must be nonempty");
    if (d < 64 && (subset >> d) != 0) throw std::invalid_argument("extremal_coefficient: subset exceeds the dimension");
    Vec e(d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
        if ((subset >> i) & 1U) e[i] = 1.0;
    return model.tail_dependence(e);
}

double chi(const MaxStableModel& model)
{
    require_planar(model, "chi");
    return 2.0 - model.tail_dependence(Vec{1.0, 1.0});
}

DependenceValue spearman_rho(const MaxStableModel& model, const VolumeMethod& method)
{
    const std::size_t d = model.dimension();
    if (d < 2) throw std::invalid_argument("spearman_rho: needs d >= 2");
    const MaxZonoid l = minkowski_combine(model.zonoid(), unit_cube(d), 0.5, CombineMode::sum);
    const VolumeEstimate v = polar_volume(l, method);
    double a = 0.0;
    double b = 0.0;
    if (d == 2) {
        a = 6.0;
        b = -3.0;
    } else {
        const double c = static_cast<double>(d + 1) / (std::ldexp(1.0, static_cast<int>(d)) - static_cast<double>(d) - 1.0);
        a = c * factorial(static_cast<int>(d));
        b = -c;
    }
    return {a * v.value + b, std::abs(a) * v.std_error, v.exact, v.samples, v.seed};
}

double kendall_tau_2d(const MaxStableModel& model, double tol)
{
    require_planar(model, "kendall_tau_2d");
    const MaxZonoid& k = model.zonoid();
    std::vector<double> breaks;
    if (const auto s = k.spectral(ReferenceNorm::l1)) {
        // the atom (a1, a2) is the edge with normal (a2, a1)
        for (const Atom& a : s->atoms()) breaks.push_back(a.point[1] / (a.point[0] + a.point[1]));
    }
    auto integrand = [&](double t) {
        const Vec x{t, 1.0 - t};
        const Vec y = k.support_point_max(x);
        const double h = k.support(x);
        return y[0] * y[1] / (h * h);
    };
    return 1.0 - adaptive_simpson_split(integrand, 0.0, 1.0, breaks, tol);
}

DependenceValue inverted_pearson_2d(const MaxStableModel& model, const VolumeMethod& method)
{
    require_planar(model, "inverted_pearson_2d");
    const VolumeEstimate v = polar_volume(model.zonoid(), method);
    return {2.0 * v.value - 1.0, 2.0 * v.std_error, v.exact, v.samples, v.seed};
}

DependenceValue multivariate_rho(const MaxStableModel& model, const VolumeMethod& method)
{
    const std::size_t d = model.dimension();
    if (d < 2) throw std::invalid_argument("multivariate_rho: needs d >= 2");
    const VolumeEstimate v = polar_volume(model.zonoid(), method);
    const double f = factorial(static_cast<int>(d));
    return {(f * v.value - 1.0) / (f - 1.0), f * v.std_error / (f - 1.0), v.exact, v.samples, v.seed};
}

namespace {

std::uint64_t count_inversions(std::vector<double>& v, std::vector<double>& buf, std::size_t lo, std::size_t hi)
{
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::uint64_t inv = count_inversions(v, buf, lo, mid) + count_inversions(v, buf, mid, hi);
    std::size_t i = lo;
    std::size_t j = mid;
    std::size_t k = lo;
    while (i < mid && j < hi) {
        if (v[j] < v[i]) {
            inv += mid - i;
            buf[k++] = v[j++];
        } else {
            buf[k++] = v[i++];
        }
    }
    while (i < mid) buf[k++] = v[i++];
    while (j < hi) buf[k++] = v[j++];
    std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo), buf.begin() + static_cast<std::ptrdiff_t>(hi),
              v.begin() + static_cast<std::ptrdiff_t>(lo));
    return inv;
}

}  // namespace

double empirical_kendall_tau(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("kendall tau: need two equal samples of size >= 2");
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ys(n), buf(n);
    for (std::size_t i = 0; i < n; ++i) ys[i] = y[order[i]];
    const double inv = static_cast<double>(count_inversions(ys, buf, 0, n));
    const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    return 1.0 - 2.0 * inv / pairs;
}

}  // namespace maxzonoid
