#include "maxzonoid/numerics.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/erf.hpp>

namespace maxzonoid {

double factorial(int n)
{
    double r = 1.0;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                    double fm, double fb, double whole, double tol, int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double abs_tol,
                        int max_depth)
{
    if (b <= a) return 0.0;
    // Split once up front so integrands that happen to look like parabolas
    // on three points are still refined.
    constexpr int kPieces = 8;
    double total = 0.0;
    for (int k = 0; k < kPieces; ++k) {
        const double lo = a + (b - a) * k / kPieces;
        const double hi = k + 1 == kPieces ? b : a + (b - a) * (k + 1) / kPieces;
        const double flo = f(lo);
        const double fhi = f(hi);
        const double fm = f(0.5 * (lo + hi));
        const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fm + fhi);
        total += simpson_step(f, lo, hi, flo, fm, fhi, whole, abs_tol / kPieces, max_depth);
    }
    return total;
}

double adaptive_simpson_split(const std::function<double(double)>& f, double a, double b,
                              std::vector<double> breaks, double abs_tol)
{
    breaks.erase(std::remove_if(breaks.begin(), breaks.end(),
                                [&](double t) { return !(t > a && t < b); }),
                 breaks.end());
    breaks.push_back(a);
    breaks.push_back(b);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
        const double lo = breaks[k];
        const double hi = breaks[k + 1];
        total += adaptive_simpson(f, lo, hi, abs_tol * (hi - lo) / (b - a));
    }
    return total;
}

std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk_index)
{
    std::uint64_t state = seed;
    const std::uint64_t a = splitmix64(state);
    state = a ^ (chunk_index * 0xd1b54a32d192ed03ULL);
    return splitmix64(state);
}

double Rng::gamma_int(int shape)
{
    double s = 0.0;
    for (int k = 0; k < shape; ++k) s += exponential();
    return s;
}

McMoments mc_mean(std::size_t n, std::uint64_t seed, const std::function<double(Rng&)>& draw)
{
    if (n == 0) throw std::invalid_argument("mc_mean: sample count must be positive");
    // Welford per chunk, combined in chunk order.
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t count = 0;
    const std::size_t chunks = (n + kMcChunk - 1) / kMcChunk;
    for (std::size_t c = 0; c < chunks; ++c) {
        Rng rng(chunk_seed(seed, c));
        const std::size_t len = std::min(kMcChunk, n - c * kMcChunk);
        double cm = 0.0;
        double cm2 = 0.0;
        for (std::size_t i = 0; i < len; ++i) {
            const double v = draw(rng);
            const double delta = v - cm;
            cm += delta / static_cast<double>(i + 1);
            cm2 += delta * (v - cm);
        }
        const double total = static_cast<double>(count + len);
        const double delta = cm - mean;
        mean += delta * static_cast<double>(len) / total;
        m2 += cm2 + delta * delta * static_cast<double>(count) * static_cast<double>(len) / total;
        count += len;
    }
    McMoments out;
    out.mean = mean;
    out.n = count;
    out.std_error = count > 1 ? std::sqrt(m2 / static_cast<double>(count - 1) / static_cast<double>(count)) : 0.0;
    return out;
}

Vec halton_point(std::size_t i, std::size_t d)
{
    static constexpr unsigned kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31,
                                           37, 41, 43, 47, 53, 59, 61, 67, 71, 73};
    if (d > std::size(kPrimes)) throw std::invalid_argument("halton_point: dimension too large");
    Vec p(d);
    for (std::size_t k = 0; k < d; ++k) {
        const double base = kPrimes[k];
        double f = 1.0;
        double r = 0.0;
        std::size_t idx = i;
        while (idx > 0) {
            f /= base;
            r += f * static_cast<double>(idx % kPrimes[k]);
            idx /= kPrimes[k];
        }
        p[k] = r;
    }
    return p;
}

std::vector<Vec> sphere_directions(std::size_t d, std::size_t n)
{
    std::vector<Vec> out;
    out.reserve(n);
    if (d == 1) {
        out.push_back({1.0});
        out.push_back({-1.0});
        return out;
    }
    if (d == 2) {
        for (std::size_t k = 0; k < n; ++k) {
            const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
            out.push_back({std::cos(a), std::sin(a)});
        }
        return out;
    }
    for (std::size_t i = 1; out.size() < n; ++i) {
        Vec p = halton_point(i, d);
        for (double& v : p) v = std::sqrt(2.0) * boost::math::erf_inv(2.0 * v - 1.0);
        const double r = norm2(p);
        if (!(r > 1e-12) || !std::isfinite(r)) continue;
        for (double& v : p) v /= r;
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<Vec> orthant_directions(std::size_t d, std::size_t n)
{
    std::vector<Vec> out;
    if (d == 1) return {{1.0}};
    if (d == 2) {
        out.reserve(n + 1);
        for (std::size_t k = 0; k <= n; ++k) {
            const double a = 0.5 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
            out.push_back({std::cos(a), std::sin(a)});
        }
        // exact axis and diagonal values
        out.front() = {1.0, 0.0};
        out.back() = {0.0, 1.0};
        if (n % 2 == 0) out[n / 2] = {std::sqrt(0.5), std::sqrt(0.5)};
        return out;
    }
    for (std::size_t i = 0; i < d; ++i) {
        Vec e(d, 0.0);
        e[i] = 1.0;
        out.push_back(std::move(e));
    }
    out.push_back(Vec(d, 1.0 / std::sqrt(static_cast<double>(d))));
    for (Vec& u : sphere_directions(d, n)) {
        for (double& v : u) v = std::abs(v);
        out.push_back(std::move(u));
    }
    return out;
}

double dot(std::span<const double> a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace maxzonoid
