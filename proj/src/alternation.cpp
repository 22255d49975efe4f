#include "maxzonoid/alternation.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <set>
#include <stdexcept>

namespace maxzonoid {

namespace {

double binomial(std::size_t n, std::size_t k)
{
    if (k > n) return 0.0;
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

bool dominated(const Vec& a, const Vec& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Vec join(const Vec& a, const Vec& b)
{
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
    return out;
}

}  // namespace

AlternationResult check_alternation(const LatticeFunction& f, std::span<const Vec> lattice, std::size_t max_order,
                                    std::size_t budget)
{
    if (max_order < 1) throw std::invalid_argument("check_alternation: max_order must be at least 1");
    if (lattice.empty()) throw std::invalid_argument("check_alternation: empty lattice");
    const std::size_t m = lattice.size();
    double planned = 0.0;
    for (std::size_t n = 1; n <= std::min(max_order, m); ++n)
        planned += static_cast<double>(m) * binomial(m, n) * std::ldexp(1.0, static_cast<int>(n));
    if (planned > static_cast<double>(budget))
        throw std::length_error("check_alternation: " + std::to_string(static_cast<long double>(planned)) +
                                " evaluations exceed the budget of " + std::to_string(budget));

    AlternationResult result;
    std::vector<std::size_t> idx;
    for (const Vec& base : lattice) {
        // points below the base give zero differences
        std::vector<std::size_t> active;
        for (std::size_t j = 0; j < m; ++j)
            if (!dominated(lattice[j], base)) active.push_back(j);
        for (std::size_t n = 1; n <= std::min(max_order, active.size()); ++n) {
            idx.assign(n, 0);
            for (std::size_t i = 0; i < n; ++i) idx[i] = i;
            while (true) {
                double diff = 0.0;
                const std::size_t subsets = std::size_t{1} << n;
                for (std::size_t mask = 0; mask < subsets; ++mask) {
                    Vec y = base;
                    for (std::size_t i = 0; i < n; ++i)
                        if ((mask >> i) & 1U) y = join(y, lattice[active[idx[i]]]);
                    diff += (std::popcount(mask) % 2 == 0 ? 1.0 : -1.0) * f(y);
                }
                result.evaluations += subsets;
                if (diff > kAlternationTol) {
                    AlternationWitness w{base, {}, diff};
                    for (std::size_t i = 0; i < n; ++i) w.points.push_back(lattice[active[idx[i]]]);
                    result.ok = false;
                    result.witness = std::move(w);
                    return result;
                }
                // next combination
                std::size_t i = n;
                while (i > 0 && idx[i - 1] == active.size() - n + i - 1) --i;
                if (i == 0) break;
                ++idx[i - 1];
                for (std::size_t j = i; j < n; ++j) idx[j] = idx[j - 1] + 1;
            }
        }
    }
    return result;
}

std::vector<Vec> max_closure(std::span<const Vec> points)
{
    std::set<Vec> seen(points.begin(), points.end());
    std::vector<Vec> all(seen.begin(), seen.end());
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            Vec v = join(all[i], all[j]);
            if (seen.insert(v).second) all.push_back(std::move(v));
        }
    }
    return {seen.begin(), seen.end()};
}

ExtremalTable::ExtremalTable(std::size_t dim) : d(dim)
{
    if (dim == 0 || dim > kMaxExtremalDim)
        throw std::invalid_argument("extremal table: dimension must lie in [1, " + std::to_string(kMaxExtremalDim) + "]");
    theta.assign(std::size_t{1} << dim, 0.0);
}

ExtremalTable ExtremalTable::from_model(const MaxStableModel& model)
{
    ExtremalTable t(model.dimension());
    for (std::uint64_t mask = 1; mask < t.theta.size(); ++mask) {
        Vec e(t.d, 0.0);
        for (std::size_t i = 0; i < t.d; ++i)
            if ((mask >> i) & 1U) e[i] = 1.0;
        t.theta[mask] = model.tail_dependence(e);
    }
    return t;
}

ConsistencyResult check_extremal_consistency(const ExtremalTable& table)
{
    const std::size_t d = table.d;
    const std::uint64_t full = (std::uint64_t{1} << d) - 1;
    if (table.theta.size() != full + 1) throw std::invalid_argument("extremal table: wrong number of entries");
    for (std::size_t i = 0; i < d; ++i) {
        const double t = table.theta[std::uint64_t{1} << i];
        if (std::abs(t - 1.0) > kConsistencyTol)
            throw std::invalid_argument("extremal table: theta_{" + std::to_string(i + 1) + "} = " + std::to_string(t) +
                                        " but unit Frechet marginals need 1");
    }
    std::vector<double> c(full + 1);
    for (std::uint64_t mask = 0; mask <= full; ++mask) c[mask] = table.theta[full] - table.theta[full & ~mask];
    // subset Moebius transform
    for (std::size_t i = 0; i < d; ++i)
        for (std::uint64_t mask = 0; mask <= full; ++mask)
            if ((mask >> i) & 1U) c[mask] -= c[mask ^ (std::uint64_t{1} << i)];
    ConsistencyResult out;
    out.weights = std::move(c);
    for (std::uint64_t mask = 1; mask <= full; ++mask) {
        if (out.weights[mask] < -kConsistencyTol) {
            out.ok = false;
            out.witness = mask;
            out.witness_value = out.weights[mask];
            break;
        }
    }
    return out;
}

MaxStableModel construct_from_extremal(const ExtremalTable& table, ReferenceNorm ref)
{
    const ConsistencyResult r = check_extremal_consistency(table);
    if (!r.ok)
        throw std::invalid_argument("extremal table is inconsistent: c_{" + subset_to_string(r.witness) +
                                    "} = " + std::to_string(r.witness_value));
    std::vector<Atom> atoms;
    for (std::uint64_t mask = 1; mask < r.weights.size(); ++mask) {
        if (!(r.weights[mask] > 0.0)) continue;
        Vec e(table.d, 0.0);
        for (std::size_t i = 0; i < table.d; ++i)
            if ((mask >> i) & 1U) e[i] = 1.0;
        const double len = reference_norm(ref, e);
        for (double& v : e) v /= len;
        atoms.push_back({std::move(e), r.weights[mask] * len});
    }
    return MaxStableModel::from_spectral(SpectralMeasure(ref, table.d, std::move(atoms)));
}

std::string subset_to_string(std::uint64_t mask)
{
    std::string out;
    for (std::size_t i = 0; i < 64; ++i) {
        if (!((mask >> i) & 1U)) continue;
        if (!out.empty()) out += ',';
        out += std::to_string(i + 1);
    }
    return out;
}

std::uint64_t parse_subset(std::string_view text, std::size_t d)
{
    std::uint64_t mask = 0;
    while (!text.empty()) {
        const auto comma = text.find(',');
        std::string_view tok = text.substr(0, comma);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        std::size_t v = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size() || v < 1 || v > d)
            throw std::invalid_argument("subset: bad index '" + std::string(tok) + "' (expected 1.." + std::to_string(d) + ")");
        const std::uint64_t bit = std::uint64_t{1} << (v - 1);
        if (mask & bit) throw std::invalid_argument("subset: repeated index " + std::to_string(v));
        mask |= bit;
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    if (mask == 0) throw std::invalid_argument("subset: empty");
    return mask;
}

}  // namespace maxzonoid
