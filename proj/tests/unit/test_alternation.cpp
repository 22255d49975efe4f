#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>

#include "maxzonoid/alternation.hpp"
#include "maxzonoid/dependence.hpp"
#include "oracles.hpp"

using namespace maxzonoid;

namespace {

std::vector<Vec> grid(std::size_t d, std::vector<double> levels)
{
    std::vector<Vec> out{Vec{}};
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<Vec> next;
        for (const Vec& p : out)
            for (double l : levels) {
                Vec q = p;
                q.push_back(l);
                next.push_back(q);
            }
        out = std::move(next);
    }
    return out;
}

double sum_norm(std::span<const double> x)
{
    double s = 0.0;
    for (double v : x) s += v;
    return s;
}

double max_norm(std::span<const double> x) { return *std::max_element(x.begin(), x.end()); }

// support function of conv{0, e1, e2, e3, (2/3, 2/3, 2/3)}
double bad_body(std::span<const double> x) { return std::max(max_norm(x), 2.0 / 3.0 * sum_norm(x)); }

// indicator vectors of all subsets of {1..d}
std::vector<Vec> indicators(std::size_t d)
{
    std::vector<Vec> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
        Vec v(d, 0.0);
        for (std::size_t i = 0; i < d; ++i)
            if (mask >> i & 1) v[i] = 1.0;
        out.push_back(v);
    }
    return out;
}

LatticeFunction subset_function(const ExtremalTable& t)
{
    return [t](std::span<const double> x) {
        std::uint64_t mask = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] > 0.5) mask |= std::uint64_t{1} << i;
        return t[mask];
    };
}

// theta_A = sum over B meeting A of c_B, for nonnegative random c with unit marginals
ExtremalTable random_consistent_table(oracle::Engine& g, std::size_t d)
{
    const std::uint64_t full = (std::uint64_t{1} << d) - 1;
    std::vector<double> c(full + 1, 0.0);
    for (std::uint64_t b = 1; b <= full; ++b)
        if (g() % 2) c[b] = oracle::uniform(g);
    for (std::size_t i = 0; i < d; ++i) c[std::uint64_t{1} << i] += 0.05;
    // rescale so that each coordinate carries total weight 1 is not possible for shared sets,
    // so push the deficit onto singletons
    double worst = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        double s = 0.0;
        for (std::uint64_t b = 1; b <= full; ++b)
            if (b >> j & 1) s += c[b];
        worst = std::max(worst, s);
    }
    for (double& v : c) v /= worst;
    for (std::size_t j = 0; j < d; ++j) {
        double s = 0.0;
        for (std::uint64_t b = 1; b <= full; ++b)
            if (b >> j & 1) s += c[b];
        c[std::uint64_t{1} << j] += 1.0 - s;
    }
    ExtremalTable t(d);
    for (std::uint64_t a = 1; a <= full; ++a)
        for (std::uint64_t b = 1; b <= full; ++b)
            if (a & b) t[a] += c[b];
    for (std::size_t j = 0; j < d; ++j) t[std::uint64_t{1} << j] = 1.0;
    return t;
}

}  // namespace

TEST_CASE("valid max-zonoids pass the alternation check")
{
    const std::vector<Vec> g2 = grid(2, {0.0, 0.5, 1.0});
    CHECK(check_alternation(sum_norm, g2, 3).ok);
    CHECK(check_alternation(max_norm, g2, 3).ok);
    const std::vector<Vec> g3 = grid(3, {0.0, 1.0});
    CHECK(check_alternation(sum_norm, g3, 3).ok);
    CHECK(check_alternation(max_norm, g3, 3).ok);
    CHECK(check_alternation([](std::span<const double> x) { return std::hypot(x[0], x[1]); }, g2, 3).ok);
}

TEST_CASE("the indecomposable body has a frozen witness")
{
    const AlternationResult r = check_alternation(bad_body, grid(3, {0.0, 1.0}), 2);
    REQUIRE_FALSE(r.ok);
    REQUIRE(r.witness);
    CHECK(std::abs(r.witness->difference - 1.0 / 3.0) < 1e-12);
    CHECK(r.witness->base == Vec{0, 0, 1});
    REQUIRE(r.witness->points.size() == 2);
    CHECK(r.witness->points[0] == Vec{0, 1, 0});
    CHECK(r.witness->points[1] == Vec{1, 0, 0});
    // order one is monotonicity, which the body has
    CHECK(check_alternation(bad_body, grid(3, {0.0, 1.0}), 1).ok);
    const AlternationResult finer = check_alternation(bad_body, grid(3, {0.0, 0.5, 1.0}), 2);
    CHECK_FALSE(finer.ok);
}

TEST_CASE("witness difference is the signed sum it claims")
{
    const AlternationResult r = check_alternation(bad_body, grid(3, {0.0, 1.0}), 2);
    REQUIRE(r.witness);
    const AlternationWitness& w = *r.witness;
    const std::size_t n = w.points.size();
    double diff = 0.0;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        Vec x = w.base;
        for (std::size_t i = 0; i < n; ++i)
            if (s >> i & 1)
                for (std::size_t j = 0; j < x.size(); ++j) x[j] = std::max(x[j], w.points[i][j]);
        diff += (std::popcount(s) % 2 ? -1.0 : 1.0) * bad_body(x);
    }
    CHECK(std::abs(diff - w.difference) < 1e-12);
}

TEST_CASE("evaluation budget")
{
    CHECK_THROWS_AS(check_alternation(sum_norm, grid(3, {0.0, 0.25, 0.5, 0.75, 1.0}), 4, 1000), std::length_error);
    CHECK_THROWS_AS(check_alternation(sum_norm, grid(2, {0.0, 1.0}), 0), std::invalid_argument);
}

TEST_CASE("max closure")
{
    const std::vector<Vec> pts{{1, 0}, {0, 1}, {1, 0}};
    const std::vector<Vec> c = max_closure(pts);
    CHECK(c.size() == 3);
    CHECK(std::find(c.begin(), c.end(), Vec{1, 1}) != c.end());
}

TEST_CASE("Moebius weights of basic tables")
{
    ExtremalTable ind(3);
    ExtremalTable dep(3);
    for (std::uint64_t a = 1; a < 8; ++a) {
        ind[a] = std::popcount(a);
        dep[a] = 1.0;
    }
    const ConsistencyResult ri = check_extremal_consistency(ind);
    const ConsistencyResult rd = check_extremal_consistency(dep);
    CHECK(ri.ok);
    CHECK(rd.ok);
    for (std::uint64_t b = 1; b < 8; ++b) {
        CHECK(std::abs(ri.weights[b] - (std::has_single_bit(b) ? 1.0 : 0.0)) < 1e-12);
        CHECK(std::abs(rd.weights[b] - (b == 7 ? 1.0 : 0.0)) < 1e-12);
    }

    ExtremalTable high(2);
    high[1] = high[2] = 1.0;
    high[3] = 2.5;
    const ConsistencyResult rh = check_extremal_consistency(high);
    CHECK_FALSE(rh.ok);
    CHECK(rh.witness == 3);
    CHECK(std::abs(rh.witness_value + 0.5) < 1e-12);

    ExtremalTable low = high;
    low[3] = 0.8;
    const ConsistencyResult rl = check_extremal_consistency(low);
    CHECK_FALSE(rl.ok);
    CHECK(rl.witness == 1);
    CHECK(std::abs(rl.witness_value + 0.2) < 1e-12);

    ExtremalTable bad = ind;
    bad[2] = 1.1;
    CHECK_THROWS_AS(check_extremal_consistency(bad), std::invalid_argument);
    CHECK_THROWS_AS(ExtremalTable(21), std::invalid_argument);
}

TEST_CASE("construction from extremal coefficients")
{
    ExtremalTable t(2);
    t[1] = t[2] = 1.0;
    t[3] = 1.5;
    const ConsistencyResult r = check_extremal_consistency(t);
    REQUIRE(r.ok);
    CHECK(std::abs(r.weights[1] - 0.5) < 1e-12);
    CHECK(std::abs(r.weights[2] - 0.5) < 1e-12);
    CHECK(std::abs(r.weights[3] - 0.5) < 1e-12);
    const MaxStableModel m = construct_from_extremal(t);
    CHECK(std::abs(extremal_coefficient(m, 3) - 1.5) < 1e-12);
    CHECK(std::abs(chi(m) - 0.5) < 1e-12);
    const SampleMatrix s = simulate(m, 100000, 3);
    std::size_t both = 0;
    for (std::size_t i = 0; i < s.rows; ++i) both += s.at(i, 0) <= 1.0 && s.at(i, 1) <= 1.0;
    const double p = std::exp(-1.5);
    CHECK(std::abs(double(both) / s.rows - p) < 3.0 * std::sqrt(p * (1 - p) / s.rows));

    ExtremalTable bad = t;
    bad[3] = 2.5;
    CHECK_THROWS_AS(construct_from_extremal(bad), std::invalid_argument);

    for (ReferenceNorm ref : {ReferenceNorm::l1, ReferenceNorm::l2, ReferenceNorm::linf}) {
        const MaxStableModel mr = construct_from_extremal(t, ref);
        CHECK(std::abs(extremal_coefficient(mr, 3) - 1.5) < 1e-12);
    }
}

TEST_CASE("round trips and agreement with the alternation check")
{
    oracle::Engine g(51);
    int rejected = 0;
    int accepted = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t d = 1 + rep % 4;
        const ExtremalTable t = random_consistent_table(g, d);
        const ConsistencyResult r = check_extremal_consistency(t);
        REQUIRE(r.ok);
        const MaxStableModel m = construct_from_extremal(t);
        for (std::uint64_t a = 1; a < (std::uint64_t{1} << d); ++a) CHECK(std::abs(extremal_coefficient(m, a) - t[a]) < 1e-12);
        const ExtremalTable back = ExtremalTable::from_model(m);
        for (std::uint64_t a = 1; a < (std::uint64_t{1} << d); ++a) CHECK(std::abs(back[a] - t[a]) < 1e-12);
        CHECK(check_alternation(subset_function(t), indicators(d), d).ok);

        if (d < 2) continue;
        // a perturbed table: both checkers must agree on the verdict
        ExtremalTable p = t;
        const std::uint64_t full = (std::uint64_t{1} << d) - 1;
        std::uint64_t target = 0;
        while (std::has_single_bit(target) || target == 0) target = g() & full;
        p[target] += oracle::uniform(g, -0.6, 0.6);
        const ConsistencyResult rp = check_extremal_consistency(p);
        const AlternationResult ap = check_alternation(subset_function(p), indicators(d), d);
        CHECK(rp.ok == ap.ok);
        rejected += !rp.ok;
        accepted += rp.ok;
    }
    CHECK(rejected > 10);
    CHECK(accepted > 10);
}

TEST_CASE("extremal tables of random spectral measures are consistent")
{
    oracle::Engine g(52);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t d = 2 + rep % 3;
        const ExtremalTable t = oracle::extremal_table_of(oracle::random_dependency_measure(g, d, 4));
        const ConsistencyResult r = check_extremal_consistency(t);
        CHECK(r.ok);
        for (std::uint64_t a = 1; a < (std::uint64_t{1} << d); ++a) {
            double s = 0.0;
            for (std::uint64_t b = 1; b < (std::uint64_t{1} << d); ++b)
                if (a & b) s += r.weights[b];
            CHECK(std::abs(s - t[a]) < 1e-12);
        }
    }
}

TEST_CASE("subset text")
{
    CHECK(subset_to_string(0b101) == "1,3");
    CHECK(parse_subset("1,3", 3) == 0b101);
    CHECK(parse_subset(" 2 , 1 ", 2) == 0b11);
    CHECK_THROWS_AS(parse_subset("4", 3), std::invalid_argument);
    CHECK_THROWS_AS(parse_subset("", 3), std::invalid_argument);
    CHECK_THROWS_AS(parse_subset("1,1", 3), std::invalid_argument);
    for (std::uint64_t m = 1; m < 64; ++m) CHECK(parse_subset(subset_to_string(m), 6) == m);
}
