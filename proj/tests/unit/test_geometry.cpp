#include <doctest.h>

#include <cmath>
#include <numbers>

#include "maxzonoid/families.hpp"
#include "maxzonoid/geometry.hpp"
#include "oracles.hpp"

using namespace maxzonoid;

namespace {

MaxZonoid cube(std::size_t d)
{
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < d; ++i) {
        Vec e(d, 0.0);
        e[i] = 1.0;
        atoms.push_back({e, 1.0});
    }
    return MaxZonoid(SpectralMeasure(ReferenceNorm::l1, d, std::move(atoms)));
}

MaxZonoid cross(std::size_t d)
{
    const double r = std::sqrt(static_cast<double>(d));
    return MaxZonoid(SpectralMeasure(ReferenceNorm::l2, d, {{Vec(d, 1.0 / r), r}}));
}

DependencySet dep(const MaxZonoid& k) { return DependencySet(k); }

}  // namespace

TEST_CASE("support values of cube and cross-polytope")
{
    CHECK(cube(2).support(Vec{1, 2}) == 3.0);
    CHECK(cross(2).support(Vec{1, 2}) == doctest::Approx(2.0).epsilon(1e-15));
    oracle::Engine g(1);
    const MaxZonoid k(oracle::random_dependency_measure(g, 4, 6));
    for (std::size_t i = 0; i < 4; ++i) {
        Vec e(4, 0.0);
        e[i] = 1.0;
        CHECK(std::abs(k.support(e) - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(cube(2).support(Vec{-1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(cube(2).support(Vec{1, 0, 0}), std::invalid_argument);
    CHECK(cube(2).support_full(Vec{-1, 2}) == 2.0);
}

TEST_CASE("support functions are sublinear, monotone and sandwiched")
{
    oracle::Engine g(21);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t d = 2 + rep % 3;
        const DependencySet k(MaxZonoid(oracle::random_dependency_measure(g, d, 1 + rep % 7)));
        for (int t = 0; t < 40; ++t) {
            Vec x(d), y(d), xy(d), big(d);
            double mx = 0.0;
            double sx = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                x[i] = oracle::uniform(g, 0, 3);
                y[i] = oracle::uniform(g, 0, 3);
                xy[i] = x[i] + y[i];
                big[i] = x[i] + oracle::uniform(g, 0, 1);
                mx = std::max(mx, x[i]);
                sx += x[i];
            }
            const double hx = k.support(x);
            CHECK(k.support(xy) <= hx + k.support(y) + 1e-12);
            Vec tx = x;
            for (double& v : tx) v *= 2.5;
            CHECK(std::abs(k.support(tx) - 2.5 * hx) < 1e-12);
            CHECK(hx <= k.support(big) + 1e-12);
            CHECK(mx <= hx + 1e-12);
            CHECK(hx <= sx + 1e-12);
        }
    }
}

TEST_CASE("dependency sets require unit marginal support")
{
    CHECK_NOTHROW(dep(cube(3)));
    const MaxZonoid half(SpectralMeasure(ReferenceNorm::l1, 2, {{{1.0, 0.0}, 0.5}, {{0.0, 1.0}, 1.0}}));
    CHECK_THROWS_AS(dep(half), std::invalid_argument);
}

TEST_CASE("scale")
{
    const Vec l21{2, 1};
    CHECK(scale(cube(2), l21).support(Vec{1, 1}) == 3.0);
    const Vec ones{1, 1};
    const MaxZonoid same = scale(cube(2), ones);
    for (const Vec& u : orthant_directions(2, 64)) CHECK(std::abs(same.support(u) - cube(2).support(u)) < 1e-15);
    const Vec two{2, 2};
    CHECK(scale(cross(2), two).support(Vec{1, 1}) == doctest::Approx(2.0));
    const Vec bad{0, 1};
    CHECK_THROWS_AS(scale(cube(2), bad), std::invalid_argument);
    // polygons and analytic norms scale too
    const MaxZonoid poly(Polygon2D({{1, 0}, {1, 0.5}, {0.5, 1}, {0, 1}}));
    const MaxZonoid lg = make_family({family::Logistic{2.0}, 2}).zonoid();
    for (const Vec& u : orthant_directions(2, 32)) {
        const Vec su{2 * u[0], u[1]};
        CHECK(std::abs(scale(poly, l21).support(u) - poly.support(su)) < 1e-12);
        CHECK(std::abs(scale(lg, l21).support(u) - lg.support(su)) < 1e-12);
    }
}

TEST_CASE("projection")
{
    const std::vector<std::size_t> first_two{0, 1};
    const MaxZonoid sq = project(cube(3), first_two);
    CHECK(sq.dimension() == 2);
    CHECK(sq.support(Vec{1, 1}) == 2.0);

    const MaxZonoid p = project(cross(3), first_two);
    const auto s = p.spectral(ReferenceNorm::l2);
    REQUIRE(s);
    REQUIRE(s->atoms().size() == 1);
    CHECK(s->atoms()[0].mass == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(s->atoms()[0].point[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

    oracle::Engine g(4);
    const MaxZonoid k(oracle::random_dependency_measure(g, 4, 5));
    const std::vector<std::size_t> sub{1, 3};
    const MaxZonoid pk = project(k, sub);
    CHECK_NOTHROW(dep(pk));
    for (const Vec& u : orthant_directions(2, 64)) CHECK(std::abs(pk.support(u) - k.support(Vec{0, u[0], 0, u[1]})) < 1e-12);
    const std::vector<std::size_t> bad{1, 1};
    CHECK_THROWS_AS(project(k, bad), std::invalid_argument);
}

TEST_CASE("cartesian product")
{
    const MaxZonoid c4 = cartesian_product(cube(2), cube(2));
    CHECK(c4.dimension() == 4);
    CHECK(c4.support(Vec{1, 1, 1, 1}) == 4.0);
    CHECK(cartesian_product(cross(2), cross(2)).support(Vec{1, 1, 1, 1}) == doctest::Approx(2.0));
    CHECK_NOTHROW(dep(cartesian_product(cross(2), cube(1))));
}

TEST_CASE("minkowski combinations")
{
    CHECK(minkowski_combine(cube(2), cross(2), 0.5, CombineMode::sum).support(Vec{1, 1}) == doctest::Approx(1.5));

    // cube with an extra diagonal atom, minus half the cross-polytope, is the cube
    std::vector<Atom> atoms{{{1, 0}, 1.0}, {{0, 1}, 1.0}, {{0.5, 0.5}, 1.0}};
    const MaxZonoid fat(SpectralMeasure(ReferenceNorm::l1, 2, atoms));
    const MaxZonoid diff = minkowski_combine(fat, cross(2), 0.5, CombineMode::difference);
    for (const Vec& u : orthant_directions(2, 64)) CHECK(std::abs(diff.support(u) - cube(2).support(u)) < 1e-12);

    try {
        (void)minkowski_combine(cube(2), cross(2), 0.5, CombineMode::difference);
        FAIL("expected a negative mass");
    } catch (const NegativeMassError& e) {
        CHECK(e.deficit() < 0.0);
        CHECK(e.atom().size() == 2);
    }

    // vector weights: alpha * cube + (1 - alpha) * cross gives the polygon with kinks (1, a2), (a1, 1)
    const Vec lambda{0.3, 0.6};
    const MaxZonoid mix = minkowski_combine(cube(2), cross(2), lambda, CombineMode::sum);
    const Polygon2D mo({{1, 0}, {1, 0.6}, {0.3, 1}, {0, 1}});
    for (const Vec& u : orthant_directions(2, 256)) CHECK(std::abs(mix.support(u) - mo.support(u[0], u[1])) < 1e-12);
}

TEST_CASE("planar combinations")
{
    const DependencySet sq = dep(cube(2));
    const DependencySet cr = dep(cross(2));
    const DependencySet h = combine_2d(cr, cr, Combine2dMode::hull);
    const DependencySet i = combine_2d(sq, cr, Combine2dMode::intersection);
    const DependencySet pm = combine_2d(cr, sq, Combine2dMode::power_mean, PowerMean{2.0, 0.5});
    for (const Vec& u : orthant_directions(2, 128)) {
        CHECK(std::abs(h.support(u) - cr.support(u)) < 1e-12);
        CHECK(std::abs(i.support(u) - cr.support(u)) < 1e-12);
    }
    CHECK(std::abs(pm.support(Vec{1, 1}) - std::sqrt(2.5)) < 1e-4);

    // hull and intersection of random polygons bracket both inputs
    oracle::Engine g(8);
    for (int rep = 0; rep < 10; ++rep) {
        const DependencySet a(MaxZonoid(Polygon2D(oracle::random_dependency_chain(g, 4))));
        const DependencySet b(MaxZonoid(Polygon2D(oracle::random_dependency_chain(g, 5))));
        const DependencySet hu = combine_2d(a, b, Combine2dMode::hull);
        const DependencySet in = combine_2d(a, b, Combine2dMode::intersection);
        for (const Vec& u : orthant_directions(2, 128)) {
            CHECK(std::abs(hu.support(u) - std::max(a.support(u), b.support(u))) < 1e-12);
            CHECK(in.support(u) <= std::min(a.support(u), b.support(u)) + 1e-12);
        }
    }
}

TEST_CASE("polar sets in the plane")
{
    const Polygon2D sq_polar = polar_2d(cube(2));
    const Polygon2D cr_polar = polar_2d(cross(2));
    for (const Vec& u : orthant_directions(2, 64)) {
        CHECK(std::abs(sq_polar.support(u[0], u[1]) - std::max(u[0], u[1])) < 1e-12);
        CHECK(std::abs(cr_polar.support(u[0], u[1]) - (u[0] + u[1])) < 1e-12);
    }
    oracle::Engine g(9);
    for (int rep = 0; rep < 10; ++rep) {
        const Polygon2D p(oracle::random_dependency_chain(g, 5));
        const Polygon2D back = polar_2d(MaxZonoid(polar_2d(MaxZonoid(p))));
        for (const Vec& u : orthant_directions(2, 128)) CHECK(std::abs(back.support(u[0], u[1]) - p.support(u[0], u[1])) < 1e-12);
    }
}

TEST_CASE("polar volumes")
{
    CHECK(polar_volume(cube(2), ExactVolume{}).value == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(polar_volume(cross(2), ExactVolume{}).value == doctest::Approx(1.0).epsilon(1e-14));
    const VolumeEstimate c3 = polar_volume(cross(3), MonteCarloVolume{100000, 3});
    CHECK(c3.value == 1.0);  // the polar is the whole box
    const VolumeEstimate ball = polar_volume(make_family({family::Logistic{2.0}, 3}).zonoid(), MonteCarloVolume{400000, 5});
    CHECK_FALSE(ball.exact);
    CHECK(ball.seed == 5);
    CHECK(std::abs(ball.value - std::numbers::pi / 6.0) < 3.0 * ball.std_error);
    const VolumeEstimate q = polar_volume(make_family({family::Logistic{2.0}, 2}).zonoid(), ExactVolume{});
    CHECK(std::abs(q.value - std::numbers::pi / 4.0) < 1e-10);
    CHECK_THROWS_AS(polar_volume(cube(3), ExactVolume{}), std::invalid_argument);

    // Monte Carlo agrees with the exact planar value on random polygons
    oracle::Engine g(10);
    for (int rep = 0; rep < 5; ++rep) {
        const MaxZonoid p(Polygon2D(oracle::random_dependency_chain(g, 4)));
        const VolumeEstimate ex = polar_volume(p, ExactVolume{});
        const VolumeEstimate mc = polar_volume(p, MonteCarloVolume{200000, static_cast<std::uint64_t>(rep + 1)});
        CHECK(std::abs(ex.value - mc.value) < 3.0 * mc.std_error);
    }
}

TEST_CASE("integral of exp(-h) equals d! times the polar volume")
{
    oracle::Engine g(12);
    for (std::size_t d : {2u, 3u}) {
        const MaxZonoid k(oracle::random_dependency_measure(g, d, 4));
        const oracle::Estimate lhs = oracle::exp_integral([&](std::span<const double> x) { return k.support(x); }, d, 200000, 77);
        const VolumeEstimate v = polar_volume(k, MonteCarloVolume{400000, 78});
        const double f = factorial(static_cast<int>(d));
        CHECK(std::abs(lhs.mean - f * v.value) < 3.0 * std::hypot(lhs.std_error, f * v.std_error));
    }
}

TEST_CASE("hausdorff distance")
{
    CHECK(hausdorff_distance(cube(2), cube(2)) == 0.0);
    CHECK(std::abs(hausdorff_distance(cube(2), cross(2)) - 1.0 / std::sqrt(2.0)) < 1e-6);
    oracle::Engine g(13);
    for (int rep = 0; rep < 5; ++rep) {
        const MaxZonoid a(oracle::random_dependency_measure(g, 3, 3));
        const MaxZonoid b(oracle::random_dependency_measure(g, 3, 4));
        const MaxZonoid c(oracle::random_dependency_measure(g, 3, 5));
        CHECK(hausdorff_distance(a, c, 2000) <= hausdorff_distance(a, b, 2000) + hausdorff_distance(b, c, 2000) + 1e-12);
        CHECK(hausdorff_distance(a, b, 2000) == hausdorff_distance(b, a, 2000));
    }
}

TEST_CASE("m-distance")
{
    const DependencySet sq = dep(cube(2));
    const DependencySet cr = dep(cross(2));
    CHECK(m_distance(sq, sq).value < 1e-9);
    const MDistance m = m_distance(cr, sq);
    CHECK(std::abs(m.value - std::log(4.0)) < 1e-3);
    CHECK(std::abs(m_distance(sq, cr).value - m.value) < 1e-6);
}

TEST_CASE("pairwise independence in every projection forces the cube")
{
    // a spectral body whose 2-D projections all have h(e_i + e_j) = 2 is the cube
    oracle::Engine g(14);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t d = 3;
        const MaxZonoid k(oracle::random_dependency_measure(g, d, 3));
        bool pairwise = true;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j) {
                Vec e(d, 0.0);
                e[i] = e[j] = 1.0;
                pairwise = pairwise && std::abs(k.support(e) - 2.0) < 1e-12;
            }
        if (!pairwise) continue;
        for (const Vec& u : orthant_directions(d, 200)) CHECK(std::abs(k.support(u) - (u[0] + u[1] + u[2])) < 1e-12);
    }
    CHECK(cube(3).support(Vec{1, 1, 0}) == 2.0);
    for (const Vec& u : orthant_directions(3, 200)) CHECK(cube(3).support(u) == doctest::Approx(u[0] + u[1] + u[2]));
}
