#include <doctest.h>

#include <cmath>

#include "maxzonoid/geometry.hpp"
#include "oracles.hpp"

using namespace maxzonoid;

TEST_CASE("reference norms")
{
    const Vec x{3, 4};
    CHECK(reference_norm(ReferenceNorm::l1, x) == 7.0);
    CHECK(reference_norm(ReferenceNorm::l2, x) == 5.0);
    CHECK(reference_norm(ReferenceNorm::linf, x) == 4.0);
    CHECK(parse_reference_norm("l2") == ReferenceNorm::l2);
    CHECK_THROWS_AS(parse_reference_norm("l3"), std::invalid_argument);
}

TEST_CASE("atoms are validated, merged and zero masses dropped")
{
    CHECK_THROWS_AS(SpectralMeasure(ReferenceNorm::l1, 2, {{{0.5, 0.6}, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(SpectralMeasure(ReferenceNorm::l1, 2, {{{0.5, 0.5}, -1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(SpectralMeasure(ReferenceNorm::l1, 2, {{{-0.5, 1.5}, 1.0}}), std::invalid_argument);
    const SpectralMeasure s(ReferenceNorm::l1, 2, {{{0.5, 0.5}, 1.0}, {{0.5, 0.5}, 1.0}, {{1.0, 0.0}, 0.0}});
    REQUIRE(s.atoms().size() == 1);
    CHECK(s.atoms()[0].mass == 2.0);
    CHECK(s.support(Vec{1, 1}) == 1.0);
    CHECK(s.total_mass() == 2.0);
}

TEST_CASE("support with infinite coordinates")
{
    const SpectralMeasure s(ReferenceNorm::l1, 2, {{{1.0, 0.0}, 1.0}, {{0.0, 1.0}, 1.0}});
    CHECK(s.support(Vec{kInf, 0.0}) == kInf);
    CHECK(s.support(Vec{0.0, 2.0}) == 2.0);
}

TEST_CASE("polygon edges give atoms and back")
{
    const Polygon2D mo({{1, 0}, {1, 0.5}, {0.5, 1}, {0, 1}});
    const SpectralMeasure s = spectral_from_polygon_2d(mo);
    CHECK(s.atoms().size() == 3);
    CHECK(s.total_mass() == doctest::Approx(2.0));
    const DependencyReport r = validate_dependency(s);
    CHECK(r.is_dependency);
    const Polygon2D back = polygon_from_spectral_2d(s);
    REQUIRE(back.vertices().size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(back.vertices()[i].x - mo.vertices()[i].x) < 1e-12);
        CHECK(std::abs(back.vertices()[i].y - mo.vertices()[i].y) < 1e-12);
    }
}

TEST_CASE("random polygon round trips keep support values and masses")
{
    oracle::Engine g(11);
    for (int rep = 0; rep < 50; ++rep) {
        const auto chain = oracle::random_dependency_chain(g, 2 + rep % 9);
        const Polygon2D p(chain);
        const SpectralMeasure l1 = spectral_from_polygon_2d(p, ReferenceNorm::l1);
        const SpectralMeasure l2 = spectral_from_polygon_2d(p, ReferenceNorm::l2);
        CHECK(std::abs(l1.total_mass() - 2.0) < 1e-9);
        CHECK(l2.total_mass() >= std::sqrt(2.0) - 1e-12);
        CHECK(l2.total_mass() <= 2.0 + 1e-12);
        for (const Vec& u : orthant_directions(2, 256))
            CHECK(std::abs(l2.support(u) - oracle::vertex_support(chain, u[0], u[1])) < 1e-12);
    }
}

TEST_CASE("rebasing preserves the support function")
{
    oracle::Engine g(3);
    const SpectralMeasure s = oracle::random_dependency_measure(g, 3, 7);
    for (ReferenceNorm ref : {ReferenceNorm::l2, ReferenceNorm::linf}) {
        const SpectralMeasure r = rebase_reference(s, ref);
        for (const Atom& a : r.atoms()) CHECK(std::abs(reference_norm(ref, a.point) - 1.0) < 1e-12);
        for (const Vec& u : orthant_directions(3, 200)) CHECK(std::abs(r.support(u) - s.support(u)) < 1e-12);
    }
}

TEST_CASE("spectral_from_points normalizes")
{
    const std::vector<WeightedPoint> pts{{{2.0, 0.0}, 0.5}, {{0.0, 0.0}, 3.0}, {{1.0, 1.0}, 1.0}};
    const SpectralMeasure s = spectral_from_points(pts, 2);
    CHECK(s.atoms().size() == 2);
    CHECK(s.support(Vec{1.0, 0.0}) == doctest::Approx(2.0));
}

TEST_CASE("dependency validation flags wrong marginals")
{
    const SpectralMeasure s(ReferenceNorm::l1, 2, {{{1.0, 0.0}, 2.0}, {{0.0, 1.0}, 1.0}});
    const DependencyReport r = validate_dependency(s);
    CHECK_FALSE(r.is_dependency);
    CHECK(r.marginal_sums[0] == 2.0);
    CHECK_THROWS_AS(zonoid_from_spectral(SpectralMeasure(ReferenceNorm::l1, 2, {})), std::invalid_argument);
}
