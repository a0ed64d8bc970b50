#include "doctest.h"
#include "fixtures.hpp"
#include "pcr3bp/error.hpp"
#include "pcr3bp/quadrature.hpp"

using namespace pcr3bp;
using fixtures::circle;
using fixtures::square;

namespace {

ErrorKind kind_of(const auto &fn)
{
    try {
        fn();
    } catch (const Error &e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::Domain;
}

} // namespace

TEST_CASE("config validation")
{
    QuadratureConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.epsilon_schedule = {1e-5, 2e-5};
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.cell_tolerance = 0.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("point in polygon")
{
    const auto sq = square(0, 0, 1);
    CHECK(point_in_polygon(sq, {0.5, 0.5}));
    CHECK_FALSE(point_in_polygon(sq, {1.5, 0.5}));
    CHECK_FALSE(point_in_polygon(sq, {-0.1, 0.5}));
}

TEST_CASE("extrapolation is exact on low-degree polynomials")
{
    const std::vector<double> eps{3e-5, 2.5e-5, 2e-5, 1.5e-5, 1e-5};
    std::vector<double> vals;
    for (const double e : eps) {
        vals.push_back(1.25 - 3.0 * e + 40.0 * e * e);
    }
    const auto [v, err] = extrapolate_to_zero(eps, vals);
    CHECK(v == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(err < 1e-10);
}

TEST_CASE("polynomial integrands over polygons")
{
    const ClosedPolyline sq(square(0, 0, 1));
    CHECK(integrate_region(sq, [](Vec2) { return 1.0; }, {}).value == doctest::Approx(1.0).epsilon(1e-12));
    const auto r = integrate_region(sq, [](Vec2 p) { return p.x * p.x + p.y * p.y; }, {});
    CHECK(r.value == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(r.error_estimate < 1e-6);

    const ClosedPolyline disk(circle({0.3, 0.2}, 0.9, 200));
    const auto a = integrate_region(disk, [](Vec2) { return 1.0; }, {});
    CHECK(a.value == doctest::Approx(signed_area(disk)).epsilon(1e-12));
}

TEST_CASE("orientation does not change the region integral")
{
    const ClosedPolyline c(circle({0.0, 0.0}, 1.0, 300));
    const RegionIntegrand f = [](Vec2 p) { return std::exp(p.x) * std::cos(p.y); };
    const double ccw = integrate_region(c, f, {}).value;
    const double cw = integrate_region(c.reversed(), f, {}).value;
    CHECK(ccw == doctest::Approx(cw).epsilon(1e-12));
    // exp(x) cos(y) is harmonic: the mean over the polygon is close to its value at the center.
    CHECK(ccw / signed_area(c) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("excision of a smooth integrand")
{
    const ClosedPolyline sq(square(-1, -1, 2));
    const std::vector<Vec2> centers{{0.0, 0.0}};
    const auto r = integrate_region(sq, [](Vec2) { return 1.0; }, centers);
    CHECK(r.value == doctest::Approx(4.0).epsilon(1e-10));
    REQUIRE(r.excised_values.size() == r.epsilons.size());
    for (std::size_t i = 0; i < r.epsilons.size(); ++i) {
        const double e = r.epsilons[i];
        CHECK(r.excised_values[i] == doctest::Approx(4.0 - std::numbers::pi * e * e).epsilon(1e-10));
    }
}

TEST_CASE("integrable point singularity")
{
    // Integral of 1/|p| over [-1, 1]^2 is 8 asinh(1).
    const ClosedPolyline sq(square(-1, -1, 2));
    const std::vector<Vec2> centers{{0.0, 0.0}};
    const auto r = integrate_region(sq, [](Vec2 p) { return 1.0 / norm(p); }, centers);
    CHECK(std::abs(r.value - 8.0 * std::asinh(1.0)) < 1e-5);
    CHECK(r.error_estimate < 1e-4);

    // Off-center singularity inside a circle.
    const ClosedPolyline c(circle({0.0, 0.0}, 1.0, 400));
    const Vec2 s{0.3, -0.2};
    const std::vector<Vec2> one{s};
    const auto q = integrate_region(c, [&](Vec2 p) { return std::log(norm(p - s)); }, one);
    const auto q0 = integrate_region(c, [&](Vec2 p) { return std::log(norm(p - s)); }, one);
    CHECK(q.value == q0.value);
    CHECK(std::isfinite(q.value));
}

TEST_CASE("undefined integrand inside the region")
{
    const ClosedPolyline sq(square(0, 0, 1));
    const RegionIntegrand f = [](Vec2 p) { return p.x > 0.7 && p.y > 0.7 ? NAN : 1.0; };
    CHECK(kind_of([&] { integrate_region(sq, f, {}); }) == ErrorKind::RegionExitsHillRegion);
}

TEST_CASE("excised centers must be inside")
{
    const ClosedPolyline sq(square(0, 0, 1));
    const std::vector<Vec2> outside{{2.0, 2.0}};
    CHECK(kind_of([&] { integrate_region(sq, [](Vec2) { return 1.0; }, outside); }) == ErrorKind::Domain);
}
