#include "doctest.h"
#include "fixtures.hpp"
#include "pcr3bp/error.hpp"

using namespace pcr3bp;
using fixtures::example_mu;
using fixtures::example_orbit;

TEST_CASE("detected periods of the built-in examples")
{
    for (const auto &ex : reference_examples()) {
        CAPTURE(ex.id);
        const ClosedOrbit &o = example_orbit(ex.id);
        CHECK(std::abs(o.period - ex.period) <= ex.period_tol);
        CHECK(std::abs(o.jacobi - ex.jacobi) <= ex.jacobi_tol);
        CHECK(o.closure_residual < kPeriodicityThreshold);
        CHECK(o.min_speed > kRegularityThreshold);
        CHECK(o.trajectory.t_end() - o.trajectory.t_begin() == doctest::Approx(o.period).epsilon(1e-15));
    }
    CHECK(example_orbit(1).closure_residual <= 1e-8);
}

TEST_CASE("detection without a hint")
{
    const ClosedOrbit o = detect_period(reference_example(1).initial, example_mu());
    CHECK(std::abs(o.period - example_orbit(1).period) < 1e-12);
}

TEST_CASE("equilibrium is not periodic")
{
    const MassParameter mu(kNominalMu);
    const auto l4 = lagrange_triangular(mu, TriangularPoint::L4);
    const RotatingState rest{l4.position.x, l4.position.y, 0.0, 0.0, 0.0};
    try {
        detect_period(rest, mu);
        FAIL("expected NotPeriodic");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::NotPeriodic);
    }
}

TEST_CASE("speed equals f along every orbit")
{
    for (int id = 1; id <= 4; ++id) {
        const ClosedOrbit &o = example_orbit(id);
        double min_speed = INFINITY;
        for (const auto &s : o.trajectory.resample(4096)) {
            const auto field = field_sample(s.position(), o.mu, o.jacobi);
            const double speed = std::hypot(s.v1, s.v2);
            CHECK(std::abs(speed - field.f) <= 1e-9);
            min_speed = std::min(min_speed, speed);
        }
        CHECK(std::abs(min_speed - o.min_speed) <= 1e-9);
    }
}

TEST_CASE("period is invariant under time shift")
{
    std::mt19937_64 rng(29);
    for (const int id : {1, 2, 4}) {
        const ClosedOrbit &o = example_orbit(id);
        const auto &ex = reference_example(id);
        std::uniform_real_distribution<double> u(0.0, o.period);
        for (int k = 0; k < 3; ++k) {
            RotatingState s = o.trajectory.at(u(rng));
            const ClosedOrbit shifted = detect_period(s, example_mu(), ex.window);
            CAPTURE(id);
            // Each start point has its own closure residual; the period moves by the same order.
            CHECK(std::abs(shifted.period - o.period) <= std::max(1e-8, 10.0 * o.closure_residual));
        }
    }
}

TEST_CASE("close_orbit rejects a wrong period")
{
    try {
        close_orbit(reference_example(1).initial, 3.0, example_mu());
        FAIL("expected NotPeriodic");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::NotPeriodic);
    }
}

TEST_CASE("refinement of example 3")
{
    const auto &ex = reference_example(3);
    const auto r = refine_orbit(ex.initial, ex.period, example_mu());
    CHECK(r.converged);
    CHECK(r.orbit.closure_residual <= 1e-9);
    CHECK(r.orbit.closure_residual <= r.initial_residual);
    CHECK(std::abs(r.orbit.period - ex.period) <= 1e-4);
    CHECK(std::abs(r.jacobi_after - r.jacobi_before) < 1e-3);

    const auto again = refine_orbit(r.orbit.initial(), r.orbit.period, example_mu());
    CHECK(again.iterations == 0);
    CHECK(again.orbit.period == r.orbit.period);
    CHECK(phase_distance(again.orbit.initial(), r.orbit.initial()) == 0.0);
}

TEST_CASE("refinement never increases the residual")
{
    for (const auto &ex : reference_examples()) {
        CAPTURE(ex.id);
        const ClosedOrbit &o = example_orbit(ex.id);
        const auto r = refine_orbit(ex.initial, o.period, example_mu());
        CHECK(r.orbit.closure_residual <= r.initial_residual);
        CHECK(r.initial_residual == doctest::Approx(o.closure_residual).epsilon(1e-6));
    }
}

TEST_CASE("refined example 1 is re-detected")
{
    const auto r = refine_orbit(reference_example(1).initial, example_orbit(1).period, example_mu());
    const ClosedOrbit o = detect_period(r.orbit.initial(), example_mu(), reference_example(1).window);
    CHECK(std::abs(o.period - r.orbit.period) <= 1e-9);
}

TEST_CASE("refinement rejects far-off guesses")
{
    CHECK_THROWS_AS(refine_orbit(reference_example(1).initial, 5.0, example_mu()), Error);
}
