#include "doctest.h"
#include "fixtures.hpp"
#include "pcr3bp/error.hpp"
#include "pcr3bp/integrate.hpp"

using namespace pcr3bp;
using fixtures::example_mu;

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

RotatingState mirror(const RotatingState &s)
{
    return {s.y1, -s.y2, -s.v1, s.v2, -s.t};
}

} // namespace

TEST_CASE("config validation")
{
    IntegratorConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.rel_tol = -1.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.max_step = 0.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.dense_samples_per_period = 10;
    CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("empty interval")
{
    const RotatingState s{0.5, 0.5, 0.0, 0.1, 1.0};
    CHECK(kind_of([&] { propagate(s, 1.0, example_mu()); }) == ErrorKind::EmptyInterval);
}

TEST_CASE("example 1 closes after one period")
{
    const auto traj = propagate(reference_example(1).initial, 6.3036094149426, example_mu());
    CHECK(phase_distance(traj.samples().back(), reference_example(1).initial) < 1e-8);
}

TEST_CASE("example 3 closes to the tabulated accuracy")
{
    const auto traj = propagate(reference_example(3).initial, 5.4912835927302, example_mu());
    CHECK(phase_distance(traj.samples().back(), reference_example(3).initial) <= 1e-4);
}

TEST_CASE("equilibrium at L4 stays put")
{
    const MassParameter mu(kNominalMu);
    const auto l4 = lagrange_triangular(mu, TriangularPoint::L4);
    const RotatingState s{l4.position.x, l4.position.y, 0.0, 0.0, 0.0};
    const auto traj = propagate(s, 25.0, mu);
    for (const auto &x : traj.samples()) {
        CHECK(phase_distance(x, {l4.position.x, l4.position.y, 0.0, 0.0, x.t}) < 1e-10);
    }
}

TEST_CASE("jacobi constant is conserved over one period")
{
    for (const auto &ex : reference_examples()) {
        CAPTURE(ex.id);
        const auto traj = propagate(ex.initial, ex.period, example_mu());
        CHECK(traj.max_jacobi_drift() <= 1e-9);
        double dense = 0.0;
        for (const auto &s : traj.resample(2000)) {
            dense = std::max(dense, std::abs(jacobi_constant(s, example_mu()) - traj.jacobi()));
        }
        CHECK(dense <= 1e-9);
    }
}

TEST_CASE("samples are time ordered and dense output reproduces them")
{
    for (const int id : {1, 4}) {
        const auto traj = propagate(reference_example(id).initial, reference_example(id).period, example_mu());
        const auto &samples = traj.samples();
        for (std::size_t i = 1; i < samples.size(); ++i) {
            CHECK(samples[i].t > samples[i - 1].t);
        }
        for (const auto &s : samples) {
            CHECK(phase_distance(traj.at(s.t), s) <= 1e-12);
        }
        CHECK_THROWS_AS(traj.at(traj.t_end() + 1e-3), Error);
        const auto re = traj.resample(100);
        CHECK(re.size() == 100);
        CHECK(re.front().t == traj.t_begin());
        CHECK(re.back().t < traj.t_end());
    }
}

TEST_CASE("time reversal symmetry")
{
    for (const int id : {1, 2, 4}) {
        CAPTURE(id);
        const RotatingState s0 = reference_example(id).initial;
        const double tmax = reference_example(id).period;
        const auto fwd = propagate(s0, tmax, example_mu());
        const auto bwd = propagate(mirror(s0), -tmax, example_mu());
        CHECK(bwd.t_begin() == doctest::Approx(-tmax).epsilon(1e-15));
        for (int k = 0; k <= 50; ++k) {
            const double t = tmax * k / 50.0;
            CHECK(phase_distance(mirror(fwd.at(t)), bwd.at(-t)) <= 1e-9);
        }
    }
}

TEST_CASE("closure residual tracks the tolerance")
{
    const RotatingState s0 = reference_example(1).initial;
    double previous = INFINITY;
    for (const double tol : {1e-8, 5e-9, 2.5e-9, 1.25e-9}) {
        IntegratorConfig cfg;
        cfg.rel_tol = tol;
        cfg.abs_tol = tol;
        const auto traj = propagate(s0, 6.3036094149426, example_mu(), cfg);
        const double r = phase_distance(traj.samples().back(), s0);
        CAPTURE(tol);
        CHECK(r <= 10.0 * previous);
        previous = r;
    }
}

TEST_CASE("singularity guard")
{
    const MassParameter mu(kNominalMu);
    // Radial free fall into the second primary.
    const RotatingState s{1.0 - kNominalMu + 1e-3, 0.0, -0.5, 0.0, 0.0};
    CHECK(kind_of([&] { propagate(s, 1.0, mu); }) == ErrorKind::SingularityApproach);
}

TEST_CASE("first return")
{
    const auto r2 = first_return(reference_example(2).initial, 0.1, 0.5, 1e-3, example_mu());
    CHECK(std::abs(r2.time - 0.30139544664015) <= 1e-6);
    CHECK(r2.residual < 1e-9);

    const auto r4 = first_return(reference_example(4).initial, 5.0, 8.0, 1e-3, example_mu());
    CHECK(std::abs(r4.time - 6.2849221865548) <= 1e-4);

    // A window around a known period recovers it.
    const auto r1 = first_return(reference_example(1).initial, 6.2, 6.4, 1e-3, example_mu());
    const auto r1_wide = first_return(reference_example(1).initial, 1.0, 20.0, 1e-3, example_mu());
    CHECK(std::abs(r1.time - 6.3036094149426) <= 1e-9);
    CHECK(std::abs(r1.time - r1_wide.time) <= 1e-12);

    // The epoch of s0 does not matter.
    RotatingState shifted = reference_example(2).initial;
    shifted.t = 3.0;
    CHECK(std::abs(first_return(shifted, 0.1, 0.5, 1e-3, example_mu()).time - r2.time) < 1e-12);
}

TEST_CASE("first return failures")
{
    const MassParameter mu(kNominalMu);
    const auto l4 = lagrange_triangular(mu, TriangularPoint::L4);
    const RotatingState rest{l4.position.x, l4.position.y, 0.0, 0.0, 0.0};
    CHECK(kind_of([&] { first_return(rest, 0.1, 10.0, 1e-3, mu); }) == ErrorKind::NotFound);
    CHECK(kind_of([&] { first_return(reference_example(1).initial, 0.1, 5.0, 1e-3, example_mu()); }) ==
          ErrorKind::NotFound);
    CHECK_THROWS_AS(first_return(reference_example(1).initial, 5.0, 1.0, 1e-3, example_mu()), Error);
    CHECK_THROWS_AS(first_return(reference_example(1).initial, 1.0, 5.0, 0.0, example_mu()), Error);
}
