#include "doctest.h"
#include "fixtures.hpp"
#include "pcr3bp/error.hpp"

using namespace pcr3bp;
using fixtures::example_mu;

namespace {

double ln_f(Vec2 p, const MassParameter &mu, double c)
{
    return 0.5 * std::log(2.0 * effective_potential(p, mu) - c);
}

/// Five-point Laplacian at h and h/2 combined by Richardson extrapolation.
double fd_laplacian(Vec2 p, const MassParameter &mu, double c, double h)
{
    const auto lap = [&](double s) {
        return (ln_f({p.x + s, p.y}, mu, c) + ln_f({p.x - s, p.y}, mu, c) + ln_f({p.x, p.y + s}, mu, c) +
                ln_f({p.x, p.y - s}, mu, c) - 4.0 * ln_f(p, mu, c)) /
               (s * s);
    };
    return (4.0 * lap(0.5 * h) - lap(h)) / 3.0;
}

Vec2 fd_gradient(const auto &fn, Vec2 p, double h)
{
    return {(fn({p.x + h, p.y}) - fn({p.x - h, p.y})) / (2.0 * h), (fn({p.x, p.y + h}) - fn({p.x, p.y - h})) / (2.0 * h)};
}

double rel(double a, double b)
{
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

} // namespace

TEST_CASE("mass parameter domain")
{
    CHECK_THROWS_AS(MassParameter(0.0), Error);
    CHECK_THROWS_AS(MassParameter(-0.1), Error);
    CHECK_THROWS_AS(MassParameter(0.6), Error);
    CHECK_THROWS_AS(MassParameter(NAN), Error);
    const MassParameter half(0.5);
    CHECK(half.primary1() == Vec2{-0.5, 0.0});
    CHECK(half.primary2() == Vec2{0.5, 0.0});
    const MassParameter mu(kNominalMu);
    CHECK(mu.primary1() == Vec2{-kNominalMu, 0.0});
    CHECK(mu.primary2() == Vec2{1.0 - kNominalMu, 0.0});
}

TEST_CASE("effective potential")
{
    CHECK(effective_potential({0.0, 0.0}, MassParameter(0.5)) == doctest::Approx(2.0).epsilon(1e-15));
    const MassParameter mu(kNominalMu);
    const auto l4 = lagrange_triangular(mu, TriangularPoint::L4);
    CHECK(std::abs(2.0 * effective_potential(l4.position, mu) - l4.c0) < 1e-14);
    CHECK_THROWS_AS(effective_potential(mu.primary1(), mu), Error);
    CHECK_THROWS_AS(effective_potential(mu.primary2(), mu), Error);
}

TEST_CASE("potential gradient matches central differences")
{
    std::mt19937_64 rng(7);
    const MassParameter mu(kNominalMu);
    const auto omega = [&](Vec2 p) { return effective_potential(p, mu); };
    for (int i = 0; i < 20; ++i) {
        const Vec2 p = fixtures::random_point(rng, mu);
        const Vec2 g = potential_gradient(p, mu);
        const Vec2 fd = fd_gradient(omega, p, 1e-5);
        CHECK(std::abs(g.x - fd.x) <= 1e-7 * std::max(1.0, std::abs(g.x)));
        CHECK(std::abs(g.y - fd.y) <= 1e-7 * std::max(1.0, std::abs(g.y)));
    }
}

TEST_CASE("vector field")
{
    const MassParameter mu(kNominalMu);
    const auto l4 = lagrange_triangular(mu, TriangularPoint::L4);
    const Phase at_l4 = vector_field(RotatingState{l4.position.x, l4.position.y, 0.0, 0.0, 0.0}, mu);
    for (double x : at_l4) {
        CHECK(std::abs(x) < 1e-12);
    }
    std::mt19937_64 rng(11);
    for (int i = 0; i < 10; ++i) {
        const Vec2 p = fixtures::random_point(rng, mu);
        const Vec2 g = potential_gradient(p, mu);
        const Phase rest = vector_field(Phase{p.x, p.y, 0.0, 0.0}, mu);
        CHECK(rest[0] == 0.0);
        CHECK(rest[1] == 0.0);
        CHECK(rest[2] == g.x);
        CHECK(rest[3] == g.y);
        const Phase moving = vector_field(Phase{p.x, p.y, 0.3, -0.7}, mu);
        CHECK(moving[0] == 0.3);
        CHECK(moving[1] == -0.7);
        CHECK(moving[2] == doctest::Approx(g.x + 2.0 * -0.7).epsilon(1e-14));
        CHECK(moving[3] == doctest::Approx(g.y - 2.0 * 0.3).epsilon(1e-14));
    }
}

TEST_CASE("jacobi constant of the built-in examples")
{
    for (const auto &ex : reference_examples()) {
        CAPTURE(ex.id);
        CHECK(std::abs(jacobi_constant(ex.initial, example_mu()) - ex.jacobi) < 1e-11);
    }
    // The rounded mass ratio reproduces the reference constants only to ~1e-7.
    const MassParameter rounded(kNominalMu);
    CHECK(std::abs(jacobi_constant(reference_example(1).initial, rounded) - 2.9986240063314) < 1e-6);
    CHECK(std::abs(jacobi_constant(reference_example(3).initial, rounded) - -3.5390576031917) < 1e-6);
}

TEST_CASE("jacobi constant properties")
{
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> v(-1.0, 1.0);
    const MassParameter mu(kNominalMu);
    for (int i = 0; i < 50; ++i) {
        const Vec2 p = fixtures::random_point(rng, mu);
        const RotatingState rest{p.x, p.y, 0.0, 0.0, 0.0};
        CHECK(jacobi_constant(rest, mu) == 2.0 * effective_potential(p, mu));
        const RotatingState s{p.x, p.y, v(rng), v(rng), 0.0};
        const RotatingState mirrored{s.y1, -s.y2, -s.v1, s.v2, 0.0};
        CHECK(jacobi_constant(s, mu) == jacobi_constant(mirrored, mu));
        const double c = jacobi_constant(s, mu);
        const auto field = try_field_sample(p, mu, c);
        if (field.has_derivatives) {
            CHECK(field.f * field.f == doctest::Approx(s.v1 * s.v1 + s.v2 * s.v2).epsilon(1e-12));
        }
    }
}

TEST_CASE("hill test")
{
    const MassParameter mu(kNominalMu);
    const auto l4 = lagrange_triangular(mu, TriangularPoint::L4);
    CHECK_FALSE(hill_test(mu.primary1(), mu, 3.0));
    CHECK_FALSE(hill_test(mu.primary2(), mu, -10.0));
    CHECK(hill_test(l4.position, mu, l4.c0 - 1e-3));
    for (const double r : {0.0, 1e-3, 1e-2}) {
        const Vec2 p{l4.position.x + r * 0.6, l4.position.y - r * 0.8};
        CHECK_FALSE(hill_test(p, mu, l4.c0 + 0.05));
    }
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> c(-2.0, 4.0);
    for (int i = 0; i < 100; ++i) {
        const Vec2 p = fixtures::random_point(rng, mu);
        const double c1 = c(rng), c2 = c(rng);
        if (hill_test(p, mu, std::max(c1, c2))) {
            CHECK(hill_test(p, mu, std::min(c1, c2)));
        }
    }
}

TEST_CASE("field sample derivatives match finite differences")
{
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> speed2(0.05, 1.0);
    const MassParameter mu(kNominalMu);
    for (int i = 0; i < 50; ++i) {
        const Vec2 p = fixtures::random_point(rng, mu);
        const double c = 2.0 * effective_potential(p, mu) - speed2(rng);
        const auto s = field_sample(p, mu, c);
        REQUIRE(s.has_derivatives);
        const Vec2 fd = fd_gradient([&](Vec2 q) { return ln_f(q, mu, c); }, p, 1e-5);
        CHECK(norm(s.grad_ln_f - fd) <= 1e-5 * std::max(norm(s.grad_ln_f), 1.0));
        const double lap = fd_laplacian(p, mu, c, 1e-4);
        CAPTURE(p.x);
        CAPTURE(p.y);
        CHECK(rel(s.delta_ln_f, lap) <= 1e-5);
    }
}

TEST_CASE("field sample outside the Hill region")
{
    const MassParameter mu(kNominalMu);
    const auto l4 = lagrange_triangular(mu, TriangularPoint::L4);
    CHECK_THROWS_AS(field_sample(l4.position, mu, l4.c0 + 0.1), Error);
    const auto s = try_field_sample(l4.position, mu, l4.c0 + 0.1);
    CHECK_FALSE(s.has_derivatives);
    CHECK(s.r1 > 0.0);
    CHECK(s.r2 > 0.0);
}

TEST_CASE("far field is nearly harmonic")
{
    const MassParameter mu(kNominalMu);
    const auto s = field_sample({100.0, 0.0}, mu, 3.0);
    CHECK(std::abs(s.delta_ln_f) < 1e-3);
    CHECK(std::abs(s.delta_ln_f - fd_laplacian({100.0, 0.0}, mu, 3.0, 1e-1)) < 1e-6);
}

TEST_CASE("laplacian of ln f at L4")
{
    const MassParameter mu(kNominalMu);
    const auto l4 = lagrange_triangular(mu, TriangularPoint::L4);
    for (const double c : {2.0, 2.5, 2.9, 2.99, l4.c0 - 1e-6}) {
        const auto s = field_sample(l4.position, mu, c);
        CHECK(rel(s.delta_ln_f, 3.0 / (3.0 + kNominalMu * kNominalMu - kNominalMu - c)) <= 1e-12);
    }
}

TEST_CASE("triangular points")
{
    for (const double m : {kNominalMu, 0.01, 0.3, 0.5}) {
        const MassParameter mu(m);
        for (const auto which : {TriangularPoint::L4, TriangularPoint::L5}) {
            const auto l = lagrange_triangular(mu, which);
            const auto d = primary_distances(l.position, mu);
            CHECK(std::abs(d.r1 - 1.0) < 1e-15);
            CHECK(std::abs(d.r2 - 1.0) < 1e-15);
            CHECK(std::abs(2.0 * effective_potential(l.position, mu) - l.c0) < 1e-14);
            CHECK(l.c0 == 3.0 - m + m * m);
            CHECK(norm(potential_gradient(l.position, mu)) < 1e-12);
        }
    }
    const auto half = lagrange_triangular(MassParameter(0.5), TriangularPoint::L4);
    CHECK(half.position.x == 0.0);
    CHECK(half.position.y == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
    const auto l5 = lagrange_triangular(MassParameter(kNominalMu), TriangularPoint::L5);
    CHECK(l5.position.y < 0.0);
}

TEST_CASE("rotating and inertial frames")
{
    const RotatingState r{0.3, -0.4, 0.5, 0.25, 0.0};
    const InertialState i = inertial_from_rotating(r);
    CHECK(i.x1 == r.y1);
    CHECK(i.x2 == r.y2);
    CHECK(i.u1 == doctest::Approx(r.v1 - r.y2).epsilon(1e-15));
    CHECK(i.u2 == doctest::Approx(r.v2 + r.y1).epsilon(1e-15));

    for (const double t : {0.0, 0.7, 2.0, 5.5}) {
        const InertialState circ{std::cos(t), std::sin(t), -std::sin(t), std::cos(t), t};
        const RotatingState rot = rotating_from_inertial(circ);
        CHECK(std::abs(rot.y1 - 1.0) < 1e-15);
        CHECK(std::abs(rot.y2) < 1e-15);
        CHECK(std::abs(rot.v1) < 1e-15);
        CHECK(std::abs(rot.v2) < 1e-15);
    }

    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-2.0, 2.0), tt(-20.0, 20.0);
    for (int k = 0; k < 100; ++k) {
        const RotatingState s{u(rng), u(rng), u(rng), u(rng), tt(rng)};
        const RotatingState back = rotating_from_inertial(inertial_from_rotating(s));
        CHECK(phase_distance(s, back) < 1e-14 * 10);
        CHECK(back.t == s.t);
    }
}
