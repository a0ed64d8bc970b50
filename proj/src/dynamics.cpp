#include "pcr3bp/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pcr3bp/error.hpp"

namespace pcr3bp {

MassParameter::MassParameter(double mu) : mu_(mu)
{
    if (!(mu > 0.0 && mu <= 0.5)) {
        throw Error(ErrorKind::Domain, "mass parameter must satisfy 0 < mu <= 1/2, got " + std::to_string(mu));
    }
}

namespace {

PrimaryDistances checked_distances(Vec2 y, const MassParameter &mu)
{
    const auto d = primary_distances(y, mu);
    if (d.r1 == 0.0 || d.r2 == 0.0) {
        throw Error(ErrorKind::Domain, "effective potential is undefined at a primary");
    }
    if (!std::isfinite(d.r1) || !std::isfinite(d.r2)) {
        throw Error(ErrorKind::Domain, "non-finite position");
    }
    return d;
}

double potential_from(Vec2 y, const MassParameter &mu, const PrimaryDistances &d)
{
    const double m = mu.value();
    return 0.5 * (y.x * y.x + y.y * y.y) + (1.0 - m) / d.r1 + m / d.r2;
}

Vec2 gradient_from(Vec2 y, const MassParameter &mu, const PrimaryDistances &d)
{
    const double m = mu.value();
    const double k1 = (1.0 - m) / (d.r1 * d.r1 * d.r1);
    const double k2 = m / (d.r2 * d.r2 * d.r2);
    return {y.x - k1 * (y.x + m) - k2 * (y.x + m - 1.0), y.y - (k1 + k2) * y.y};
}

FieldSample sample_from(Vec2 y, const MassParameter &mu, double jacobi, const PrimaryDistances &d)
{
    FieldSample s;
    s.r1 = d.r1;
    s.r2 = d.r2;
    s.omega = potential_from(y, mu, d);
    const double g = 2.0 * s.omega - jacobi;
    if (!(g > 0.0)) {
        s.f = g == 0.0 ? 0.0 : std::sqrt(std::max(g, 0.0));
        return s;
    }
    s.f = std::sqrt(g);

    // ln f = ln(g) / 2 with g = 2 omega - C; laplacian of 1/r in the plane is 1/r^3.
    const double m = mu.value();
    const Vec2 grad_g = 2.0 * gradient_from(y, mu, d);
    const double lap_g = 4.0 + 2.0 * (1.0 - m) / (d.r1 * d.r1 * d.r1) + 2.0 * m / (d.r2 * d.r2 * d.r2);
    s.grad_ln_f = grad_g * (0.5 / g);
    s.delta_ln_f = 0.5 * (lap_g / g - dot(grad_g, grad_g) / (g * g));
    s.has_derivatives = true;
    return s;
}

} // namespace

PrimaryDistances primary_distances(Vec2 y, const MassParameter &mu)
{
    const double m = mu.value();
    return {std::hypot(y.x + m, y.y), std::hypot(y.x + m - 1.0, y.y)};
}

double effective_potential(Vec2 y, const MassParameter &mu)
{
    return potential_from(y, mu, checked_distances(y, mu));
}

Vec2 potential_gradient(Vec2 y, const MassParameter &mu)
{
    return gradient_from(y, mu, checked_distances(y, mu));
}

Phase vector_field(const Phase &s, const MassParameter &mu)
{
    const Vec2 grad = potential_gradient({s[0], s[1]}, mu);
    return {s[2], s[3], grad.x + 2.0 * s[3], grad.y - 2.0 * s[2]};
}

Phase vector_field(const RotatingState &s, const MassParameter &mu)
{
    return vector_field(s.phase(), mu);
}

double jacobi_constant(const RotatingState &s, const MassParameter &mu)
{
    return 2.0 * effective_potential(s.position(), mu) - (s.v1 * s.v1 + s.v2 * s.v2);
}

bool hill_test(Vec2 y, const MassParameter &mu, double jacobi)
{
    const auto d = primary_distances(y, mu);
    if (d.r1 == 0.0 || d.r2 == 0.0) {
        return false;
    }
    return 2.0 * potential_from(y, mu, d) - jacobi >= 0.0;
}

double hill_margin(Vec2 y, const MassParameter &mu, double jacobi)
{
    return 2.0 * effective_potential(y, mu) - jacobi;
}

FieldSample field_sample(Vec2 y, const MassParameter &mu, double jacobi)
{
    auto s = sample_from(y, mu, jacobi, checked_distances(y, mu));
    if (!s.has_derivatives) {
        throw Error(ErrorKind::Domain, "point lies outside the open Hill region (2 omega - C <= 0)");
    }
    return s;
}

FieldSample try_field_sample(Vec2 y, const MassParameter &mu, double jacobi)
{
    return sample_from(y, mu, jacobi, checked_distances(y, mu));
}

RotatingState rotating_from_inertial(const InertialState &s)
{
    const double c = std::cos(s.t), sn = std::sin(s.t);
    const double y1 = c * s.x1 + sn * s.x2;
    const double y2 = -sn * s.x1 + c * s.x2;
    // Differentiating the rotation adds (y2, -y1) to the rotated inertial velocity.
    const double v1 = c * s.u1 + sn * s.u2 + y2;
    const double v2 = -sn * s.u1 + c * s.u2 - y1;
    return {y1, y2, v1, v2, s.t};
}

InertialState inertial_from_rotating(const RotatingState &s)
{
    const double c = std::cos(s.t), sn = std::sin(s.t);
    const double w1 = s.v1 - s.y2;
    const double w2 = s.v2 + s.y1;
    return {c * s.y1 - sn * s.y2, sn * s.y1 + c * s.y2, c * w1 - sn * w2, sn * w1 + c * w2, s.t};
}

double triangular_critical_jacobi(const MassParameter &mu)
{
    const double m = mu.value();
    return 3.0 - m + m * m;
}

LagrangeTriangularPoint lagrange_triangular(const MassParameter &mu, TriangularPoint which)
{
    const double h = std::numbers::sqrt3 / 2.0;
    const Vec2 p{0.5 - mu.value(), which == TriangularPoint::L4 ? h : -h};
    return {which, p, triangular_critical_jacobi(mu)};
}

} // namespace pcr3bp
