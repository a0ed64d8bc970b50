#pragma once

#include "pcr3bp/types.hpp"

namespace pcr3bp {

/// Effective potential and its pieces at a point, plus the speed field f = sqrt(2 omega - C).
///
/// grad_ln_f and delta_ln_f are only meaningful when has_derivatives is set, which
/// requires 2 omega - C > 0.
struct FieldSample {
    double omega{0.0};
    double r1{0.0};
    double r2{0.0};
    double f{0.0};
    Vec2 grad_ln_f{};
    double delta_ln_f{0.0};
    bool has_derivatives{false};
};

enum class TriangularPoint { L4, L5 };

struct LagrangeTriangularPoint {
    TriangularPoint which{TriangularPoint::L4};
    Vec2 position{};
    double c0{0.0};
};

/// Distances to the primaries at (-mu, 0) and (1 - mu, 0).
struct PrimaryDistances {
    double r1;
    double r2;
};

PrimaryDistances primary_distances(Vec2 y, const MassParameter &mu);

/// omega = |y|^2 / 2 + (1 - mu) / r1 + mu / r2. Throws Domain at either primary.
double effective_potential(Vec2 y, const MassParameter &mu);

/// Analytic gradient of omega.
Vec2 potential_gradient(Vec2 y, const MassParameter &mu);

/// Right-hand side (v1, v2, omega_y1 + 2 v2, omega_y2 - 2 v1) of the rotating-frame equations.
Phase vector_field(const Phase &s, const MassParameter &mu);
Phase vector_field(const RotatingState &s, const MassParameter &mu);

/// C = 2 omega - |v|^2.
double jacobi_constant(const RotatingState &s, const MassParameter &mu);

/// Membership in the Hill region {2 omega - C >= 0}; the primaries are never members.
bool hill_test(Vec2 y, const MassParameter &mu, double jacobi);

/// g = 2 omega - C; negative outside the Hill region. Throws Domain at the primaries.
double hill_margin(Vec2 y, const MassParameter &mu, double jacobi);

/// Evaluates omega, f and the derivatives of ln f. Throws Domain unless 2 omega - C > 0.
FieldSample field_sample(Vec2 y, const MassParameter &mu, double jacobi);

/// Same as field_sample but reports a non-positive margin through has_derivatives
/// instead of throwing. Still throws at the primaries.
FieldSample try_field_sample(Vec2 y, const MassParameter &mu, double jacobi);

RotatingState rotating_from_inertial(const InertialState &s);
InertialState inertial_from_rotating(const RotatingState &s);

/// C0 = 3 - mu + mu^2, the Jacobi value of L4 and L5.
double triangular_critical_jacobi(const MassParameter &mu);

/// L4 = (1/2 - mu, sqrt(3)/2), L5 its mirror image; both at unit distance from each primary.
LagrangeTriangularPoint lagrange_triangular(const MassParameter &mu, TriangularPoint which);

} // namespace pcr3bp
