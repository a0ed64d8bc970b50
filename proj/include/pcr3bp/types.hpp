#pragma once

#include <array>
#include <cmath>

namespace pcr3bp {

/// Point or vector in the rotating plane.
struct Vec2 {
    double x{0.0};
    double y{0.0};

    constexpr Vec2 &operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2 &operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
    constexpr Vec2 &operator*=(double s) { x *= s; y *= s; return *this; }

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return a += b; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return a -= b; }
    friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
    friend constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
    friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Phase-space vector (y1, y2, v1, v2).
using Phase = std::array<double, 4>;

/// Mass ratio of the second primary, 0 < mu <= 1/2. Primaries sit at (-mu, 0) and (1 - mu, 0).
class MassParameter {
public:
    explicit MassParameter(double mu);

    double value() const { return mu_; }
    Vec2 primary1() const { return {-mu_, 0.0}; }
    Vec2 primary2() const { return {1.0 - mu_, 0.0}; }

    friend bool operator==(const MassParameter &, const MassParameter &) = default;

private:
    double mu_;
};

/// State of the massless body in the rotating frame; t is the epoch in radians of primary revolution.
struct RotatingState {
    double y1{0.0};
    double y2{0.0};
    double v1{0.0};
    double v2{0.0};
    double t{0.0};

    Vec2 position() const { return {y1, y2}; }
    Vec2 velocity() const { return {v1, v2}; }
    Phase phase() const { return {y1, y2, v1, v2}; }
    static RotatingState from_phase(const Phase &p, double t) { return {p[0], p[1], p[2], p[3], t}; }
};

struct InertialState {
    double x1{0.0};
    double x2{0.0};
    double u1{0.0};
    double u2{0.0};
    double t{0.0};
};

/// Unweighted Euclidean distance on (y1, y2, v1, v2).
inline double phase_distance(const RotatingState &a, const RotatingState &b)
{
    const double d0 = a.y1 - b.y1, d1 = a.y2 - b.y2, d2 = a.v1 - b.v1, d3 = a.v2 - b.v2;
    return std::sqrt(d0 * d0 + d1 * d1 + d2 * d2 + d3 * d3);
}

enum class Orientation { Clockwise, Counterclockwise };

inline const char *to_string(Orientation o)
{
    return o == Orientation::Clockwise ? "clockwise" : "counterclockwise";
}

} // namespace pcr3bp
