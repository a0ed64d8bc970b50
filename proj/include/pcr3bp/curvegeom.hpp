#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pcr3bp/types.hpp"

namespace pcr3bp {

/// Closed planar polyline; the closing edge from the last vertex back to the first is implicit.
///
/// Holds at least 16 vertices, consecutive vertices are distinct and the first vertex is
/// not repeated at the end. Optional per-vertex time stamps must match the vertex count.
class ClosedPolyline {
public:
    explicit ClosedPolyline(std::vector<Vec2> vertices, std::vector<double> times = {});

    std::size_t size() const { return vertices_.size(); }
    const std::vector<Vec2> &vertices() const { return vertices_; }
    const std::vector<double> &times() const { return times_; }
    bool has_times() const { return !times_.empty(); }
    Vec2 operator[](std::size_t i) const { return vertices_[i]; }
    /// Edge i runs from vertex i to vertex (i + 1) mod size.
    Vec2 edge_end(std::size_t i) const { return vertices_[(i + 1) % vertices_.size()]; }

    ClosedPolyline reversed() const;

private:
    std::vector<Vec2> vertices_;
    std::vector<double> times_;
};

/// Shoelace area; positive iff counterclockwise.
double signed_area(const ClosedPolyline &c);

Orientation orientation(const ClosedPolyline &c);

/// Number of counterclockwise turns of c around p. Throws PointOnCurve when p is within
/// 1e-12 of an edge.
int winding_number(const ClosedPolyline &c, Vec2 p);

/// Number of turns of the edge direction (sum of exterior angles over 2 pi).
int turning_number(const ClosedPolyline &c);

/// True iff no two non-adjacent edges come within 1e-10 of each other.
bool is_simple(const ClosedPolyline &c);

/// Distance from p to the nearest point of c.
double distance_to(const ClosedPolyline &c, Vec2 p);

struct WindingProfile {
    int w_primary1{0};
    int w_primary2{0};
    int turning{0};
    Orientation orientation{Orientation::Counterclockwise};
};

WindingProfile winding_profile(const ClosedPolyline &c, const MassParameter &mu);

/// Image of p under z -> center + (z - center)^n.
Vec2 push_forward(Vec2 p, Vec2 center, int n);
ClosedPolyline push_forward(const ClosedPolyline &c, Vec2 center, int n);

/// n-th root lifting of a curve that winds n times around center.
struct LiftedCurve {
    Vec2 center{};
    int n{1};
    ClosedPolyline beta;
    std::vector<double> q;     ///< |alpha - center| per vertex
    std::vector<double> gamma; ///< continuous polar angle of alpha - center per vertex
    double gamma_total{0.0};   ///< gamma change over the closed curve, +-2 pi n
    double roundtrip_error{0.0};
};

/// Computes beta = center + q^(1/n) (cos(gamma/n), sin(gamma/n)). Throws WindingMismatch unless
/// the winding number about center is +-n, Domain when consecutive vertices subtend pi/2 or
/// more about the center, and NonSimpleLifting when beta self-intersects.
LiftedCurve lift(const ClosedPolyline &c, Vec2 center, int n);

} // namespace pcr3bp
