#include "pcr3bp/curvegeom.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <string>

#include "pcr3bp/error.hpp"

namespace pcr3bp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kOnCurveTolerance = 1e-12;
constexpr double kSimplicityTolerance = 1e-10;

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b)
{
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    double s = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    return norm(p - (a + ab * s));
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

double segment_distance(Vec2 a, Vec2 b, Vec2 c, Vec2 d)
{
    const int o1 = sign_of(cross(b - a, c - a));
    const int o2 = sign_of(cross(b - a, d - a));
    const int o3 = sign_of(cross(d - c, a - c));
    const int o4 = sign_of(cross(d - c, b - c));
    if (o1 * o2 < 0 && o3 * o4 < 0) {
        return 0.0;
    }
    return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d), point_segment_distance(c, a, b),
                     point_segment_distance(d, a, b)});
}

std::complex<double> int_power(std::complex<double> z, int n)
{
    std::complex<double> result{1.0, 0.0};
    while (n > 0) {
        if (n & 1) {
            result *= z;
        }
        z *= z;
        n >>= 1;
    }
    return result;
}

} // namespace

ClosedPolyline::ClosedPolyline(std::vector<Vec2> vertices, std::vector<double> times)
    : vertices_(std::move(vertices)), times_(std::move(times))
{
    if (vertices_.size() < 16) {
        throw Error(ErrorKind::Domain, "closed polyline needs at least 16 vertices");
    }
    if (!times_.empty() && times_.size() != vertices_.size()) {
        throw Error(ErrorKind::Domain, "time stamps must match the vertex count");
    }
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const Vec2 v = vertices_[i];
        if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
            throw Error(ErrorKind::Domain, "closed polyline has a non-finite vertex");
        }
        if (v == vertices_[(i + 1) % vertices_.size()]) {
            throw Error(ErrorKind::Domain, "closed polyline has repeated consecutive vertices at index " +
                                               std::to_string(i));
        }
    }
}

ClosedPolyline ClosedPolyline::reversed() const
{
    std::vector<Vec2> v(vertices_.rbegin(), vertices_.rend());
    std::vector<double> t(times_.rbegin(), times_.rend());
    return ClosedPolyline(std::move(v), std::move(t));
}

double signed_area(const ClosedPolyline &c)
{
    // Anchored at the first vertex to limit cancellation for curves far from the origin.
    const Vec2 o = c[0];
    double acc = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        acc += cross(c[i] - o, c.edge_end(i) - o);
    }
    return 0.5 * acc;
}

Orientation orientation(const ClosedPolyline &c)
{
    return signed_area(c) > 0.0 ? Orientation::Counterclockwise : Orientation::Clockwise;
}

int winding_number(const ClosedPolyline &c, Vec2 p)
{
    double total = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Vec2 a = c[i], b = c.edge_end(i);
        if (point_segment_distance(p, a, b) <= kOnCurveTolerance) {
            throw Error(ErrorKind::PointOnCurve, "point lies on the curve");
        }
        total += std::atan2(cross(a - p, b - p), dot(a - p, b - p));
    }
    return static_cast<int>(std::lround(total / kTwoPi));
}

int turning_number(const ClosedPolyline &c)
{
    double total = 0.0;
    const std::size_t m = c.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2 e0 = c.edge_end(i) - c[i];
        const Vec2 e1 = c.edge_end((i + 1) % m) - c.edge_end(i);
        total += std::atan2(cross(e0, e1), dot(e0, e1));
    }
    return static_cast<int>(std::lround(total / kTwoPi));
}

bool is_simple(const ClosedPolyline &c)
{
    const std::size_t m = c.size();
    struct Box {
        double xmin, xmax, ymin, ymax;
        std::size_t edge;
    };
    std::vector<Box> boxes;
    boxes.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2 a = c[i], b = c.edge_end(i);
        boxes.push_back({std::min(a.x, b.x) - kSimplicityTolerance, std::max(a.x, b.x) + kSimplicityTolerance,
                         std::min(a.y, b.y) - kSimplicityTolerance, std::max(a.y, b.y) + kSimplicityTolerance, i});
    }
    std::sort(boxes.begin(), boxes.end(), [](const Box &a, const Box &b) { return a.xmin < b.xmin; });

    for (std::size_t u = 0; u < m; ++u) {
        const Box &bu = boxes[u];
        for (std::size_t v = u + 1; v < m && boxes[v].xmin <= bu.xmax; ++v) {
            const Box &bv = boxes[v];
            if (bv.ymin > bu.ymax || bv.ymax < bu.ymin) {
                continue;
            }
            const std::size_t i = bu.edge, j = bv.edge;
            if ((i + 1) % m == j || (j + 1) % m == i) {
                continue;
            }
            if (segment_distance(c[i], c.edge_end(i), c[j], c.edge_end(j)) < kSimplicityTolerance) {
                return false;
            }
        }
    }
    return true;
}

double distance_to(const ClosedPolyline &c, Vec2 p)
{
    double best = INFINITY;
    for (std::size_t i = 0; i < c.size(); ++i) {
        best = std::min(best, point_segment_distance(p, c[i], c.edge_end(i)));
    }
    return best;
}

WindingProfile winding_profile(const ClosedPolyline &c, const MassParameter &mu)
{
    return {winding_number(c, mu.primary1()), winding_number(c, mu.primary2()), turning_number(c), orientation(c)};
}

Vec2 push_forward(Vec2 p, Vec2 center, int n)
{
    if (n < 1) {
        throw Error(ErrorKind::Domain, "covering index must be at least 1");
    }
    const auto w = int_power({p.x - center.x, p.y - center.y}, n);
    return {center.x + w.real(), center.y + w.imag()};
}

ClosedPolyline push_forward(const ClosedPolyline &c, Vec2 center, int n)
{
    std::vector<Vec2> out;
    out.reserve(c.size());
    for (const Vec2 v : c.vertices()) {
        out.push_back(push_forward(v, center, n));
    }
    return ClosedPolyline(std::move(out), c.times());
}

LiftedCurve lift(const ClosedPolyline &c, Vec2 center, int n)
{
    if (n < 1) {
        throw Error(ErrorKind::Domain, "covering index must be at least 1");
    }
    const int w = winding_number(c, center);
    if (std::abs(w) != n) {
        throw Error(ErrorKind::WindingMismatch,
                    "curve winds " + std::to_string(w) + " times around the center, expected +-" + std::to_string(n));
    }

    const std::size_t m = c.size();
    LiftedCurve out{center, n, c, {}, {}, 0.0, 0.0};
    out.q.resize(m);
    out.gamma.resize(m);
    constexpr double kMaxIncrement = std::numbers::pi / 2.0;
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2 d = c[i] - center;
        out.q[i] = norm(d);
        if (i == 0) {
            out.gamma[0] = std::atan2(d.y, d.x);
            continue;
        }
        const Vec2 prev = c[i - 1] - center;
        const double step = std::atan2(cross(prev, d), dot(prev, d));
        if (std::abs(step) >= kMaxIncrement) {
            throw Error(ErrorKind::Domain, "consecutive vertices subtend pi/2 or more about the center; resample");
        }
        out.gamma[i] = out.gamma[i - 1] + step;
    }
    const Vec2 last = c[m - 1] - center, first = c[0] - center;
    out.gamma_total = out.gamma[m - 1] + std::atan2(cross(last, first), dot(last, first)) - out.gamma[0];

    std::vector<Vec2> beta(m);
    const double inv_n = 1.0 / n;
    for (std::size_t i = 0; i < m; ++i) {
        const double radius = n == 1 ? out.q[i] : std::pow(out.q[i], inv_n);
        const double angle = out.gamma[i] * inv_n;
        beta[i] = n == 1 ? c[i] : Vec2{center.x + radius * std::cos(angle), center.y + radius * std::sin(angle)};
    }
    out.beta = ClosedPolyline(std::move(beta), c.times());

    double err = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        err = std::max(err, norm(push_forward(out.beta[i], center, n) - c[i]));
    }
    out.roundtrip_error = err;
    if (err > 1e-9) {
        throw Error(ErrorKind::Domain, "lifting roundtrip error " + std::to_string(err) + " exceeds 1e-9");
    }
    if (!is_simple(out.beta)) {
        throw Error(ErrorKind::NonSimpleLifting, "lifting is not simple; the curve is not n-simple about this center");
    }
    return out;
}

} // namespace pcr3bp
