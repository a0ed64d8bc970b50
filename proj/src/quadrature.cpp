#include "pcr3bp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "pcr3bp/error.hpp"

namespace pcr3bp {

namespace {

/// Gauss-Legendre rule mapped to [0, 1].
struct UnitRule {
    std::vector<double> x;
    std::vector<double> w;
};

template <unsigned N>
UnitRule unit_gauss()
{
    using G = boost::math::quadrature::gauss<double, N>;
    const auto &a = G::abscissa();
    const auto &w = G::weights();
    std::vector<std::pair<double, double>> nodes;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) {
            nodes.emplace_back(0.5, 0.5 * w[i]);
        } else {
            nodes.emplace_back(0.5 - 0.5 * a[i], 0.5 * w[i]);
            nodes.emplace_back(0.5 + 0.5 * a[i], 0.5 * w[i]);
        }
    }
    std::sort(nodes.begin(), nodes.end());
    UnitRule r;
    for (const auto &[x, wt] : nodes) {
        r.x.push_back(x);
        r.w.push_back(wt);
    }
    return r;
}

const UnitRule &cell_rule()
{
    static const UnitRule r = unit_gauss<7>();
    return r;
}

const UnitRule &polar_angle_rule()
{
    static const UnitRule r = unit_gauss<20>();
    return r;
}

const UnitRule &polar_radius_rule()
{
    static const UnitRule r = unit_gauss<10>();
    return r;
}

struct Rect {
    double x0, y0, x1, y1;

    double area() const { return (x1 - x0) * (y1 - y0); }
    Vec2 center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
};

double polygon_area(const std::vector<Vec2> &p)
{
    if (p.size() < 3) {
        return 0.0;
    }
    const Vec2 o = p[0];
    double acc = 0.0;
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
        acc += cross(p[i] - o, p[i + 1] - o);
    }
    return 0.5 * acc;
}

// Sutherland-Hodgman against an axis-aligned rectangle. Concave inputs may leave degenerate
// edges along the rectangle boundary; they carry zero signed area.
std::vector<Vec2> clip_to_rect(const std::vector<Vec2> &poly, const Rect &r)
{
    std::vector<Vec2> cur = poly;
    std::vector<Vec2> next;
    for (int side = 0; side < 4 && !cur.empty(); ++side) {
        auto inside = [&](Vec2 p) {
            switch (side) {
            case 0: return p.x >= r.x0;
            case 1: return p.x <= r.x1;
            case 2: return p.y >= r.y0;
            default: return p.y <= r.y1;
            }
        };
        auto intersect = [&](Vec2 a, Vec2 b) {
            double s;
            switch (side) {
            case 0: s = (r.x0 - a.x) / (b.x - a.x); return Vec2{r.x0, a.y + s * (b.y - a.y)};
            case 1: s = (r.x1 - a.x) / (b.x - a.x); return Vec2{r.x1, a.y + s * (b.y - a.y)};
            case 2: s = (r.y0 - a.y) / (b.y - a.y); return Vec2{a.x + s * (b.x - a.x), r.y0};
            default: s = (r.y1 - a.y) / (b.y - a.y); return Vec2{a.x + s * (b.x - a.x), r.y1};
            }
        };
        next.clear();
        const std::size_t m = cur.size();
        for (std::size_t i = 0; i < m; ++i) {
            const Vec2 a = cur[i], b = cur[(i + 1) % m];
            const bool ia = inside(a), ib = inside(b);
            if (ia) {
                next.push_back(a);
                if (!ib) {
                    next.push_back(intersect(a, b));
                }
            } else if (ib) {
                next.push_back(intersect(a, b));
            }
        }
        std::swap(cur, next);
    }
    return cur;
}

class CellQuadrature {
public:
    CellQuadrature(const RegionIntegrand &f, std::vector<Rect> holes, double tolerance, int max_depth, double root_area)
        : f_(f), holes_(std::move(holes)), tolerance_(tolerance), max_depth_(max_depth), root_area_(root_area)
    {
    }

    void run(const Rect &root, const std::vector<Vec2> &poly)
    {
        for (const Rect &piece : subtract_holes(root, 0)) {
            refine(piece, clip_to_rect(poly, piece), 0, NAN);
        }
    }

    double value() const { return value_; }
    double error() const { return error_; }
    std::size_t cells() const { return cells_; }

private:
    static constexpr int kMinAdaptiveDepth = 3;
    static constexpr int kExtraDepthForUndefined = 4;

    std::vector<Rect> subtract_holes(const Rect &r, std::size_t first_hole) const
    {
        for (std::size_t h = first_hole; h < holes_.size(); ++h) {
            const Rect &H = holes_[h];
            if (H.x0 >= r.x1 || H.x1 <= r.x0 || H.y0 >= r.y1 || H.y1 <= r.y0) {
                continue;
            }
            std::vector<Rect> pieces;
            if (r.x0 < H.x0) {
                pieces.push_back({r.x0, r.y0, H.x0, r.y1});
            }
            if (H.x1 < r.x1) {
                pieces.push_back({H.x1, r.y0, r.x1, r.y1});
            }
            const double xa = std::max(r.x0, H.x0), xb = std::min(r.x1, H.x1);
            if (r.y0 < H.y0) {
                pieces.push_back({xa, r.y0, xb, H.y0});
            }
            if (H.y1 < r.y1) {
                pieces.push_back({xa, H.y1, xb, r.y1});
            }
            std::vector<Rect> out;
            for (const Rect &p : pieces) {
                for (const Rect &q : subtract_holes(p, h + 1)) {
                    out.push_back(q);
                }
            }
            return out;
        }
        return {r};
    }

    double tensor_rule(const Rect &r) const
    {
        const auto &g = cell_rule();
        const double dx = r.x1 - r.x0, dy = r.y1 - r.y0;
        double acc = 0.0;
        for (std::size_t i = 0; i < g.x.size(); ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < g.x.size(); ++j) {
                row += g.w[j] * f_({r.x0 + dx * g.x[i], r.y0 + dy * g.x[j]});
            }
            acc += g.w[i] * row;
        }
        return acc * dx * dy;
    }

    // Collapsed (Duffy) product rule on triangle (a, b, c), signed by its orientation.
    double triangle_rule(Vec2 a, Vec2 b, Vec2 c) const
    {
        const auto &g = cell_rule();
        const double twice_area = cross(b - a, c - a);
        if (twice_area == 0.0) {
            return 0.0;
        }
        double acc = 0.0;
        for (std::size_t i = 0; i < g.x.size(); ++i) {
            const double u = g.x[i];
            const Vec2 p = a + (b - a) * u;
            const Vec2 q = (c - b) * u;
            double inner = 0.0;
            for (std::size_t j = 0; j < g.x.size(); ++j) {
                inner += g.w[j] * f_(p + q * g.x[j]);
            }
            acc += g.w[i] * u * inner;
        }
        return acc * twice_area;
    }

    double estimate(const Rect &r, const std::vector<Vec2> &poly) const
    {
        const double a = polygon_area(poly);
        const double full = r.area();
        if (std::abs(a) <= 1e-14 * full) {
            return 0.0;
        }
        if (std::abs(a - full) <= 1e-12 * full) {
            return tensor_rule(r);
        }
        const Vec2 o = r.center();
        double acc = 0.0;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            acc += triangle_rule(o, poly[i], poly[(i + 1) % poly.size()]);
        }
        return acc;
    }

    void refine(const Rect &r, const std::vector<Vec2> &poly, int depth, double est)
    {
        if (poly.size() < 3 || std::abs(polygon_area(poly)) <= 1e-14 * r.area()) {
            return;
        }
        struct Child {
            Rect rect;
            std::vector<Vec2> poly;
            double est;
        };
        std::vector<Child> children;
        const Vec2 m = r.center();
        const Rect quads[4] = {{r.x0, r.y0, m.x, m.y}, {m.x, r.y0, r.x1, m.y}, {r.x0, m.y, m.x, r.y1}, {m.x, m.y, r.x1, r.y1}};
        const bool adaptive = depth + 1 >= kMinAdaptiveDepth;
        double sum = 0.0;
        for (const Rect &q : quads) {
            for (const Rect &piece : subtract_holes(q, 0)) {
                Child c{piece, clip_to_rect(poly, piece), 0.0};
                if (c.poly.size() < 3) {
                    continue;
                }
                c.est = adaptive ? estimate(c.rect, c.poly) : NAN;
                sum += c.est;
                children.push_back(std::move(c));
            }
        }
        if (!adaptive) {
            for (auto &c : children) {
                refine(c.rect, c.poly, depth + 1, NAN);
            }
            return;
        }

        const double local_tol = tolerance_ * r.area() / root_area_;
        const double diff = std::abs(est - sum);
        const bool defined = std::isfinite(sum);
        const bool settled = defined && std::isfinite(est) && diff <= local_tol;
        if (settled || (defined && depth + 1 >= max_depth_)) {
            value_ += sum;
            error_ += std::isfinite(diff) ? diff : 0.0;
            cells_ += children.size();
            return;
        }
        if (!defined && depth + 1 >= max_depth_ + kExtraDepthForUndefined) {
            throw Error(ErrorKind::RegionExitsHillRegion,
                        "integrand undefined near (" + std::to_string(m.x) + ", " + std::to_string(m.y) + ")");
        }
        for (auto &c : children) {
            refine(c.rect, c.poly, depth + 1, c.est);
        }
    }

    const RegionIntegrand &f_;
    std::vector<Rect> holes_;
    double tolerance_;
    int max_depth_;
    double root_area_;
    double value_{0.0};
    double error_{0.0};
    std::size_t cells_{0};
};

// Integral over the square of half-width s about p minus the disk of radius eps, in polar coordinates.
double polar_square_minus_disk(const RegionIntegrand &f, Vec2 p, double s, double eps)
{
    const auto &ga = polar_angle_rule();
    const auto &gr = polar_radius_rule();
    constexpr double kOctant = std::numbers::pi / 4.0;
    double total = 0.0;
    for (int oct = 0; oct < 8; ++oct) {
        const double phi0 = oct * kOctant;
        double sector = 0.0;
        for (std::size_t i = 0; i < ga.x.size(); ++i) {
            const double phi = phi0 + kOctant * ga.x[i];
            const double c = std::cos(phi), sn = std::sin(phi);
            const double outer = s / std::max(std::abs(c), std::abs(sn));
            // Geometric panels resolve the 1/r structure of the integrand near the center.
            double ray = 0.0;
            double lo = eps;
            while (lo < outer) {
                const double hi = std::min(2.0 * lo, outer);
                double panel = 0.0;
                for (std::size_t j = 0; j < gr.x.size(); ++j) {
                    const double r = lo + (hi - lo) * gr.x[j];
                    panel += gr.w[j] * f({p.x + r * c, p.y + r * sn}) * r;
                }
                ray += panel * (hi - lo);
                lo = hi;
            }
            sector += ga.w[i] * ray;
        }
        total += sector * kOctant;
    }
    return total;
}

} // namespace

void QuadratureConfig::validate() const
{
    for (std::size_t i = 0; i < epsilon_schedule.size(); ++i) {
        if (!(epsilon_schedule[i] >= 1e-5)) {
            throw Error(ErrorKind::Domain, "excision radii must be at least 1e-5");
        }
        if (i > 0 && !(epsilon_schedule[i] < epsilon_schedule[i - 1])) {
            throw Error(ErrorKind::Domain, "excision radii must be strictly decreasing");
        }
    }
    if (epsilon_schedule.empty()) {
        throw Error(ErrorKind::Domain, "excision schedule is empty");
    }
    if (!(cell_tolerance > 0.0)) {
        throw Error(ErrorKind::Domain, "cell tolerance must be positive");
    }
    if (max_depth < 1 || max_depth > 30) {
        throw Error(ErrorKind::Domain, "max_depth must lie in [1, 30]");
    }
}

bool point_in_polygon(std::span<const Vec2> polygon, Vec2 p)
{
    bool inside = false;
    const std::size_t m = polygon.size();
    for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
        const Vec2 a = polygon[i], b = polygon[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x) {
                inside = !inside;
            }
        }
    }
    return inside;
}

std::pair<double, double> extrapolate_to_zero(std::span<const double> eps, std::span<const double> values)
{
    const std::size_t m = eps.size();
    if (m == 0 || values.size() != m) {
        throw Error(ErrorKind::Domain, "extrapolation needs matching, non-empty inputs");
    }
    if (m == 1) {
        return {values[0], 0.0};
    }
    // Neville table evaluated at zero; table[i] after pass k interpolates points i..i+k.
    std::vector<double> table(values.begin(), values.end());
    double previous_best = table[1];
    for (std::size_t k = 1; k < m; ++k) {
        for (std::size_t i = 0; i + k < m; ++i) {
            table[i] = (eps[i] * table[i + 1] - eps[i + k] * table[i]) / (eps[i] - eps[i + k]);
        }
        if (k == m - 2) {
            previous_best = table[1];
        }
    }
    if (m == 2) {
        previous_best = values[1];
    }
    return {table[0], std::abs(table[0] - previous_best)};
}

RegionIntegral integrate_region(const ClosedPolyline &region, const RegionIntegrand &integrand,
                                std::span<const Vec2> excised, const QuadratureConfig &cfg)
{
    cfg.validate();
    std::vector<Vec2> poly = region.vertices();
    if (signed_area(region) < 0.0) {
        std::reverse(poly.begin(), poly.end());
    }

    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const Vec2 v : poly) {
        xmin = std::min(xmin, v.x);
        xmax = std::max(xmax, v.x);
        ymin = std::min(ymin, v.y);
        ymax = std::max(ymax, v.y);
    }
    const double side = std::max(xmax - xmin, ymax - ymin) * (1.0 + 1e-9);
    const Vec2 mid{0.5 * (xmin + xmax), 0.5 * (ymin + ymax)};
    const Rect root{mid.x - 0.5 * side, mid.y - 0.5 * side, mid.x + 0.5 * side, mid.y + 0.5 * side};

    // Squares about the excised centers, well inside the region and disjoint from each other.
    std::vector<Rect> holes;
    std::vector<double> half_widths;
    for (std::size_t i = 0; i < excised.size(); ++i) {
        const Vec2 p = excised[i];
        if (!point_in_polygon(poly, p)) {
            throw Error(ErrorKind::Domain, "excised center lies outside the region");
        }
        double s = 0.5 * distance_to(region, p) / std::numbers::sqrt2;
        for (std::size_t j = 0; j < excised.size(); ++j) {
            if (j != i) {
                s = std::min(s, 0.35 * norm(excised[j] - p));
            }
        }
        if (!(s > 2.0 * cfg.epsilon_schedule.front())) {
            throw Error(ErrorKind::Domain, "excised center is too close to the region boundary or another center");
        }
        holes.push_back({p.x - s, p.y - s, p.x + s, p.y + s});
        half_widths.push_back(s);
    }

    // Membership screen on a coarse grid before the adaptive pass.
    constexpr int kScreen = 48;
    for (int i = 0; i < kScreen; ++i) {
        for (int j = 0; j < kScreen; ++j) {
            const Vec2 q{root.x0 + (i + 0.5) * side / kScreen, root.y0 + (j + 0.5) * side / kScreen};
            if (!point_in_polygon(poly, q)) {
                continue;
            }
            bool near_center = false;
            for (const Vec2 p : excised) {
                near_center = near_center || norm(q - p) < 1e-9;
            }
            if (!near_center && !std::isfinite(integrand(q))) {
                throw Error(ErrorKind::RegionExitsHillRegion, "region leaves the Hill region near (" +
                                                                  std::to_string(q.x) + ", " + std::to_string(q.y) + ")");
            }
        }
    }

    CellQuadrature cells(integrand, holes, cfg.cell_tolerance, cfg.max_depth, root.area());
    cells.run(root, poly);

    RegionIntegral out;
    out.cells = cells.cells();
    out.cell_error = cells.error();
    if (excised.empty()) {
        out.value = cells.value();
        out.error_estimate = out.cell_error;
        return out;
    }

    out.epsilons = cfg.epsilon_schedule;
    for (const double eps : cfg.epsilon_schedule) {
        double v = cells.value();
        for (std::size_t i = 0; i < excised.size(); ++i) {
            const double inner = polar_square_minus_disk(integrand, excised[i], half_widths[i], eps);
            if (!std::isfinite(inner)) {
                throw Error(ErrorKind::RegionExitsHillRegion, "integrand undefined near an excised center");
            }
            v += inner;
        }
        out.excised_values.push_back(v);
    }
    const auto [value, err] = extrapolate_to_zero(out.epsilons, out.excised_values);
    out.value = value;
    out.extrapolation_error = err;
    out.error_estimate = out.cell_error + err;
    if (err > 10.0 * cfg.cell_tolerance * std::max(1.0, std::abs(value))) {
        throw Error(ErrorKind::ExtrapolationUnstable,
                    "excision sequence did not settle (extrapolation error " + std::to_string(err) + ")");
    }
    return out;
}

} // namespace pcr3bp
