#include "pcr3bp/periodarea.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "pcr3bp/error.hpp"

namespace pcr3bp {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t default_samples(const ClosedOrbit &orbit, std::size_t requested)
{
    if (requested > 0) {
        return requested;
    }
    return std::max<std::size_t>(4096, 16 * orbit.trajectory.step_count());
}

double wrap_increment(double from, double to)
{
    return std::remainder(to - from, 2.0 * kPi);
}

double delta_ln_f_or_nan(Vec2 p, const MassParameter &mu, double jacobi)
{
    try {
        const auto s = try_field_sample(p, mu, jacobi);
        return s.has_derivatives ? s.delta_ln_f : NAN;
    } catch (const Error &) {
        return NAN;
    }
}

std::string identity_text(int k, Orientation o)
{
    const bool cw = o == Orientation::Clockwise;
    std::ostringstream os;
    os << "2T = ";
    if (k == 0) {
        os << (cw ? "∬" : "−∬");
        return os.str();
    }
    os << (cw ? "" : "−");
    if (k != 1) {
        os << k;
    }
    os << "π " << (cw ? "+" : "−") << " ∬";
    return os.str();
}

/// Preimages of q under z -> center + (z - center)^n.
std::vector<Vec2> preimages(Vec2 q, Vec2 center, int n)
{
    const std::complex<double> w{q.x - center.x, q.y - center.y};
    const double r = std::pow(std::abs(w), 1.0 / n);
    const double a = std::arg(w);
    std::vector<Vec2> out;
    for (int j = 0; j < n; ++j) {
        const double ang = (a + 2.0 * kPi * j) / n;
        out.push_back({center.x + r * std::cos(ang), center.y + r * std::sin(ang)});
    }
    return out;
}

int count_inside(const ClosedPolyline &c, const std::vector<Vec2> &points)
{
    int count = 0;
    for (const Vec2 p : points) {
        count += point_in_polygon(c.vertices(), p) ? 1 : 0;
    }
    return count;
}

} // namespace

ThetaProfile reconstruct_theta(const ClosedOrbit &orbit, std::size_t samples)
{
    const std::size_t n = default_samples(orbit, samples);
    const auto states = orbit.trajectory.resample(n);
    const RotatingState end = orbit.trajectory.samples().back();
    const double h = orbit.period / static_cast<double>(n);

    ThetaProfile out;
    out.t.reserve(n);
    out.theta.reserve(n);
    double prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto &s = states[i];
        if (std::hypot(s.v1, s.v2) < kRegularityThreshold) {
            throw Error(ErrorKind::IrregularOrbit, "speed vanishes along the orbit");
        }
        const double raw = std::atan2(s.v2, s.v1);
        const double th = i == 0 ? raw : prev + wrap_increment(prev, raw);
        out.t.push_back(s.t);
        out.theta.push_back(th);
        prev = th;
    }
    out.total_change = prev + wrap_increment(prev, std::atan2(end.v2, end.v1)) - out.theta.front();

    double sq = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto &s = states[i];
        const auto field = try_field_sample(s.position(), orbit.mu, orbit.jacobi);
        const double th = out.theta[i];
        if (field.has_derivatives) {
            const double err = std::hypot(s.v1 - field.f * std::cos(th), s.v2 - field.f * std::sin(th));
            out.max_reconstruction_error = std::max(out.max_reconstruction_error, err);
        } else {
            out.max_reconstruction_error = std::max(out.max_reconstruction_error, std::hypot(s.v1, s.v2));
        }
        if (i < 2 || i + 2 >= n || !field.has_derivatives) {
            continue;
        }
        const double rate = (-out.theta[i + 2] + 8.0 * out.theta[i + 1] - 8.0 * out.theta[i - 1] + out.theta[i - 2]) /
                            (12.0 * h);
        const Vec2 grad_f = field.grad_ln_f * field.f;
        const double rhs = -2.0 + grad_f.y * std::cos(th) - grad_f.x * std::sin(th);
        sq += (rate - rhs) * (rate - rhs);
        ++count;
    }
    out.rms_residual = count > 0 ? std::sqrt(sq / static_cast<double>(count)) : 0.0;
    return out;
}

BoundaryIntegral boundary_integral(const ClosedOrbit &orbit, std::size_t samples)
{
    BoundaryIntegral out;
    out.theta = reconstruct_theta(orbit, samples);
    out.orientation = out.theta.total_change < 0.0 ? Orientation::Clockwise : Orientation::Counterclockwise;
    const bool cw = out.orientation == Orientation::Clockwise;
    const double two_t = 2.0 * orbit.period;
    out.theta_form = cw ? out.theta.total_change + two_t : -out.theta.total_change - two_t;

    // Outward normal times speed is (-v2, v1) for clockwise curves; periodic trapezoid rule.
    const std::size_t n = out.theta.t.size();
    const auto states = orbit.trajectory.resample(n);
    double acc = 0.0;
    for (const auto &s : states) {
        const auto field = field_sample(s.position(), orbit.mu, orbit.jacobi);
        const Vec2 normal_speed = cw ? Vec2{-s.v2, s.v1} : Vec2{s.v2, -s.v1};
        acc += dot(field.grad_ln_f, normal_speed);
    }
    out.direct_form = acc * orbit.period / static_cast<double>(n);
    return out;
}

RegionIntegral area_integral(const ClosedPolyline &region, const MassParameter &mu, double jacobi,
                             std::span<const Vec2> excised, const QuadratureConfig &cfg)
{
    const RegionIntegrand f = [&](Vec2 p) { return delta_ln_f_or_nan(p, mu, jacobi); };
    return integrate_region(region, f, excised, cfg);
}

RegionIntegral lifted_area_integral(const LiftedCurve &lifted, const MassParameter &mu, double jacobi,
                                    std::span<const Vec2> excised, const QuadratureConfig &cfg)
{
    const Vec2 c = lifted.center;
    const int n = lifted.n;
    // Conformal change of variables: Delta(h o phi) = (Delta h o phi) |phi'|^2, |phi'| = n |z - c|^(n-1).
    const RegionIntegrand f = [&, c, n](Vec2 z) {
        const double rho2 = dot(z - c, z - c);
        const double jac2 = static_cast<double>(n * n) * std::pow(rho2, n - 1);
        return delta_ln_f_or_nan(push_forward(z, c, n), mu, jacobi) * jac2;
    };
    return integrate_region(lifted.beta, f, excised, cfg);
}

std::vector<CircleAverageRow> circle_average_check(const MassParameter &mu, double jacobi, Vec2 primary,
                                            std::span<const double> epsilons)
{
    constexpr int kNodes = 512;
    std::vector<CircleAverageRow> rows;
    for (const double eps : epsilons) {
        if (!(eps > 0.0)) {
            throw Error(ErrorKind::Domain, "circle radius must be positive");
        }
        double acc = 0.0;
        for (int i = 0; i < kNodes; ++i) {
            const double s = 2.0 * kPi * i / kNodes;
            const Vec2 dir{std::cos(s), std::sin(s)};
            const auto field = try_field_sample(primary + dir * eps, mu, jacobi);
            acc += field.has_derivatives ? eps * dot(field.grad_ln_f, -dir) : NAN;
        }
        rows.push_back({eps, acc / kNodes});
    }
    return rows;
}

ClosedPolyline orbit_polyline(const ClosedOrbit &orbit, std::size_t samples)
{
    const std::size_t n = samples > 0 ? samples : std::max<std::size_t>(8192, 16 * orbit.trajectory.step_count());
    std::vector<Vec2> v;
    std::vector<double> t;
    v.reserve(n);
    t.reserve(n);
    for (const auto &s : orbit.trajectory.resample(n)) {
        v.push_back(s.position());
        t.push_back(s.t);
    }
    return ClosedPolyline(std::move(v), std::move(t));
}

TheoremCase classify_polyline(const ClosedPolyline &curve, const MassParameter &mu, std::span<const Vec2> extra_centers)
{
    const Vec2 p1 = mu.primary1(), p2 = mu.primary2();
    if (is_simple(curve)) {
        const WindingProfile w = winding_profile(curve, mu);
        if (std::abs(w.w_primary1) > 1 || std::abs(w.w_primary2) > 1) {
            throw Error(ErrorKind::Unclassifiable, "simple curve with winding number beyond +-1");
        }
        TheoremCase tc;
        tc.covering_index = 1;
        tc.encloses_primary1 = std::abs(w.w_primary1);
        tc.encloses_primary2 = std::abs(w.w_primary2);
        tc.orientation = w.orientation;
        tc.kind = EnclosureKind::Simple;
        tc.k = 2 * tc.covering_index - tc.singular_multiplicity();
        tc.sign = tc.orientation == Orientation::Clockwise ? 1 : -1;
        static constexpr int kSimpleTable[3] = {2, 1, 0};
        if (tc.k != kSimpleTable[tc.singular_multiplicity()]) {
            throw Error(ErrorKind::Unclassifiable, "inconsistent enclosure data");
        }
        tc.theorem = identity_text(tc.k, tc.orientation);
        return tc;
    }

    struct Candidate {
        Vec2 center;
        bool primary;
        bool first;
    };
    std::vector<Candidate> candidates{{p1, true, true}, {p2, true, false}};
    for (const Vec2 c : extra_centers) {
        candidates.push_back({c, false, false});
    }
    for (const auto &cand : candidates) {
        int w = 0;
        try {
            w = winding_number(curve, cand.center);
        } catch (const Error &) {
            continue;
        }
        const int n = std::abs(w);
        if (n < 1 || (cand.primary && n < 2)) {
            continue;
        }
        std::optional<LiftedCurve> lifted;
        try {
            lifted = lift(curve, cand.center, n);
        } catch (const Error &) {
            continue;
        }
        // The lifted region may only contain the center among the singular points.
        int other_inside = 0;
        if (cand.primary) {
            other_inside = count_inside(lifted->beta, preimages(cand.first ? p2 : p1, cand.center, n));
        } else {
            other_inside = count_inside(lifted->beta, preimages(p1, cand.center, n)) +
                           count_inside(lifted->beta, preimages(p2, cand.center, n));
        }
        if (other_inside != 0) {
            continue;
        }
        TheoremCase tc;
        tc.covering_index = n;
        tc.center = cand.center;
        tc.orientation = orientation(lifted->beta);
        tc.sign = tc.orientation == Orientation::Clockwise ? 1 : -1;
        if (cand.primary) {
            tc.kind = EnclosureKind::LiftedAboutPrimary;
            (cand.first ? tc.encloses_primary1 : tc.encloses_primary2) = n;
        } else {
            tc.kind = EnclosureKind::LiftedAboutPoint;
        }
        tc.k = 2 * n - tc.singular_multiplicity();
        const int expected = cand.primary ? n : 2 * n;
        if (tc.k != expected) {
            throw Error(ErrorKind::Unclassifiable, "inconsistent lifted enclosure data");
        }
        tc.theorem = identity_text(tc.k, tc.orientation);
        return tc;
    }
    throw Error(ErrorKind::Unclassifiable, "curve is neither simple nor n-simple about a candidate center");
}

TheoremCase classify_case(const ClosedOrbit &orbit, std::span<const Vec2> extra_centers)
{
    return classify_polyline(orbit_polyline(orbit), orbit.mu, extra_centers);
}

const char *to_string(QuadratureStatus s)
{
    switch (s) {
    case QuadratureStatus::Ok: return "ok";
    case QuadratureStatus::RegionExitsHillRegion: return "region-exits-hill-region";
    case QuadratureStatus::ExtrapolationUnstable: return "extrapolation-unstable";
    case QuadratureStatus::Failed: return "failed";
    }
    return "failed";
}

VerificationReport verify(const ClosedOrbit &orbit, const QuadratureConfig &cfg, std::span<const Vec2> extra_centers)
{
    VerificationReport rep;
    rep.period = orbit.period;
    rep.two_T = 2.0 * orbit.period;
    rep.jacobi = orbit.jacobi;
    rep.closure_residual = orbit.closure_residual;

    const ClosedPolyline curve = orbit_polyline(orbit);
    rep.theorem_case = classify_polyline(curve, orbit.mu, extra_centers);
    const TheoremCase &tc = rep.theorem_case;

    const BoundaryIntegral b = boundary_integral(orbit);
    rep.boundary_integral = b.theta_form;
    rep.boundary_integral_direct = b.direct_form;
    rep.theta_total_change = b.theta.total_change;
    rep.theta_rms_residual = b.theta.rms_residual;
    rep.k_pi_term = tc.k * kPi;
    rep.singular_correction = tc.singular_multiplicity() * kPi;

    try {
        RegionIntegral area;
        if (tc.kind == EnclosureKind::Simple) {
            std::vector<Vec2> excised;
            if (tc.encloses_primary1 > 0) {
                excised.push_back(orbit.mu.primary1());
            }
            if (tc.encloses_primary2 > 0) {
                excised.push_back(orbit.mu.primary2());
            }
            area = area_integral(curve, orbit.mu, orbit.jacobi, excised, cfg);
        } else {
            rep.lifted = lift(curve, tc.center, tc.covering_index);
            std::vector<Vec2> excised;
            if (tc.kind == EnclosureKind::LiftedAboutPrimary) {
                excised.push_back(tc.center);
            }
            area = lifted_area_integral(*rep.lifted, orbit.mu, orbit.jacobi, excised, cfg);
        }
        rep.area_integral = area.value;
        rep.area_error_estimate = area.error_estimate;
        rep.cells = area.cells;
        rep.epsilons = area.epsilons;
        rep.excised_values = area.excised_values;
        rep.extrapolation_error = area.extrapolation_error;
    } catch (const Error &e) {
        switch (e.kind()) {
        case ErrorKind::RegionExitsHillRegion: rep.quadrature_status = QuadratureStatus::RegionExitsHillRegion; break;
        case ErrorKind::ExtrapolationUnstable: rep.quadrature_status = QuadratureStatus::ExtrapolationUnstable; break;
        default: rep.quadrature_status = QuadratureStatus::Failed; break;
        }
        rep.quadrature_message = e.what();
        rep.area_integral = NAN;
        rep.area_error_estimate = NAN;
    }

    rep.residual_identity = std::abs(rep.two_T - tc.sign * (rep.k_pi_term + rep.area_integral));
    rep.residual_stokes = std::abs(rep.boundary_integral + rep.singular_correction - rep.area_integral);
    return rep;
}

const char *to_string(L4Verdict v)
{
    switch (v) {
    case L4Verdict::NoOrbitOutsideHillRegion: return "no orbit: neighborhood outside the Hill region";
    case L4Verdict::ClockwiseOnly: return "clockwise only";
    case L4Verdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

std::vector<double> default_l4_radii()
{
    return {1e-4, 2e-4, 5e-4, 1e-3, 2e-3, 5e-3, 1e-2, 2e-2, 5e-2, 0.1, 0.2};
}

L4Report l4_direction_analysis(const MassParameter &mu, double jacobi, std::span<const double> radii,
                               TriangularPoint which)
{
    const auto l4 = lagrange_triangular(mu, TriangularPoint::L4);
    if (std::abs(jacobi - l4.c0) < 1e-12) {
        throw Error(ErrorKind::CriticalValue, "Jacobi constant equals the critical value 3 - mu + mu^2");
    }
    const bool mirror = which == TriangularPoint::L5;
    L4Report rep;
    rep.which = which;
    rep.position = mirror ? Vec2{l4.position.x, -l4.position.y} : l4.position;
    rep.mu = mu.value();
    rep.jacobi = jacobi;
    rep.c0 = l4.c0;

    std::vector<double> sorted(radii.begin(), radii.end());
    std::sort(sorted.begin(), sorted.end());
    const bool below = jacobi < l4.c0;
    if (below) {
        rep.delta_ln_f_center = field_sample(rep.position, mu, jacobi).delta_ln_f;
    }

    constexpr int kRings = 24;
    constexpr int kAngles = 64;
    bool chain_holds = true;
    for (const double r : sorted) {
        if (!(r > 0.0)) {
            throw Error(ErrorKind::Domain, "disk radii must be positive");
        }
        double min_delta = INFINITY;
        double max_margin = -INFINITY;
        bool inside = true;
        for (int j = 0; j <= kRings; ++j) {
            const double rho = r * j / kRings;
            const int angles = j == 0 ? 1 : kAngles;
            for (int a = 0; a < angles; ++a) {
                const double ang = 2.0 * kPi * a / kAngles;
                // Points are generated about L4 and mirrored so that L5 sees the reflected grid exactly.
                Vec2 p{l4.position.x + rho * std::cos(ang), l4.position.y + rho * std::sin(ang)};
                if (mirror) {
                    p.y = -p.y;
                }
                FieldSample s;
                try {
                    s = try_field_sample(p, mu, jacobi);
                } catch (const Error &) {
                    inside = false;
                    continue;
                }
                max_margin = std::max(max_margin, 2.0 * s.omega - jacobi);
                if (!s.has_derivatives) {
                    inside = false;
                    continue;
                }
                min_delta = std::min(min_delta, s.delta_ln_f);
            }
        }
        rep.disks.push_back({r, inside ? min_delta : NAN, max_margin});
        if (below) {
            chain_holds = chain_holds && inside && min_delta > 0.0;
        } else {
            chain_holds = chain_holds && max_margin < 0.0;
        }
        if (chain_holds) {
            rep.radius = r;
        }
    }
    if (below) {
        rep.verdict = rep.radius > 0.0 ? L4Verdict::ClockwiseOnly : L4Verdict::Inconclusive;
    } else {
        rep.verdict = rep.radius > 0.0 ? L4Verdict::NoOrbitOutsideHillRegion : L4Verdict::Inconclusive;
    }
    return rep;
}

} // namespace pcr3bp
