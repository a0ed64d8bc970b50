#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcr3bp/curvegeom.hpp"
#include "pcr3bp/dynamics.hpp"
#include "pcr3bp/periodicity.hpp"
#include "pcr3bp/quadrature.hpp"

namespace pcr3bp {

/// Unwrapped direction angle of the velocity along one period.
struct ThetaProfile {
    std::vector<double> t;
    std::vector<double> theta;
    double total_change{0.0};
    /// RMS of (numerical dtheta/dt) - (-2 + f_y2 cos theta - f_y1 sin theta).
    double rms_residual{0.0};
    /// max |(v1, v2) - f (cos theta, sin theta)|.
    double max_reconstruction_error{0.0};
};

/// Throws IrregularOrbit when the speed drops below 1e-9.
ThetaProfile reconstruct_theta(const ClosedOrbit &orbit, std::size_t samples = 0);

struct BoundaryIntegral {
    /// Flux of grad ln f through the curve from the angle identity: total_change + 2T (clockwise)
    /// or -total_change - 2T (counterclockwise).
    double theta_form{0.0};
    /// The same flux by direct quadrature of grad ln f . n along the curve.
    double direct_form{0.0};
    Orientation orientation{Orientation::Clockwise};
    ThetaProfile theta;
};

BoundaryIntegral boundary_integral(const ClosedOrbit &orbit, std::size_t samples = 0);

/// Integral of the Laplacian of ln f over the region bounded by a closed polyline.
RegionIntegral area_integral(const ClosedPolyline &region, const MassParameter &mu, double jacobi,
                             std::span<const Vec2> excised, const QuadratureConfig &cfg = {});

/// Integral over the region bounded by a lifted curve of Delta(ln f o phi) = (Delta ln f o phi) |phi'|^2
/// where phi(z) = center + (z - center)^n.
RegionIntegral lifted_area_integral(const LiftedCurve &lifted, const MassParameter &mu, double jacobi,
                                    std::span<const Vec2> excised, const QuadratureConfig &cfg = {});

struct CircleAverageRow {
    double epsilon;
    double circle_average;
};

/// Averages eps * grad ln f . n with n = -(cos s, sin s) over the circle of radius eps about a primary.
std::vector<CircleAverageRow> circle_average_check(const MassParameter &mu, double jacobi, Vec2 primary,
                                            std::span<const double> epsilons);

enum class EnclosureKind { Simple, LiftedAboutPrimary, LiftedAboutPoint };

struct TheoremCase {
    int covering_index{1};
    int encloses_primary1{0}; ///< multiplicity with which the region's singular set contains (-mu, 0)
    int encloses_primary2{0}; ///< same for (1 - mu, 0)
    Orientation orientation{Orientation::Clockwise};
    int k{2};
    int sign{1};
    EnclosureKind kind{EnclosureKind::Simple};
    Vec2 center{};
    std::string theorem;

    /// Number of pi corrections from the singular points inside the integration region.
    int singular_multiplicity() const { return encloses_primary1 + encloses_primary2; }
};

/// Orbit polyline sampled from the dense output.
ClosedPolyline orbit_polyline(const ClosedOrbit &orbit, std::size_t samples = 0);

/// Picks the applicable identity: simple curves by the primaries they enclose, otherwise an
/// n-simple structure about a primary or about one of extra_centers. Throws Unclassifiable.
TheoremCase classify_case(const ClosedOrbit &orbit, std::span<const Vec2> extra_centers = {});
TheoremCase classify_polyline(const ClosedPolyline &curve, const MassParameter &mu,
                              std::span<const Vec2> extra_centers = {});

enum class QuadratureStatus { Ok, RegionExitsHillRegion, ExtrapolationUnstable, Failed };

const char *to_string(QuadratureStatus s);

struct VerificationReport {
    double period{0.0};
    double two_T{0.0};
    double jacobi{0.0};
    double closure_residual{0.0};
    double boundary_integral{0.0};
    double boundary_integral_direct{0.0};
    double area_integral{0.0};
    double area_error_estimate{0.0};
    double k_pi_term{0.0};
    /// |2T - sign (k pi + area)|
    double residual_identity{0.0};
    /// |boundary + m pi - area|, m the singular multiplicity
    double residual_stokes{0.0};
    double singular_correction{0.0};
    double theta_total_change{0.0};
    double theta_rms_residual{0.0};
    TheoremCase theorem_case;
    std::optional<LiftedCurve> lifted;
    QuadratureStatus quadrature_status{QuadratureStatus::Ok};
    std::string quadrature_message;
    std::size_t cells{0};
    std::vector<double> epsilons;
    std::vector<double> excised_values;
    double extrapolation_error{0.0};
};

/// Full check of 2T = sign (k pi + area). Quadrature failures leave a boundary-only report
/// with quadrature_status set.
VerificationReport verify(const ClosedOrbit &orbit, const QuadratureConfig &cfg = {},
                          std::span<const Vec2> extra_centers = {});

struct DiskCheck {
    double radius;
    double min_delta_ln_f;  ///< NaN when the disk is not inside the open Hill region
    double max_hill_margin; ///< max of 2 omega - C over the disk
};

enum class L4Verdict { NoOrbitOutsideHillRegion, ClockwiseOnly, Inconclusive };

const char *to_string(L4Verdict v);

struct L4Report {
    TriangularPoint which{TriangularPoint::L4};
    Vec2 position{};
    double mu{0.0};
    double jacobi{0.0};
    double c0{0.0};
    L4Verdict verdict{L4Verdict::Inconclusive};
    /// Delta ln f at the point (only when C < C0).
    double delta_ln_f_center{NAN};
    /// Largest listed radius whose disk has strictly positive Delta ln f (C < C0), or lies
    /// entirely outside the Hill region (C > C0); 0 when none.
    double radius{0.0};
    std::vector<DiskCheck> disks;
};

/// Disk analysis around L4 or L5. Throws CriticalValue when |C - C0| < 1e-12.
L4Report l4_direction_analysis(const MassParameter &mu, double jacobi, std::span<const double> radii,
                               TriangularPoint which = TriangularPoint::L4);

std::vector<double> default_l4_radii();

} // namespace pcr3bp
