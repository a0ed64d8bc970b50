#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "pcr3bp/curvegeom.hpp"
#include "pcr3bp/types.hpp"

namespace pcr3bp {

struct QuadratureConfig {
    /// Excision radii about each excised center, strictly decreasing, smallest >= 1e-5.
    std::vector<double> epsilon_schedule{3e-5, 2.5e-5, 2e-5, 1.5e-5, 1e-5};
    /// Absolute tolerance of the adaptive cell quadrature, shared out among cells by area.
    double cell_tolerance{1e-6};
    int max_depth{14};

    void validate() const;
};

/// Integrand over a planar region. Returns NaN where it is undefined.
using RegionIntegrand = std::function<double(Vec2)>;

struct RegionIntegral {
    double value{0.0};
    double error_estimate{0.0};
    std::size_t cells{0};
    std::vector<double> epsilons;
    std::vector<double> excised_values; ///< integral over the region minus the epsilon disks, per epsilon
    double cell_error{0.0};
    double extrapolation_error{0.0};
};

/// Integrates over the interior of a simple closed polyline with an epsilon-disk excised around
/// each listed center and extrapolates epsilon -> 0.
///
/// Away from the excised centers an adaptive quadtree is used: cells fully inside the region get
/// a tensor Gauss-Legendre rule, cells cut by the boundary integrate the clipped polygon exactly
/// with collapsed Gauss rules on a triangle fan. A small square around each center is integrated
/// in polar coordinates from epsilon outwards. Throws RegionExitsHillRegion when the integrand is
/// undefined inside the region and ExtrapolationUnstable when the epsilon sequence does not settle.
RegionIntegral integrate_region(const ClosedPolyline &region, const RegionIntegrand &integrand,
                                std::span<const Vec2> excised, const QuadratureConfig &cfg = {});

/// Even-odd point membership test.
bool point_in_polygon(std::span<const Vec2> polygon, Vec2 p);

/// Polynomial extrapolation to zero through (eps_i, value_i); returns {value, error estimate}.
std::pair<double, double> extrapolate_to_zero(std::span<const double> eps, std::span<const double> values);

} // namespace pcr3bp
