#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pcr3bp/periodarea.hpp"
#include "pcr3bp/periodicity.hpp"

namespace pcr3bp {

inline constexpr const char *kOrbitSchemaVersion = "1";

struct OrbitDocument {
    std::string schema_version{kOrbitSchemaVersion};
    double mu{0.0};
    double jacobi{0.0};
    double period{0.0};
    double closure_residual{0.0};
    std::vector<std::array<double, 5>> samples; ///< t, y1, y2, v1, v2
    std::string provenance;

    RotatingState initial() const;
};

/// Samples one period of the orbit at n uniform times, the initial state first.
OrbitDocument orbit_document(const ClosedOrbit &orbit, std::string provenance, std::size_t n = 1024);

/// Numbers are written with 17 significant digits; key order is fixed.
std::string orbit_json(const OrbitDocument &doc);

/// Throws Schema on malformed input, unsorted samples or Jacobi mismatch above 1e-6.
OrbitDocument parse_orbit_json(const std::string &text);

std::string report_json(const VerificationReport &rep, double mu);
std::string l4_json(const std::vector<L4Report> &reports);

/// Header t,y1,y2,v1,v2.
std::string trajectory_csv(const std::vector<RotatingState> &states);
/// One row per excision radius: epsilon, integral over the excised region.
std::string quadrature_csv(const VerificationReport &rep);

struct SvgPanel {
    std::string title;
    std::vector<Vec2> curve;
    bool closed{true};
    std::vector<std::pair<Vec2, std::string>> markers;
    /// Shades 2 omega - C < 0 when set.
    std::optional<std::pair<MassParameter, double>> hill;
};

/// Panels side by side, each with its own equal-aspect viewport.
std::string render_svg(const std::vector<SvgPanel> &panels);

/// Orbit panel with primaries, triangular points inside the view, and Hill shading.
SvgPanel orbit_panel(const std::vector<Vec2> &curve, const MassParameter &mu, double jacobi, std::string title,
                     bool closed = true);

void write_text_file(const std::string &path, const std::string &text);
std::string read_text_file(const std::string &path);

} // namespace pcr3bp
