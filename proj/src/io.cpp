#include "pcr3bp/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pcr3bp/dynamics.hpp"
#include "pcr3bp/error.hpp"

namespace pcr3bp {

namespace {

using Json = nlohmann::ordered_json;

std::string format17(double x)
{
    if (!std::isfinite(x)) {
        return "null";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format6(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

void emit(const Json &j, std::ostringstream &os, int depth)
{
    const std::string pad(2 * (depth + 1), ' ');
    const std::string close(2 * depth, ' ');
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << "{\n";
        bool first = true;
        for (const auto &[k, v] : j.items()) {
            os << (first ? "" : ",\n") << pad << Json(k).dump() << ": ";
            emit(v, os, depth + 1);
            first = false;
        }
        os << "\n" << close << "}";
        return;
    }
    case Json::value_t::array: {
        // Arrays of scalars stay on one line.
        const bool flat = std::all_of(j.begin(), j.end(), [](const Json &e) { return e.is_primitive(); });
        if (j.empty()) {
            os << "[]";
            return;
        }
        if (flat) {
            os << "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                os << (i ? ", " : "");
                emit(j[i], os, depth + 1);
            }
            os << "]";
            return;
        }
        os << "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            os << (i ? ",\n" : "") << pad;
            emit(j[i], os, depth + 1);
        }
        os << "\n" << close << "]";
        return;
    }
    case Json::value_t::number_float: os << format17(j.get<double>()); return;
    default: os << j.dump(); return;
    }
}

std::string dump17(const Json &j)
{
    std::ostringstream os;
    emit(j, os, 0);
    os << "\n";
    return os.str();
}

Json vec_json(Vec2 v)
{
    return Json::array({v.x, v.y});
}

Json numbers(const std::vector<double> &xs)
{
    Json a = Json::array();
    for (const double x : xs) {
        a.push_back(x);
    }
    return a;
}

const char *kind_name(EnclosureKind k)
{
    switch (k) {
    case EnclosureKind::Simple: return "simple";
    case EnclosureKind::LiftedAboutPrimary: return "n-simple about a primary";
    case EnclosureKind::LiftedAboutPoint: return "n-simple about a point";
    }
    return "simple";
}

double required_number(const Json &j, const char *key)
{
    if (!j.contains(key) || !j[key].is_number()) {
        throw Error(ErrorKind::Schema, std::string("orbit document: missing numeric field '") + key + "'");
    }
    const double x = j[key].get<double>();
    if (!std::isfinite(x)) {
        throw Error(ErrorKind::Schema, std::string("orbit document: non-finite field '") + key + "'");
    }
    return x;
}

} // namespace

RotatingState OrbitDocument::initial() const
{
    if (samples.empty()) {
        throw Error(ErrorKind::Schema, "orbit document has no samples");
    }
    const auto &s = samples.front();
    return {s[1], s[2], s[3], s[4], s[0]};
}

OrbitDocument orbit_document(const ClosedOrbit &orbit, std::string provenance, std::size_t n)
{
    OrbitDocument doc;
    doc.mu = orbit.mu.value();
    doc.jacobi = orbit.jacobi;
    doc.period = orbit.period;
    doc.closure_residual = orbit.closure_residual;
    doc.provenance = std::move(provenance);
    for (const auto &s : orbit.trajectory.resample(std::max<std::size_t>(n, 1))) {
        doc.samples.push_back({s.t, s.y1, s.y2, s.v1, s.v2});
    }
    return doc;
}

std::string orbit_json(const OrbitDocument &doc)
{
    Json j;
    j["schema_version"] = doc.schema_version;
    j["mu"] = doc.mu;
    j["jacobi"] = doc.jacobi;
    j["period"] = doc.period;
    j["closure_residual"] = doc.closure_residual;
    Json samples = Json::array();
    for (const auto &s : doc.samples) {
        samples.push_back(Json::array({s[0], s[1], s[2], s[3], s[4]}));
    }
    j["samples"] = std::move(samples);
    j["provenance"] = doc.provenance;
    return dump17(j);
}

OrbitDocument parse_orbit_json(const std::string &text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorKind::Schema, std::string("orbit document is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw Error(ErrorKind::Schema, "orbit document must be a JSON object");
    }
    if (!j.contains("schema_version") || !j["schema_version"].is_string() ||
        j["schema_version"].get<std::string>() != kOrbitSchemaVersion) {
        throw Error(ErrorKind::Schema, "orbit document: schema_version must be \"1\"");
    }
    OrbitDocument doc;
    doc.mu = required_number(j, "mu");
    doc.jacobi = required_number(j, "jacobi");
    doc.period = required_number(j, "period");
    doc.closure_residual = required_number(j, "closure_residual");
    if (j.contains("provenance")) {
        if (!j["provenance"].is_string()) {
            throw Error(ErrorKind::Schema, "orbit document: provenance must be a string");
        }
        doc.provenance = j["provenance"].get<std::string>();
    }
    if (!j.contains("samples") || !j["samples"].is_array() || j["samples"].empty()) {
        throw Error(ErrorKind::Schema, "orbit document: samples must be a non-empty array");
    }
    MassParameter mu = [&] {
        try {
            return MassParameter(doc.mu);
        } catch (const Error &e) {
            throw Error(ErrorKind::Schema, std::string("orbit document: ") + e.what());
        }
    }();
    double previous = -INFINITY;
    for (const auto &row : j["samples"]) {
        if (!row.is_array() || row.size() != 5) {
            throw Error(ErrorKind::Schema, "orbit document: each sample must be [t, y1, y2, v1, v2]");
        }
        std::array<double, 5> s{};
        for (std::size_t i = 0; i < 5; ++i) {
            if (!row[i].is_number() || !std::isfinite(row[i].get<double>())) {
                throw Error(ErrorKind::Schema, "orbit document: sample entries must be finite numbers");
            }
            s[i] = row[i].get<double>();
        }
        if (!(s[0] > previous)) {
            throw Error(ErrorKind::Schema, "orbit document: samples are not time-ordered");
        }
        previous = s[0];
        const RotatingState st{s[1], s[2], s[3], s[4], s[0]};
        if (std::abs(jacobi_constant(st, mu) - doc.jacobi) > 1e-6) {
            throw Error(ErrorKind::Schema, "orbit document: sample Jacobi constant differs from 'jacobi' by more than 1e-6");
        }
        doc.samples.push_back(s);
    }
    return doc;
}

std::string report_json(const VerificationReport &rep, double mu)
{
    const TheoremCase &tc = rep.theorem_case;
    Json j;
    j["mu"] = mu;
    j["jacobi"] = rep.jacobi;
    j["period"] = rep.period;
    j["two_T"] = rep.two_T;
    j["closure_residual"] = rep.closure_residual;
    Json c;
    c["kind"] = kind_name(tc.kind);
    c["orientation"] = to_string(tc.orientation);
    c["covering_index"] = tc.covering_index;
    c["encloses_primary1"] = tc.encloses_primary1;
    c["encloses_primary2"] = tc.encloses_primary2;
    c["k"] = tc.k;
    c["sign"] = tc.sign;
    c["center"] = vec_json(tc.center);
    c["theorem"] = tc.theorem;
    j["case"] = std::move(c);
    j["boundary_integral"] = rep.boundary_integral;
    j["boundary_integral_direct"] = rep.boundary_integral_direct;
    j["area_integral"] = rep.area_integral;
    j["area_error_estimate"] = rep.area_error_estimate;
    j["k_pi_term"] = rep.k_pi_term;
    j["singular_correction"] = rep.singular_correction;
    j["residual_identity"] = rep.residual_identity;
    j["residual_stokes"] = rep.residual_stokes;
    j["theta_total_change"] = rep.theta_total_change;
    j["theta_rms_residual"] = rep.theta_rms_residual;
    if (rep.lifted) {
        Json l;
        l["center"] = vec_json(rep.lifted->center);
        l["n"] = rep.lifted->n;
        l["gamma_total"] = rep.lifted->gamma_total;
        l["roundtrip_error"] = rep.lifted->roundtrip_error;
        l["vertices"] = rep.lifted->beta.size();
        j["lifted"] = std::move(l);
    }
    Json q;
    q["status"] = to_string(rep.quadrature_status);
    q["message"] = rep.quadrature_message;
    q["cells"] = rep.cells;
    q["epsilons"] = numbers(rep.epsilons);
    q["excised_values"] = numbers(rep.excised_values);
    q["extrapolation_error"] = rep.extrapolation_error;
    j["quadrature"] = std::move(q);
    return dump17(j);
}

std::string l4_json(const std::vector<L4Report> &reports)
{
    Json arr = Json::array();
    for (const auto &r : reports) {
        Json j;
        j["point"] = r.which == TriangularPoint::L4 ? "L4" : "L5";
        j["position"] = vec_json(r.position);
        j["mu"] = r.mu;
        j["jacobi"] = r.jacobi;
        j["c0"] = r.c0;
        j["verdict"] = to_string(r.verdict);
        j["delta_ln_f_center"] = r.delta_ln_f_center;
        j["radius"] = r.radius;
        Json disks = Json::array();
        for (const auto &d : r.disks) {
            disks.push_back(Json::array({d.radius, d.min_delta_ln_f, d.max_hill_margin}));
        }
        j["disks"] = std::move(disks);
        arr.push_back(std::move(j));
    }
    return dump17(arr);
}

std::string trajectory_csv(const std::vector<RotatingState> &states)
{
    std::ostringstream os;
    os << "t,y1,y2,v1,v2\n";
    for (const auto &s : states) {
        os << format17(s.t) << ',' << format17(s.y1) << ',' << format17(s.y2) << ',' << format17(s.v1) << ','
           << format17(s.v2) << '\n';
    }
    return os.str();
}

std::string quadrature_csv(const VerificationReport &rep)
{
    std::ostringstream os;
    os << "epsilon,excised_integral\n";
    for (std::size_t i = 0; i < rep.epsilons.size() && i < rep.excised_values.size(); ++i) {
        os << format17(rep.epsilons[i]) << ',' << format17(rep.excised_values[i]) << '\n';
    }
    os << "0," << format17(rep.area_integral) << '\n';
    return os.str();
}

SvgPanel orbit_panel(const std::vector<Vec2> &curve, const MassParameter &mu, double jacobi, std::string title,
                     bool closed)
{
    SvgPanel p;
    p.title = std::move(title);
    p.curve = curve;
    p.closed = closed;
    p.markers = {{mu.primary1(), "Sun"}, {mu.primary2(), "Jupiter"}};
    const auto l4 = lagrange_triangular(mu, TriangularPoint::L4);
    const auto l5 = lagrange_triangular(mu, TriangularPoint::L5);
    p.markers.push_back({l4.position, "L4"});
    p.markers.push_back({l5.position, "L5"});
    p.hill = std::make_pair(mu, jacobi);
    return p;
}

std::string render_svg(const std::vector<SvgPanel> &panels)
{
    constexpr double kSize = 480.0;
    constexpr double kMargin = 30.0;
    std::ostringstream os;
    const double width = kSize * static_cast<double>(std::max<std::size_t>(panels.size(), 1));
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << format6(width) << "\" height=\""
       << format6(kSize) << "\" viewBox=\"0 0 " << format6(width) << ' ' << format6(kSize) << "\">\n"
       << "<rect x=\"0\" y=\"0\" width=\"" << format6(width) << "\" height=\"" << format6(kSize)
       << "\" fill=\"white\"/>\n";
    for (std::size_t k = 0; k < panels.size(); ++k) {
        const SvgPanel &p = panels[k];
        double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
        for (const Vec2 v : p.curve) {
            x0 = std::min(x0, v.x);
            x1 = std::max(x1, v.x);
            y0 = std::min(y0, v.y);
            y1 = std::max(y1, v.y);
        }
        if (p.curve.empty()) {
            x0 = y0 = -1.5;
            x1 = y1 = 1.5;
        }
        const double span = std::max({x1 - x0, y1 - y0, 1e-6}) * 1.2;
        const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
        const double scale = (kSize - 2.0 * kMargin) / span;
        const double ox = kSize * static_cast<double>(k);
        const auto px = [&](Vec2 v) { return ox + 0.5 * kSize + (v.x - cx) * scale; };
        const auto py = [&](Vec2 v) { return 0.5 * kSize - (v.y - cy) * scale; };
        const auto visible = [&](Vec2 v) {
            return std::abs(v.x - cx) <= 0.5 * span && std::abs(v.y - cy) <= 0.5 * span;
        };

        os << "<g>\n";
        if (p.hill) {
            const auto &[mu, c] = *p.hill;
            constexpr int kGrid = 96;
            const double cell = span / kGrid;
            os << "<g fill=\"#d0d0d0\" stroke=\"none\" shape-rendering=\"crispEdges\">\n";
            for (int r = 0; r < kGrid; ++r) {
                int run = -1;
                for (int q = 0; q <= kGrid; ++q) {
                    bool forbidden = false;
                    if (q < kGrid) {
                        const Vec2 v{cx - 0.5 * span + (q + 0.5) * cell, cy + 0.5 * span - (r + 0.5) * cell};
                        forbidden = hill_margin(v, mu, c) < 0.0;
                    }
                    if (forbidden && run < 0) {
                        run = q;
                    } else if (!forbidden && run >= 0) {
                        const Vec2 corner{cx - 0.5 * span + run * cell, cy + 0.5 * span - r * cell};
                        os << "<rect x=\"" << format6(px(corner)) << "\" y=\"" << format6(py(corner))
                           << "\" width=\"" << format6((q - run) * cell * scale) << "\" height=\""
                           << format6(cell * scale) << "\"/>\n";
                        run = -1;
                    }
                }
            }
            os << "</g>\n";
        }
        if (!p.curve.empty()) {
            os << "<path fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\" d=\"";
            for (std::size_t i = 0; i < p.curve.size(); ++i) {
                os << (i ? " L" : "M") << format6(px(p.curve[i])) << ',' << format6(py(p.curve[i]));
            }
            os << (p.closed ? " Z" : "") << "\"/>\n";
        }
        for (const auto &[v, label] : p.markers) {
            if (!visible(v)) {
                continue;
            }
            os << "<circle cx=\"" << format6(px(v)) << "\" cy=\"" << format6(py(v))
               << "\" r=\"3\" fill=\"#c0392b\"/>\n"
               << "<text x=\"" << format6(px(v) + 5.0) << "\" y=\"" << format6(py(v) - 5.0)
               << "\" font-family=\"sans-serif\" font-size=\"11\">" << label << "</text>\n";
        }
        os << "<text x=\"" << format6(ox + kMargin) << "\" y=\"" << format6(kMargin * 0.6)
           << "\" font-family=\"sans-serif\" font-size=\"13\">" << p.title << "</text>\n";
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void write_text_file(const std::string &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::Domain, "cannot open '" + path + "' for writing");
    }
    out << text;
}

std::string read_text_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::Schema, "cannot read '" + path + "'");
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace pcr3bp
