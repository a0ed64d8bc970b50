#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pcr3bp/curvegeom.hpp"
#include "pcr3bp/dynamics.hpp"
#include "pcr3bp/error.hpp"
#include "pcr3bp/integrate.hpp"
#include "pcr3bp/io.hpp"
#include "pcr3bp/reference_examples.hpp"
#include "pcr3bp/periodarea.hpp"
#include "pcr3bp/periodicity.hpp"

using namespace pcr3bp;

namespace {

int exit_code(ErrorKind k)
{
    switch (k) {
    case ErrorKind::NotPeriodic: return 2;
    case ErrorKind::Unclassifiable: return 3;
    case ErrorKind::RegionExitsHillRegion: return 4;
    case ErrorKind::QuadratureFailure:
    case ErrorKind::ExtrapolationUnstable: return 5;
    default: return 1;
    }
}

int exit_code(QuadratureStatus s)
{
    switch (s) {
    case QuadratureStatus::Ok: return 0;
    case QuadratureStatus::RegionExitsHillRegion: return 4;
    default: return 5;
    }
}

std::string g6(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string join_path(const std::string &dir, const std::string &name)
{
    return (std::filesystem::path(dir) / name).string();
}

RotatingState state_from(const std::vector<double> &ic)
{
    if (ic.size() != 4) {
        throw Error(ErrorKind::Domain, "--ic expects y1,y2,v1,v2");
    }
    return {ic[0], ic[1], ic[2], ic[3], 0.0};
}

std::optional<PeriodWindow> window_from(const std::vector<double> &hint)
{
    if (hint.empty()) {
        return std::nullopt;
    }
    if (hint.size() != 2 || !(hint[0] > 0.0) || !(hint[1] > hint[0])) {
        throw Error(ErrorKind::Domain, "--period-hint expects a,b with 0 < a < b");
    }
    return PeriodWindow{hint[0], hint[1]};
}

std::vector<Vec2> positions(const std::vector<RotatingState> &states)
{
    std::vector<Vec2> out;
    out.reserve(states.size());
    for (const auto &s : states) {
        out.push_back(s.position());
    }
    return out;
}

std::string polyline_csv(const ClosedPolyline &c)
{
    std::ostringstream os;
    os << "t,y1,y2\n";
    char buf[128];
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double t = c.has_times() ? c.times()[i] : static_cast<double>(i);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", t, c[i].x, c[i].y);
        os << buf;
    }
    return os.str();
}

void print_summary(const VerificationReport &rep)
{
    const TheoremCase &tc = rep.theorem_case;
    std::cout << "period T            " << g6(rep.period) << "\n"
              << "2T                  " << g6(rep.two_T) << "\n"
              << "Jacobi constant C   " << g6(rep.jacobi) << "\n"
              << "closure residual    " << g6(rep.closure_residual) << "\n"
              << "case                " << tc.theorem << " (" << to_string(tc.orientation) << ", k = " << tc.k
              << ", n = " << tc.covering_index << ")\n"
              << "boundary integral   " << g6(rep.boundary_integral) << "\n"
              << "area integral       " << g6(rep.area_integral) << " +- " << g6(rep.area_error_estimate) << "\n"
              << "identity residual   " << g6(rep.residual_identity) << "\n"
              << "Stokes residual     " << g6(rep.residual_stokes) << "\n"
              << "quadrature          " << to_string(rep.quadrature_status);
    if (!rep.quadrature_message.empty()) {
        std::cout << ": " << rep.quadrature_message;
    }
    std::cout << "\n";
    if (rep.lifted) {
        std::cout << "lifting             n = " << rep.lifted->n << ", roundtrip error " << g6(rep.lifted->roundtrip_error)
                  << "\n";
    }
}

std::string orbit_svg(const ClosedOrbit &orbit, const VerificationReport *rep, const std::string &title)
{
    std::vector<SvgPanel> panels;
    const auto pts = positions(orbit.trajectory.resample(2048));
    panels.push_back(orbit_panel(pts, orbit.mu, orbit.jacobi, title));
    if (rep && rep->lifted) {
        SvgPanel lifted;
        lifted.title = "lifting, n = " + std::to_string(rep->lifted->n);
        const auto &beta = rep->lifted->beta;
        const std::size_t stride = std::max<std::size_t>(1, beta.size() / 2048);
        for (std::size_t i = 0; i < beta.size(); i += stride) {
            lifted.curve.push_back(beta[i]);
        }
        lifted.markers.push_back({rep->lifted->center, "center"});
        panels.push_back(std::move(lifted));
    }
    return render_svg(panels);
}

/// Runs verify and writes report, quadrature CSV, and plot under prefix. Returns the exit code.
int run_verification(const ClosedOrbit &orbit, const OrbitDocument &doc, const std::string &prefix,
                     const std::vector<Vec2> &centers, const std::string &title)
{
    const VerificationReport rep = verify(orbit, {}, centers);
    write_text_file(prefix + "_orbit.json", orbit_json(doc));
    write_text_file(prefix + "_report.json", report_json(rep, orbit.mu.value()));
    write_text_file(prefix + "_trajectory.csv", trajectory_csv(orbit.trajectory.resample(doc.samples.size())));
    write_text_file(prefix + "_quadrature.csv", quadrature_csv(rep));
    write_text_file(prefix + ".svg", orbit_svg(orbit, &rep, title));
    print_summary(rep);
    std::cout << "wrote " << prefix << "_{orbit.json,report.json,trajectory.csv,quadrature.csv} and " << prefix
              << ".svg\n";
    return exit_code(rep.quadrature_status);
}

struct Options {
    int example_id{1};
    std::string out_dir{"."};
    std::string prefix;
    std::string orbit_file;
    std::vector<double> ic;
    double mu{kExampleMu};
    std::vector<double> hint;
    std::vector<std::vector<double>> centers;
    double tmax{0.0};
    double tol{1e-12};
    std::size_t samples{1024};
    double jacobi{0.0};
    std::vector<double> radii;
    int primary{0};
    std::vector<double> center;
    int n{0};
};

std::vector<Vec2> to_points(const std::vector<std::vector<double>> &xs)
{
    std::vector<Vec2> out;
    for (const auto &x : xs) {
        if (x.size() != 2) {
            throw Error(ErrorKind::Domain, "points are given as x,y");
        }
        out.push_back({x[0], x[1]});
    }
    return out;
}

/// Orbit from a document (period and Jacobi constant kept as recorded) or from --ic.
std::pair<ClosedOrbit, OrbitDocument> load_orbit(const Options &o)
{
    if (!o.orbit_file.empty()) {
        OrbitDocument doc = parse_orbit_json(read_text_file(o.orbit_file));
        const MassParameter mu(doc.mu);
        ClosedOrbit orbit = close_orbit(doc.initial(), doc.period, mu);
        orbit.jacobi = doc.jacobi;
        return {std::move(orbit), std::move(doc)};
    }
    const MassParameter mu(o.mu);
    ClosedOrbit orbit = detect_period(state_from(o.ic), mu, window_from(o.hint));
    OrbitDocument doc = orbit_document(orbit, "pcr3bp verify --ic", o.samples);
    return {std::move(orbit), std::move(doc)};
}

int cmd_example(const Options &o)
{
    const ReferenceExample &ex = reference_example(o.example_id);
    const MassParameter mu(kExampleMu);
    const ClosedOrbit orbit = detect_period(ex.initial, mu, ex.window);
    std::filesystem::create_directories(o.out_dir);
    const std::string prefix = join_path(o.out_dir, "example" + std::to_string(ex.id));
    const OrbitDocument doc = orbit_document(orbit, "pcr3bp example " + std::to_string(ex.id), o.samples);
    std::cout << "example " << ex.id << ": " << ex.name << "\n";
    return run_verification(orbit, doc, prefix, {}, "Example " + std::to_string(ex.id));
}

int cmd_verify(const Options &o)
{
    if (o.orbit_file.empty() == o.ic.empty()) {
        throw Error(ErrorKind::Domain, "give either an orbit file or --ic");
    }
    auto [orbit, doc] = load_orbit(o);
    const std::string prefix = o.prefix.empty() ? "verify" : o.prefix;
    return run_verification(orbit, doc, prefix, to_points(o.centers), "verify");
}

int cmd_simulate(const Options &o)
{
    const MassParameter mu(o.mu);
    IntegratorConfig cfg;
    cfg.rel_tol = o.tol;
    cfg.abs_tol = o.tol;
    cfg.validate();
    const RotatingState s0 = state_from(o.ic);
    const Trajectory traj = propagate(s0, o.tmax, mu, cfg);
    std::vector<RotatingState> states = traj.resample(std::max<std::size_t>(o.samples, 2));
    states.push_back(traj.samples().back());
    const std::string prefix = o.prefix.empty() ? "simulate" : o.prefix;
    write_text_file(prefix + ".csv", trajectory_csv(states));
    write_text_file(prefix + ".svg",
                    render_svg({orbit_panel(positions(states), mu, traj.jacobi(), "trajectory", false)}));
    const RotatingState end = traj.samples().back();
    std::cout << "Jacobi constant     " << g6(traj.jacobi()) << "\n"
              << "max Jacobi drift    " << g6(traj.max_jacobi_drift()) << "\n"
              << "steps               " << traj.step_count() << "\n"
              << "endpoint distance   " << g6(phase_distance(end, s0)) << "\n"
              << "wrote " << prefix << ".csv and " << prefix << ".svg\n";
    return 0;
}

int cmd_l4(const Options &o)
{
    const MassParameter mu(o.mu);
    const std::vector<double> radii = o.radii.empty() ? default_l4_radii() : o.radii;
    std::vector<L4Report> reports;
    for (const auto which : {TriangularPoint::L4, TriangularPoint::L5}) {
        reports.push_back(l4_direction_analysis(mu, o.jacobi, radii, which));
    }
    for (const auto &r : reports) {
        std::cout << (r.which == TriangularPoint::L4 ? "L4" : "L5") << " at (" << g6(r.position.x) << ", "
                  << g6(r.position.y) << "), C0 = " << g6(r.c0) << ", C = " << g6(r.jacobi) << "\n"
                  << "  verdict: " << to_string(r.verdict) << "\n";
        if (r.jacobi < r.c0) {
            std::cout << "  Delta ln f at the point: " << g6(r.delta_ln_f_center) << "\n"
                      << "  largest radius with Delta ln f > 0: " << g6(r.radius) << "\n";
        } else {
            std::cout << "  largest radius outside the Hill region: " << g6(r.radius) << "\n";
        }
    }
    if (!o.prefix.empty()) {
        write_text_file(o.prefix + ".json", l4_json(reports));
    }
    return 0;
}

int cmd_lift(const Options &o)
{
    if (o.orbit_file.empty() == o.ic.empty()) {
        throw Error(ErrorKind::Domain, "give either an orbit file or --ic");
    }
    auto [orbit, doc] = load_orbit(o);
    Vec2 center{};
    if (o.primary == 1 || o.primary == 2) {
        center = o.primary == 1 ? orbit.mu.primary1() : orbit.mu.primary2();
    } else if (o.center.size() == 2) {
        center = {o.center[0], o.center[1]};
    } else {
        throw Error(ErrorKind::Domain, "give --primary 1|2 or --center x,y");
    }
    const ClosedPolyline curve = orbit_polyline(orbit);
    const int n = o.n > 0 ? o.n : std::abs(winding_number(curve, center));
    const LiftedCurve lifted = lift(curve, center, n);
    const std::string prefix = o.prefix.empty() ? "lift" : o.prefix;
    write_text_file(prefix + "_lifted.csv", polyline_csv(lifted.beta));
    VerificationReport view;
    view.lifted = lifted;
    write_text_file(prefix + ".svg", orbit_svg(orbit, &view, "orbit"));
    std::cout << "center              (" << g6(center.x) << ", " << g6(center.y) << ")\n"
              << "n                   " << n << "\n"
              << "winding             " << winding_number(curve, center) << "\n"
              << "lifted orientation  " << to_string(orientation(lifted.beta)) << "\n"
              << "roundtrip error     " << g6(lifted.roundtrip_error) << "\n"
              << "wrote " << prefix << "_lifted.csv and " << prefix << ".svg\n";
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Periodic orbits of the planar circular restricted three-body problem: period-area identities"};
    app.require_subcommand(1);
    Options o;

    auto *example = app.add_subcommand("example", "Reproduce one of the four built-in orbits");
    example->add_option("id", o.example_id, "Example id")->required()->check(CLI::Range(1, 4));
    example->add_option("--out", o.out_dir, "Output directory");
    example->add_option("--samples", o.samples, "Samples written per period");

    auto *verify_cmd = app.add_subcommand("verify", "Detect the period, classify and check the identity");
    verify_cmd->add_option("orbit", o.orbit_file, "Orbit JSON file");
    verify_cmd->add_option("--ic", o.ic, "Initial state y1,y2,v1,v2")->delimiter(',')->expected(4);
    verify_cmd->add_option("--mu", o.mu, "Mass ratio");
    verify_cmd->add_option("--period-hint", o.hint, "Search window a,b")->delimiter(',')->expected(2);
    verify_cmd->add_option("--center", o.centers, "Extra lifting center x,y (repeatable)")->delimiter(',');
    verify_cmd->add_option("--out", o.prefix, "Output prefix");
    verify_cmd->add_option("--samples", o.samples, "Samples written per period");

    auto *simulate = app.add_subcommand("simulate", "Propagate an initial state");
    simulate->add_option("--ic", o.ic, "Initial state y1,y2,v1,v2")->delimiter(',')->expected(4)->required();
    simulate->add_option("--mu", o.mu, "Mass ratio");
    simulate->add_option("--tmax", o.tmax, "Final time")->required();
    simulate->add_option("--tol", o.tol, "Relative and absolute tolerance");
    simulate->add_option("--out", o.prefix, "Output prefix");
    simulate->add_option("--samples", o.samples, "Dense samples written");

    auto *l4 = app.add_subcommand("l4", "Direction of periodic orbits around L4 and L5");
    l4->add_option("--mu", o.mu, "Mass ratio");
    l4->add_option("--jacobi", o.jacobi, "Jacobi constant")->required();
    l4->add_option("--radii", o.radii, "Disk radii")->delimiter(',');
    l4->add_option("--out", o.prefix, "Write <prefix>.json");

    auto *lift_cmd = app.add_subcommand("lift", "Lift an orbit through the n-th power map");
    lift_cmd->add_option("orbit", o.orbit_file, "Orbit JSON file");
    lift_cmd->add_option("--ic", o.ic, "Initial state y1,y2,v1,v2")->delimiter(',')->expected(4);
    lift_cmd->add_option("--mu", o.mu, "Mass ratio");
    lift_cmd->add_option("--period-hint", o.hint, "Search window a,b")->delimiter(',')->expected(2);
    lift_cmd->add_option("--primary", o.primary, "Lift about primary 1 or 2");
    lift_cmd->add_option("--center", o.center, "Lift about x,y")->delimiter(',')->expected(2);
    lift_cmd->add_option("--n", o.n, "Covering index (default: |winding number|)");
    lift_cmd->add_option("--out", o.prefix, "Output prefix");

    CLI11_PARSE(app, argc, argv);

    try {
        if (example->parsed()) {
            return cmd_example(o);
        }
        if (verify_cmd->parsed()) {
            return cmd_verify(o);
        }
        if (simulate->parsed()) {
            return cmd_simulate(o);
        }
        if (l4->parsed()) {
            return cmd_l4(o);
        }
        if (lift_cmd->parsed()) {
            return cmd_lift(o);
        }
    } catch (const Error &e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
