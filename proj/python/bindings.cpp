#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pcr3bp/curvegeom.hpp"
#include "pcr3bp/dynamics.hpp"
#include "pcr3bp/error.hpp"
#include "pcr3bp/integrate.hpp"
#include "pcr3bp/io.hpp"
#include "pcr3bp/reference_examples.hpp"
#include "pcr3bp/periodarea.hpp"
#include "pcr3bp/periodicity.hpp"

namespace py = pybind11;
using namespace pcr3bp;

namespace {

RotatingState to_state(const std::array<double, 4> &s, double t = 0.0)
{
    return {s[0], s[1], s[2], s[3], t};
}

py::array_t<double> states_array(const std::vector<RotatingState> &states)
{
    py::array_t<double> out({static_cast<py::ssize_t>(states.size()), py::ssize_t{5}});
    auto a = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto &s = states[i];
        const auto r = static_cast<py::ssize_t>(i);
        a(r, 0) = s.t;
        a(r, 1) = s.y1;
        a(r, 2) = s.y2;
        a(r, 3) = s.v1;
        a(r, 4) = s.v2;
    }
    return out;
}

py::array_t<double> points_array(const std::vector<Vec2> &pts)
{
    py::array_t<double> out({static_cast<py::ssize_t>(pts.size()), py::ssize_t{2}});
    auto a = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        a(static_cast<py::ssize_t>(i), 0) = pts[i].x;
        a(static_cast<py::ssize_t>(i), 1) = pts[i].y;
    }
    return out;
}

std::vector<Vec2> to_points(const py::array_t<double, py::array::c_style | py::array::forcecast> &xy)
{
    if (xy.ndim() != 2 || xy.shape(1) != 2) {
        throw Error(ErrorKind::Domain, "points must have shape (m, 2)");
    }
    auto a = xy.unchecked<2>();
    std::vector<Vec2> out;
    for (py::ssize_t i = 0; i < a.shape(0); ++i) {
        out.push_back({a(i, 0), a(i, 1)});
    }
    return out;
}

std::vector<Vec2> to_points(const std::vector<std::array<double, 2>> &xs)
{
    std::vector<Vec2> out;
    for (const auto &x : xs) {
        out.push_back({x[0], x[1]});
    }
    return out;
}

py::dict case_dict(const TheoremCase &tc)
{
    py::dict d;
    d["orientation"] = to_string(tc.orientation);
    d["covering_index"] = tc.covering_index;
    d["encloses_primary1"] = tc.encloses_primary1;
    d["encloses_primary2"] = tc.encloses_primary2;
    d["k"] = tc.k;
    d["sign"] = tc.sign;
    d["center"] = py::make_tuple(tc.center.x, tc.center.y);
    d["theorem"] = tc.theorem;
    return d;
}

py::dict report_dict(const VerificationReport &r)
{
    py::dict d;
    d["period"] = r.period;
    d["two_T"] = r.two_T;
    d["jacobi"] = r.jacobi;
    d["closure_residual"] = r.closure_residual;
    d["boundary_integral"] = r.boundary_integral;
    d["boundary_integral_direct"] = r.boundary_integral_direct;
    d["area_integral"] = r.area_integral;
    d["area_error_estimate"] = r.area_error_estimate;
    d["k_pi_term"] = r.k_pi_term;
    d["residual_identity"] = r.residual_identity;
    d["residual_stokes"] = r.residual_stokes;
    d["theta_total_change"] = r.theta_total_change;
    d["theta_rms_residual"] = r.theta_rms_residual;
    d["case"] = case_dict(r.theorem_case);
    d["quadrature_status"] = to_string(r.quadrature_status);
    d["quadrature_message"] = r.quadrature_message;
    d["epsilons"] = r.epsilons;
    d["excised_values"] = r.excised_values;
    if (r.lifted) {
        d["lifted_n"] = r.lifted->n;
        d["lifted_roundtrip_error"] = r.lifted->roundtrip_error;
    }
    return d;
}

py::dict l4_dict(const L4Report &r)
{
    py::dict d;
    d["point"] = r.which == TriangularPoint::L4 ? "L4" : "L5";
    d["position"] = py::make_tuple(r.position.x, r.position.y);
    d["mu"] = r.mu;
    d["jacobi"] = r.jacobi;
    d["c0"] = r.c0;
    d["verdict"] = to_string(r.verdict);
    d["delta_ln_f_center"] = r.delta_ln_f_center;
    d["radius"] = r.radius;
    py::list disks;
    for (const auto &k : r.disks) {
        disks.append(py::make_tuple(k.radius, k.min_delta_ln_f, k.max_hill_margin));
    }
    d["disks"] = disks;
    return d;
}

IntegratorConfig make_config(double tol)
{
    IntegratorConfig cfg;
    cfg.rel_tol = tol;
    cfg.abs_tol = tol;
    cfg.validate();
    return cfg;
}

} // namespace

PYBIND11_MODULE(_pcr3bp, m)
{
    m.doc() = "Planar circular restricted three-body problem: periodic orbits and period-area identities.";

    static py::exception<Error> exc(m, "Error");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const Error &e) {
            PyErr_SetObject(exc.ptr(), py::make_tuple(to_string(e.kind()), e.what()).ptr());
        }
    });

    m.attr("EXAMPLE_MU") = kExampleMu;
    m.attr("NOMINAL_MU") = kNominalMu;

    m.def("effective_potential", [](std::array<double, 2> y, double mu) {
        return effective_potential({y[0], y[1]}, MassParameter(mu));
    });
    m.def("jacobi_constant", [](std::array<double, 4> s, double mu) {
        return jacobi_constant(to_state(s), MassParameter(mu));
    });
    m.def("vector_field", [](std::array<double, 4> s, double mu) {
        return vector_field(Phase{s[0], s[1], s[2], s[3]}, MassParameter(mu));
    });
    m.def("field_sample", [](std::array<double, 2> y, double mu, double jacobi) {
        const auto s = field_sample({y[0], y[1]}, MassParameter(mu), jacobi);
        py::dict d;
        d["omega"] = s.omega;
        d["f"] = s.f;
        d["grad_ln_f"] = py::make_tuple(s.grad_ln_f.x, s.grad_ln_f.y);
        d["delta_ln_f"] = s.delta_ln_f;
        return d;
    }, py::arg("y"), py::arg("mu"), py::arg("jacobi"));

    m.def("propagate", [](std::array<double, 4> s0, double t_end, double mu, double tol, std::size_t samples) {
        const Trajectory traj = propagate(to_state(s0), t_end, MassParameter(mu), make_config(tol));
        if (samples == 0) {
            return states_array(traj.samples());
        }
        auto states = traj.resample(samples);
        states.push_back(traj.samples().back());
        return states_array(states);
    }, py::arg("state"), py::arg("t_end"), py::arg("mu"), py::arg("tol") = 1e-12, py::arg("samples") = 0,
       "Rows (t, y1, y2, v1, v2): step endpoints, or samples + 1 uniform times when samples > 0.");

    py::class_<ClosedOrbit>(m, "ClosedOrbit")
        .def_property_readonly("mu", [](const ClosedOrbit &o) { return o.mu.value(); })
        .def_readonly("jacobi", &ClosedOrbit::jacobi)
        .def_readonly("period", &ClosedOrbit::period)
        .def_readonly("closure_residual", &ClosedOrbit::closure_residual)
        .def_readonly("min_speed", &ClosedOrbit::min_speed)
        .def_property_readonly("max_jacobi_drift", [](const ClosedOrbit &o) { return o.trajectory.max_jacobi_drift(); })
        .def("samples", [](const ClosedOrbit &o, std::size_t n) { return states_array(o.trajectory.resample(n)); },
             py::arg("n") = 1024)
        .def("to_json", [](const ClosedOrbit &o, std::string provenance, std::size_t n) {
            return orbit_json(orbit_document(o, std::move(provenance), n));
        }, py::arg("provenance") = "python", py::arg("n") = 1024);

    m.def("detect_period", [](std::array<double, 4> s0, double mu, std::optional<std::array<double, 2>> window) {
        std::optional<PeriodWindow> w;
        if (window) {
            w = PeriodWindow{(*window)[0], (*window)[1]};
        }
        return detect_period(to_state(s0), MassParameter(mu), w);
    }, py::arg("state"), py::arg("mu"), py::arg("window") = py::none());
    m.def("close_orbit", [](std::array<double, 4> s0, double period, double mu) {
        return close_orbit(to_state(s0), period, MassParameter(mu));
    }, py::arg("state"), py::arg("period"), py::arg("mu"));
    m.def("example_orbit", [](int id) {
        const auto &ex = reference_example(id);
        return detect_period(ex.initial, MassParameter(kExampleMu), ex.window);
    }, py::arg("id"));
    m.def("reference_example", [](int id) {
        const auto &ex = reference_example(id);
        py::dict d;
        d["id"] = ex.id;
        d["name"] = ex.name;
        d["initial"] = py::make_tuple(ex.initial.y1, ex.initial.y2, ex.initial.v1, ex.initial.v2);
        d["window"] = py::make_tuple(ex.window.begin, ex.window.end);
        d["period"] = ex.period;
        d["jacobi"] = ex.jacobi;
        d["area"] = ex.area;
        return d;
    }, py::arg("id"));

    m.def("classify", [](const ClosedOrbit &o, std::vector<std::array<double, 2>> centers) {
        const auto c = to_points(centers);
        return case_dict(classify_case(o, c));
    }, py::arg("orbit"), py::arg("centers") = std::vector<std::array<double, 2>>{});
    m.def("verify", [](const ClosedOrbit &o, std::vector<std::array<double, 2>> centers) {
        const auto c = to_points(centers);
        return report_dict(verify(o, {}, c));
    }, py::arg("orbit"), py::arg("centers") = std::vector<std::array<double, 2>>{});

    m.def("winding_number", [](const py::array_t<double, py::array::c_style | py::array::forcecast> &xy,
                               std::array<double, 2> p) {
        return winding_number(ClosedPolyline(to_points(xy)), {p[0], p[1]});
    }, py::arg("points"), py::arg("p"));
    m.def("signed_area", [](const py::array_t<double, py::array::c_style | py::array::forcecast> &xy) {
        return signed_area(ClosedPolyline(to_points(xy)));
    }, py::arg("points"));
    m.def("is_simple", [](const py::array_t<double, py::array::c_style | py::array::forcecast> &xy) {
        return is_simple(ClosedPolyline(to_points(xy)));
    }, py::arg("points"));
    m.def("lift", [](const py::array_t<double, py::array::c_style | py::array::forcecast> &xy,
                     std::array<double, 2> center, int n) {
        const LiftedCurve l = lift(ClosedPolyline(to_points(xy)), {center[0], center[1]}, n);
        py::dict d;
        d["beta"] = points_array(l.beta.vertices());
        d["n"] = l.n;
        d["gamma_total"] = l.gamma_total;
        d["roundtrip_error"] = l.roundtrip_error;
        return d;
    }, py::arg("points"), py::arg("center"), py::arg("n"));
    m.def("area_integral", [](const py::array_t<double, py::array::c_style | py::array::forcecast> &xy, double mu,
                              double jacobi, std::vector<std::array<double, 2>> excised) {
        const auto e = to_points(excised);
        const RegionIntegral r = area_integral(ClosedPolyline(to_points(xy)), MassParameter(mu), jacobi, e);
        return py::make_tuple(r.value, r.error_estimate);
    }, py::arg("points"), py::arg("mu"), py::arg("jacobi"),
       py::arg("excised") = std::vector<std::array<double, 2>>{});

    m.def("l4_direction_analysis", [](double mu, double jacobi, std::optional<std::vector<double>> radii,
                                      const std::string &point) {
        if (point != "L4" && point != "L5") {
            throw Error(ErrorKind::Domain, "point must be 'L4' or 'L5'");
        }
        const auto r = radii.value_or(default_l4_radii());
        return l4_dict(l4_direction_analysis(MassParameter(mu), jacobi, r,
                                             point == "L4" ? TriangularPoint::L4 : TriangularPoint::L5));
    }, py::arg("mu"), py::arg("jacobi"), py::arg("radii") = py::none(), py::arg("point") = "L4");

    m.def("parse_orbit_json", [](const std::string &text) {
        const OrbitDocument doc = parse_orbit_json(text);
        py::dict d;
        d["mu"] = doc.mu;
        d["jacobi"] = doc.jacobi;
        d["period"] = doc.period;
        d["closure_residual"] = doc.closure_residual;
        d["provenance"] = doc.provenance;
        d["samples"] = doc.samples;
        return d;
    }, py::arg("text"));
}
