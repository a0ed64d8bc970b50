#include "pcr3bp/periodicity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "pcr3bp/dynamics.hpp"
#include "pcr3bp/error.hpp"

namespace pcr3bp {

namespace {

double min_speed_of(const Trajectory &traj, std::size_t n)
{
    double speed = INFINITY;
    for (const auto &s : traj.resample(n)) {
        speed = std::min(speed, std::hypot(s.v1, s.v2));
    }
    for (const auto &s : traj.samples()) {
        speed = std::min(speed, std::hypot(s.v1, s.v2));
    }
    return speed;
}

Phase flow(const Phase &s, double t0, double period, const MassParameter &mu, const IntegratorConfig &cfg)
{
    Propagator prop(RotatingState::from_phase(s, t0), t0 + period, mu, cfg);
    while (!prop.done()) {
        prop.step();
    }
    return prop.state().phase();
}

double residual_norm(const Phase &a, const Phase &b)
{
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
        acc += (a[i] - b[i]) * (a[i] - b[i]);
    }
    return std::sqrt(acc);
}

} // namespace

ClosedOrbit close_orbit(const RotatingState &s0, double period, const MassParameter &mu, const IntegratorConfig &cfg,
                        double max_residual)
{
    if (!(period > 0.0)) {
        throw Error(ErrorKind::Domain, "period must be positive");
    }
    Trajectory traj = propagate(s0, s0.t + period, mu, cfg);
    const double residual = phase_distance(traj.samples().back(), traj.samples().front());
    if (!(residual <= max_residual)) {
        throw Error(ErrorKind::NotPeriodic,
                    "closure residual " + std::to_string(residual) + " exceeds " + std::to_string(max_residual));
    }
    const double speed = min_speed_of(traj, cfg.dense_samples_per_period);
    if (speed < kRegularityThreshold) {
        throw Error(ErrorKind::IrregularOrbit, "orbit speed vanishes (min " + std::to_string(speed) + ")");
    }
    const double jacobi = traj.jacobi();
    return ClosedOrbit{mu, jacobi, period, std::move(traj), residual, speed};
}

ClosedOrbit detect_period(const RotatingState &s0, const MassParameter &mu, std::optional<PeriodWindow> hint,
                          const IntegratorConfig &cfg)
{
    const PeriodWindow window = hint.value_or(PeriodWindow{0.1, 50.0});
    FirstReturn ret{};
    try {
        ret = first_return(s0, window.begin, window.end, kPeriodicityThreshold, mu, cfg);
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::NotFound) {
            throw Error(ErrorKind::NotPeriodic, std::string("no periodic return: ") + e.what());
        }
        throw;
    }
    return close_orbit(s0, ret.time, mu, cfg);
}

RefinementResult refine_orbit(const RotatingState &s0, double period_guess, const MassParameter &mu,
                              const IntegratorConfig &cfg, double target_residual, int max_iterations)
{
    const double t0 = s0.t;
    Phase state = s0.phase();
    double period = period_guess;
    if (!(period > 0.0)) {
        throw Error(ErrorKind::Domain, "period must be positive");
    }
    ClosedOrbit start = close_orbit(s0, period, mu, cfg, INFINITY);
    const double initial_residual = start.closure_residual;
    if (!(initial_residual <= 1e-2)) {
        throw Error(ErrorKind::Domain, "initial guess does not close to within 1e-2");
    }
    const double jacobi_before = start.jacobi;
    Phase end = flow(state, t0, period, mu, cfg);
    double residual = residual_norm(end, state);
    bool moved = false;

    int iterations = 0;
    while (residual > target_residual && iterations < max_iterations) {
        // Shooting map r(s, T) = phi_T(s) - s; Jacobian [dphi/ds - I | F(phi_T(s))].
        Eigen::Matrix<double, 4, 5> jac;
        for (int j = 0; j < 4; ++j) {
            const double delta = 1e-7 * std::max(1.0, std::abs(state[j]));
            Phase plus = state, minus = state;
            plus[j] += delta;
            minus[j] -= delta;
            const Phase ep = flow(plus, t0, period, mu, cfg);
            const Phase em = flow(minus, t0, period, mu, cfg);
            for (int i = 0; i < 4; ++i) {
                jac(i, j) = (ep[i] - em[i]) / (2.0 * delta) - (i == j ? 1.0 : 0.0);
            }
        }
        const Phase f_end = vector_field(end, mu);
        Eigen::Vector4d r;
        for (int i = 0; i < 4; ++i) {
            jac(i, 4) = f_end[i];
            r(i) = end[i] - state[i];
        }
        Eigen::CompleteOrthogonalDecomposition<Eigen::Matrix<double, 4, 5>> cod(jac);
        cod.setThreshold(1e-9);
        const Eigen::Matrix<double, 5, 1> dx = -cod.solve(r);

        ++iterations;
        bool improved = false;
        double lambda = 1.0;
        for (int k = 0; k < 10 && !improved; ++k, lambda *= 0.5) {
            Phase trial = state;
            for (int i = 0; i < 4; ++i) {
                trial[i] += lambda * dx(i);
            }
            const double trial_period = period + lambda * dx(4);
            if (!(trial_period > 0.0)) {
                continue;
            }
            Phase trial_end;
            try {
                trial_end = flow(trial, t0, trial_period, mu, cfg);
            } catch (const Error &) {
                continue;
            }
            const double trial_residual = residual_norm(trial_end, trial);
            if (trial_residual < residual) {
                state = trial;
                period = trial_period;
                end = trial_end;
                residual = trial_residual;
                improved = true;
                moved = true;
            }
        }
        if (!improved) {
            break;
        }
    }

    std::optional<ClosedOrbit> orbit;
    if (moved) {
        orbit = close_orbit(RotatingState::from_phase(state, t0), period, mu, cfg, INFINITY);
    }
    if (!orbit || orbit->closure_residual > initial_residual) {
        orbit = std::move(start);
    }
    const double jacobi_after = orbit->jacobi;
    const bool converged = orbit->closure_residual <= target_residual;
    return RefinementResult{std::move(*orbit), iterations, converged, initial_residual, jacobi_before, jacobi_after};
}

} // namespace pcr3bp
