#pragma once

#include <optional>

#include "pcr3bp/integrate.hpp"
#include "pcr3bp/types.hpp"

namespace pcr3bp {

/// Largest closure residual accepted as a periodic orbit.
inline constexpr double kPeriodicityThreshold = 1e-3;
/// Minimum speed below which an orbit is not regular.
inline constexpr double kRegularityThreshold = 1e-9;

/// A periodic solution: one period of trajectory starting at the initial state.
struct ClosedOrbit {
    MassParameter mu;
    double jacobi;
    double period;
    Trajectory trajectory;
    double closure_residual;
    double min_speed;

    RotatingState initial() const { return trajectory.samples().front(); }
};

struct PeriodWindow {
    double begin;
    double end;
};

/// Finds the period as the first return of s0 (searching [0.1, 50] without a hint).
/// Throws NotPeriodic when nothing returns within 1e-3 and IrregularOrbit when the speed
/// drops below 1e-9.
ClosedOrbit detect_period(const RotatingState &s0, const MassParameter &mu, std::optional<PeriodWindow> hint = {},
                          const IntegratorConfig &cfg = {});

/// Propagates s0 over a given period and packages the result; throws NotPeriodic when the
/// closure residual exceeds max_residual and IrregularOrbit as above.
ClosedOrbit close_orbit(const RotatingState &s0, double period, const MassParameter &mu, const IntegratorConfig &cfg = {},
                        double max_residual = kPeriodicityThreshold);

struct RefinementResult {
    ClosedOrbit orbit;
    int iterations;
    bool converged;
    double initial_residual;
    double jacobi_before;
    double jacobi_after;
};

/// Damped Newton shooting on (s0, T) with a finite-difference Jacobian and minimum-norm
/// least-squares corrections. Never returns a worse iterate than the input. Throws Domain
/// when (s0, T0) does not close to within 1e-2.
RefinementResult refine_orbit(const RotatingState &s0, double period_guess, const MassParameter &mu,
                              const IntegratorConfig &cfg = {}, double target_residual = 1e-10, int max_iterations = 50);

} // namespace pcr3bp
