#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "pcr3bp/types.hpp"

namespace pcr3bp {

struct IntegratorConfig {
    double rel_tol{1e-12};
    double abs_tol{1e-12};
    double max_step{0.1};
    std::size_t dense_samples_per_period{4096};

    /// Throws Domain unless tolerances lie in (0, 1e-3], max_step > 0 and at least 256 dense samples.
    void validate() const;
};

/// Seventh-order continuous extension of one accepted DOP853 step.
struct DenseSegment {
    double t0{0.0};
    double h{0.0};
    Phase y0{};
    std::array<Phase, 7> coeffs{};

    double t_lo() const { return h > 0.0 ? t0 : t0 + h; }
    double t_hi() const { return h > 0.0 ? t0 + h : t0; }
    Phase eval(double t) const;
};

/// Solution of the rotating-frame equations with dense output on [t_begin, t_end].
class Trajectory {
public:
    Trajectory(MassParameter mu, double jacobi, std::vector<DenseSegment> segments);

    const MassParameter &mu() const { return mu_; }
    /// Jacobi constant of the initial state.
    double jacobi() const { return jacobi_; }
    double t_begin() const { return samples_.front().t; }
    double t_end() const { return samples_.back().t; }
    std::size_t step_count() const { return segments_.size(); }

    /// Accepted step endpoints, strictly increasing in t.
    const std::vector<RotatingState> &samples() const { return samples_; }
    const std::vector<DenseSegment> &segments() const { return segments_; }

    /// Dense-output state at any t in [t_begin, t_end]; throws Domain outside.
    RotatingState at(double t) const;

    /// n states at t_begin + i (t_end - t_begin) / n, i = 0..n-1 (the end point is excluded).
    std::vector<RotatingState> resample(std::size_t n) const;

    /// max |C(s) - C| over the step endpoints.
    double max_jacobi_drift() const;

private:
    MassParameter mu_;
    double jacobi_;
    std::vector<DenseSegment> segments_; // sorted by t_lo
    std::vector<RotatingState> samples_;
};

/// Step-by-step DOP853 driver; propagate() and first_return() are built on it.
class Propagator {
public:
    Propagator(const RotatingState &s0, double t_bound, const MassParameter &mu, const IntegratorConfig &cfg);

    bool done() const { return done_; }
    /// Advances by one accepted step and returns its dense segment.
    const DenseSegment &step();
    RotatingState state() const { return RotatingState::from_phase(y_, t_); }

private:
    Phase rhs(double t, const Phase &y);

    MassParameter mu_;
    IntegratorConfig cfg_;
    double t_;
    double t_bound_;
    double direction_;
    double h_abs_;
    Phase y_;
    Phase f_;
    bool done_{false};
    DenseSegment last_;
};

/// Adaptive DOP853 propagation from s0 to t_end (either direction). Throws EmptyInterval
/// when t_end == s0.t, SingularityApproach when r1 or r2 drops below 1e-6 and StepFailure
/// when the step size underflows.
Trajectory propagate(const RotatingState &s0, double t_end, const MassParameter &mu,
                     const IntegratorConfig &cfg = {});

struct FirstReturn {
    double time;     ///< elapsed time since s0.t
    double residual; ///< phase-space distance to s0 at that time
};

/// Earliest local minimum of |s(t) - s0| below radius with elapsed time in [window_begin, window_end].
/// A minimum only counts once the trajectory has moved farther than radius from s0, so
/// equilibria never return. Throws NotFound otherwise.
FirstReturn first_return(const RotatingState &s0, double window_begin, double window_end, double radius,
                         const MassParameter &mu, const IntegratorConfig &cfg = {});

} // namespace pcr3bp
