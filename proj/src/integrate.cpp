#include "pcr3bp/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "dop853_tableau.hpp"
#include "pcr3bp/dynamics.hpp"
#include "pcr3bp/error.hpp"

namespace pcr3bp {

namespace tab = detail::dop853;

namespace {

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 10.0;
constexpr double kSingularityRadius = 1e-6;

Phase axpy(const Phase &y, double h, const Phase &k)
{
    return {y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2], y[3] + h * k[3]};
}

double rms_scaled(const Phase &v, const Phase &scale)
{
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
        s += (v[i] / scale[i]) * (v[i] / scale[i]);
    }
    return std::sqrt(s / 4.0);
}

} // namespace

void IntegratorConfig::validate() const
{
    auto ok_tol = [](double v) { return v > 0.0 && v <= 1e-3; };
    if (!ok_tol(rel_tol) || !ok_tol(abs_tol)) {
        throw Error(ErrorKind::Domain, "integrator tolerances must lie in (0, 1e-3]");
    }
    if (!(max_step > 0.0)) {
        throw Error(ErrorKind::Domain, "max_step must be positive");
    }
    if (dense_samples_per_period < 256) {
        throw Error(ErrorKind::Domain, "dense_samples_per_period must be at least 256");
    }
}

Phase DenseSegment::eval(double t) const
{
    const double x = (t - t0) / h;
    Phase y{};
    for (int i = 0; i < 7; ++i) {
        const auto &c = coeffs[6 - i];
        const double m = (i % 2 == 0) ? x : 1.0 - x;
        for (int j = 0; j < 4; ++j) {
            y[j] = (y[j] + c[j]) * m;
        }
    }
    for (int j = 0; j < 4; ++j) {
        y[j] += y0[j];
    }
    return y;
}

Trajectory::Trajectory(MassParameter mu, double jacobi, std::vector<DenseSegment> segments)
    : mu_(mu), jacobi_(jacobi), segments_(std::move(segments))
{
    if (segments_.empty()) {
        throw Error(ErrorKind::EmptyInterval, "trajectory has no steps");
    }
    std::sort(segments_.begin(), segments_.end(),
              [](const DenseSegment &a, const DenseSegment &b) { return a.t_lo() < b.t_lo(); });
    samples_.reserve(segments_.size() + 1);
    for (const auto &seg : segments_) {
        samples_.push_back(RotatingState::from_phase(seg.eval(seg.t_lo()), seg.t_lo()));
    }
    const auto &last = segments_.back();
    samples_.push_back(RotatingState::from_phase(last.eval(last.t_hi()), last.t_hi()));
}

RotatingState Trajectory::at(double t) const
{
    const double lo = t_begin(), hi = t_end();
    const double slack = 1e-12 * std::max(1.0, std::abs(hi - lo));
    if (!(t >= lo - slack && t <= hi + slack)) {
        throw Error(ErrorKind::Domain, "time " + std::to_string(t) + " outside trajectory range");
    }
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                               [](double v, const DenseSegment &s) { return v < s.t_lo(); });
    const auto &seg = it == segments_.begin() ? segments_.front() : *std::prev(it);
    return RotatingState::from_phase(seg.eval(t), t);
}

std::vector<RotatingState> Trajectory::resample(std::size_t n) const
{
    std::vector<RotatingState> out;
    out.reserve(n);
    const double span = t_end() - t_begin();
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(at(t_begin() + span * static_cast<double>(i) / static_cast<double>(n)));
    }
    return out;
}

double Trajectory::max_jacobi_drift() const
{
    double drift = 0.0;
    for (const auto &s : samples_) {
        drift = std::max(drift, std::abs(jacobi_constant(s, mu_) - jacobi_));
    }
    return drift;
}

Propagator::Propagator(const RotatingState &s0, double t_bound, const MassParameter &mu, const IntegratorConfig &cfg)
    : mu_(mu), cfg_(cfg), t_(s0.t), t_bound_(t_bound), y_(s0.phase())
{
    cfg_.validate();
    for (double v : y_) {
        if (!std::isfinite(v)) {
            throw Error(ErrorKind::Domain, "initial state is not finite");
        }
    }
    if (!std::isfinite(t_bound) || t_bound == s0.t) {
        throw Error(ErrorKind::EmptyInterval, "integration interval is empty");
    }
    direction_ = t_bound > s0.t ? 1.0 : -1.0;
    f_ = rhs(t_, y_);

    // Initial step selection after Hairer, Norsett & Wanner.
    Phase scale{};
    for (int i = 0; i < 4; ++i) {
        scale[i] = cfg_.abs_tol + std::abs(y_[i]) * cfg_.rel_tol;
    }
    const double d0 = rms_scaled(y_, scale), d1 = rms_scaled(f_, scale);
    const double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    const Phase f1 = rhs(t_ + direction_ * h0, axpy(y_, direction_ * h0, f_));
    Phase df{};
    for (int i = 0; i < 4; ++i) {
        df[i] = f1[i] - f_[i];
    }
    const double d2 = rms_scaled(df, scale) / h0;
    const double dmax = std::max(d1, d2);
    const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 1.0 / 8.0);
    h_abs_ = std::min({100.0 * h0, h1, cfg_.max_step, std::abs(t_bound_ - t_)});
}

Phase Propagator::rhs(double, const Phase &y)
{
    const auto d = primary_distances({y[0], y[1]}, mu_);
    if (d.r1 < kSingularityRadius || d.r2 < kSingularityRadius) {
        throw Error(ErrorKind::SingularityApproach, "trajectory came within 1e-6 of a primary");
    }
    return vector_field(y, mu_);
}

const DenseSegment &Propagator::step()
{
    if (done_) {
        throw Error(ErrorKind::Domain, "propagation already reached its bound");
    }
    std::array<Phase, tab::kStagesExtended> k{};
    const double min_step = 10.0 * std::abs(std::nextafter(t_, direction_ * INFINITY) - t_);
    double h_abs = std::min(h_abs_, cfg_.max_step);
    bool rejected = false;

    for (;;) {
        if (h_abs < min_step) {
            throw Error(ErrorKind::StepFailure, "step size underflow at t = " + std::to_string(t_));
        }
        double t_new = t_ + direction_ * h_abs;
        if (direction_ * (t_new - t_bound_) > 0.0) {
            t_new = t_bound_;
        }
        const double h = t_new - t_;
        h_abs = std::abs(h);

        k[0] = f_;
        for (int s = 1; s < tab::kStages; ++s) {
            Phase y = y_;
            for (int j = 0; j < s; ++j) {
                const double a = tab::a[s][j];
                if (a != 0.0) {
                    for (int i = 0; i < 4; ++i) {
                        y[i] += h * a * k[j][i];
                    }
                }
            }
            k[s] = rhs(t_ + tab::c[s] * h, y);
        }
        Phase y_new = y_;
        for (int j = 0; j < tab::kStages; ++j) {
            const double b = tab::a[tab::kStages][j];
            for (int i = 0; i < 4; ++i) {
                y_new[i] += h * b * k[j][i];
            }
        }
        const Phase f_new = rhs(t_new, y_new);
        k[tab::kStages] = f_new;

        double err5 = 0.0, err3 = 0.0;
        for (int i = 0; i < 4; ++i) {
            const double scale = cfg_.abs_tol + std::max(std::abs(y_[i]), std::abs(y_new[i])) * cfg_.rel_tol;
            double e5 = 0.0, e3 = 0.0;
            for (int j = 0; j <= tab::kStages; ++j) {
                const double b = j < tab::kStages ? tab::a[tab::kStages][j] : 0.0;
                e5 += tab::e5[j] * k[j][i];
                e3 += (b - tab::e3_correction[j]) * k[j][i];
            }
            err5 += (e5 / scale) * (e5 / scale);
            err3 += (e3 / scale) * (e3 / scale);
        }
        double error_norm = 0.0;
        if (err5 > 0.0 || err3 > 0.0) {
            error_norm = h_abs * err5 / std::sqrt((err5 + 0.01 * err3) * 4.0);
        }

        if (error_norm < 1.0) {
            double factor = error_norm == 0.0 ? kMaxFactor
                                              : std::min(kMaxFactor, kSafety * std::pow(error_norm, -1.0 / 8.0));
            if (rejected) {
                factor = std::min(1.0, factor);
            }

            // Extra stages for the continuous extension.
            for (int s = tab::kStages + 1; s < tab::kStagesExtended; ++s) {
                Phase y = y_;
                for (int j = 0; j < s; ++j) {
                    const double a = tab::a[s][j];
                    if (a != 0.0) {
                        for (int i = 0; i < 4; ++i) {
                            y[i] += h * a * k[j][i];
                        }
                    }
                }
                k[s] = rhs(t_ + tab::c[s] * h, y);
            }
            DenseSegment seg;
            seg.t0 = t_;
            seg.h = h;
            seg.y0 = y_;
            for (int i = 0; i < 4; ++i) {
                const double dy = y_new[i] - y_[i];
                seg.coeffs[0][i] = dy;
                seg.coeffs[1][i] = h * f_[i] - dy;
                seg.coeffs[2][i] = 2.0 * dy - h * (f_new[i] + f_[i]);
                for (int r = 0; r < 4; ++r) {
                    double acc = 0.0;
                    for (int j = 0; j < tab::kStagesExtended; ++j) {
                        acc += tab::d[r][j] * k[j][i];
                    }
                    seg.coeffs[3 + r][i] = h * acc;
                }
            }
            last_ = seg;
            t_ = t_new;
            y_ = y_new;
            f_ = f_new;
            h_abs_ = h_abs * factor;
            done_ = t_new == t_bound_;
            return last_;
        }
        h_abs *= std::max(kMinFactor, kSafety * std::pow(error_norm, -1.0 / 8.0));
        rejected = true;
    }
}

Trajectory propagate(const RotatingState &s0, double t_end, const MassParameter &mu, const IntegratorConfig &cfg)
{
    const double jacobi = jacobi_constant(s0, mu);
    Propagator prop(s0, t_end, mu, cfg);
    std::vector<DenseSegment> segments;
    while (!prop.done()) {
        segments.push_back(prop.step());
    }
    return Trajectory(mu, jacobi, std::move(segments));
}

FirstReturn first_return(const RotatingState &s0, double window_begin, double window_end, double radius,
                         const MassParameter &mu, const IntegratorConfig &cfg)
{
    if (!(window_end > window_begin) || !(window_begin >= 0.0)) {
        throw Error(ErrorKind::Domain, "return window must be a positive interval");
    }
    if (!(radius > 0.0)) {
        throw Error(ErrorKind::Domain, "return radius must be positive");
    }
    constexpr int kProbes = 8;
    const Phase p0 = s0.phase();

    // Half the time derivative of |s(t) - s0|^2; a sign change from - to + brackets a minimum.
    auto approach_rate = [&](const Phase &y) {
        const Phase f = vector_field(y, mu);
        double acc = 0.0;
        for (int i = 0; i < 4; ++i) {
            acc += (y[i] - p0[i]) * f[i];
        }
        return acc;
    };
    auto distance = [&](const Phase &y) {
        double acc = 0.0;
        for (int i = 0; i < 4; ++i) {
            acc += (y[i] - p0[i]) * (y[i] - p0[i]);
        }
        return std::sqrt(acc);
    };

    Propagator prop(s0, s0.t + window_end, mu, cfg);
    bool departed = false;
    while (!prop.done()) {
        const DenseSegment &seg = prop.step();
        double t_prev = seg.t0;
        Phase y_prev = seg.y0;
        double rate_prev = approach_rate(y_prev);
        for (int p = 1; p <= kProbes; ++p) {
            const double t = seg.t0 + seg.h * static_cast<double>(p) / kProbes;
            const Phase y = seg.eval(t);
            const double rate = approach_rate(y);
            const double elapsed_hi = t - s0.t;
            if (departed && rate_prev < 0.0 && rate >= 0.0 && elapsed_hi >= window_begin) {
                auto event = [&](double tt) { return approach_rate(seg.eval(tt)); };
                boost::uintmax_t max_iter = 200;
                auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-13 * std::max(1.0, std::abs(a)); };
                double t_star = t;
                if (rate == 0.0) {
                    t_star = t;
                } else {
                    const auto [lo, hi] = boost::math::tools::toms748_solve(event, t_prev, t, rate_prev, rate, tol, max_iter);
                    t_star = 0.5 * (lo + hi);
                }
                const double elapsed = t_star - s0.t;
                const double d = distance(seg.eval(t_star));
                if (d < radius && elapsed >= window_begin && elapsed <= window_end) {
                    return {elapsed, d};
                }
            }
            if (!departed && distance(y) > radius) {
                departed = true;
            }
            t_prev = t;
            y_prev = y;
            rate_prev = rate;
        }
    }
    throw Error(ErrorKind::NotFound, "no return to within " + std::to_string(radius) + " in the requested window");
}

} // namespace pcr3bp
