#pragma once

// Adaptive embedded Dormand-Prince 5(4) integrator with continuous (dense)
// output, plus a fixed-step mode. The core is generic over the system
// dimension so the same stepper drives the 3-d flow, scalar test problems,
// and the 6-d variational system used for Lyapunov exponents.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ecodyn/state.hpp"
#include "ecodyn/system.hpp"

namespace ecodyn {

enum class StepMode { Adaptive, Fixed };

struct IntegratorConfig {
    double t_max = 5000.0;
    double rel_tol = 1e-3;
    double abs_tol = 1e-6;
    double h_init = 1e-2;
    double h_min = 1e-12;
    double h_max = 10.0;
    double escape_radius = 1e3;
    double dense_dt = 0.1;
    StepMode mode = StepMode::Adaptive;

    void validate() const {
        const bool ok = t_max > 0.0 && rel_tol > 0.0 && abs_tol > 0.0 && h_min > 0.0 &&
                        h_min <= h_init && h_init <= h_max && escape_radius > 0.0 &&
                        dense_dt > 0.0;
        if (!ok) throw std::invalid_argument("IntegratorConfig: inconsistent settings");
    }
};

enum class TrajStatus { Completed, Escaped, StepFailure };

template <std::size_t N>
struct TrajectoryN {
    std::vector<double> t;                   // uniform grid, dense_dt apart
    std::vector<std::array<double, N>> x;    // one state per time
    TrajStatus status = TrajStatus::Completed;
    double stop_time = 0.0;                  // set when status != Completed

    std::size_t size() const { return t.size(); }
    bool completed() const { return status == TrajStatus::Completed; }
};

using Trajectory = TrajectoryN<3>;

inline State3 state_at(const Trajectory& traj, std::size_t i) {
    return State3::of(traj.x[i]);
}

namespace rk_detail {

template <std::size_t N>
double scaled_err_norm(const std::array<double, N>& err, const std::array<double, N>& y0,
                       const std::array<double, N>& y1, double atol, double rtol) {
    double sum = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double sc = atol + rtol * std::max(std::fabs(y0[i]), std::fabs(y1[i]));
        const double r = err[i] / sc;
        sum += r * r;
    }
    return std::sqrt(sum / static_cast<double>(N));
}

template <std::size_t N>
double inf_norm(const std::array<double, N>& v) {
    double m = 0.0;
    for (double c : v) m = std::max(m, std::fabs(c));
    return m;
}

template <std::size_t N>
bool all_finite(const std::array<double, N>& v) {
    for (double c : v)
        if (!std::isfinite(c)) return false;
    return true;
}

}  // namespace rk_detail

/// One Dormand-Prince step attempt plus the quartic interpolant over the
/// last accepted step. RHS signature: array<double,N> f(const array<double,N>&).
template <std::size_t N, class RHS>
class Dopri5Stepper {
  public:
    using Vec = std::array<double, N>;

    Dopri5Stepper(RHS& f, const IntegratorConfig& cfg, const Vec& x0, double t0)
        : f_(f), cfg_(cfg), t_(t0), x_(x0) {
        h_ = std::clamp(cfg.mode == StepMode::Fixed ? cfg.h_init : cfg.h_init, cfg.h_min,
                        cfg.h_max);
        k1_ = f_(x_);
        first_ = true;
    }

    enum class Outcome { Accepted, StepFailure };

    double t() const { return t_; }
    const Vec& x() const { return x_; }
    double step_start() const { return t_prev_; }
    double step_size() const { return h_used_; }

    /// Advance by one accepted step, not landing past t_end.
    Outcome advance(double t_end) {
        double h = h_;
        if (cfg_.mode == StepMode::Fixed) h = cfg_.h_init;
        int rejected = 0;
        for (;;) {
            h = std::min(h, t_end - t_);
            if (h <= 0.0) h = cfg_.h_min;
            Vec y1, err;
            stages(h, y1, err);
            if (cfg_.mode == StepMode::Fixed) {
                accept(h, y1);
                return Outcome::Accepted;
            }
            double err_norm = rk_detail::all_finite(y1) && rk_detail::all_finite(err)
                                  ? rk_detail::scaled_err_norm(err, x_, y1, cfg_.abs_tol,
                                                               cfg_.rel_tol)
                                  : std::numeric_limits<double>::infinity();
            if (err_norm <= 1.0) {
                accept(h, y1);
                last_err_ = err_norm;
                double fac = std::isfinite(err_norm) && err_norm > 0.0
                                 ? 0.9 * std::pow(err_norm, -0.2)
                                 : 5.0;
                fac = std::clamp(fac, 0.2, rejected > 0 ? 1.0 : 5.0);
                h_ = std::clamp(h * fac, cfg_.h_min, cfg_.h_max);
                return Outcome::Accepted;
            }
            ++rejected;
            double fac = std::isfinite(err_norm) ? std::max(0.1, 0.9 * std::pow(err_norm, -0.2))
                                                 : 0.1;
            h *= fac;
            if (h < cfg_.h_min) return Outcome::StepFailure;
        }
    }

    /// Interpolate within the last accepted step; ts must be in [step_start, t].
    Vec dense(double ts) const {
        const double theta = (ts - t_prev_) / h_used_;
        const double th1 = 1.0 - theta;
        Vec out;
        for (std::size_t i = 0; i < N; ++i)
            out[i] = rcont1_[i] +
                     theta * (rcont2_[i] +
                              th1 * (rcont3_[i] + theta * (rcont4_[i] + th1 * rcont5_[i])));
        return out;
    }

    double last_error_estimate() const { return last_err_; }

    /// Multiply components [begin, end) of the current state and the saved
    /// FSAL derivative by s. Exact only when those components evolve
    /// linearly (the tangent part of a variational system).
    void rescale_components(std::size_t begin, std::size_t end, double s) {
        for (std::size_t i = begin; i < end; ++i) {
            x_[i] *= s;
            k1_[i] *= s;
        }
    }

  private:
    void stages(double h, Vec& y1, Vec& err) {
        auto lin = [&](std::initializer_list<std::pair<double, const Vec*>> terms) {
            Vec y = x_;
            for (auto& [c, k] : terms)
                for (std::size_t i = 0; i < N; ++i) y[i] += h * c * (*k)[i];
            return y;
        };
        k2_ = f_(lin({{1.0 / 5, &k1_}}));
        k3_ = f_(lin({{3.0 / 40, &k1_}, {9.0 / 40, &k2_}}));
        k4_ = f_(lin({{44.0 / 45, &k1_}, {-56.0 / 15, &k2_}, {32.0 / 9, &k3_}}));
        k5_ = f_(lin({{19372.0 / 6561, &k1_},
                      {-25360.0 / 2187, &k2_},
                      {64448.0 / 6561, &k3_},
                      {-212.0 / 729, &k4_}}));
        k6_ = f_(lin({{9017.0 / 3168, &k1_},
                      {-355.0 / 33, &k2_},
                      {46732.0 / 5247, &k3_},
                      {49.0 / 176, &k4_},
                      {-5103.0 / 18656, &k5_}}));
        y1 = lin({{35.0 / 384, &k1_},
                  {500.0 / 1113, &k3_},
                  {125.0 / 192, &k4_},
                  {-2187.0 / 6784, &k5_},
                  {11.0 / 84, &k6_}});
        k7_ = f_(y1);
        for (std::size_t i = 0; i < N; ++i)
            err[i] = h * (71.0 / 57600 * k1_[i] - 71.0 / 16695 * k3_[i] + 71.0 / 1920 * k4_[i] -
                          17253.0 / 339200 * k5_[i] + 22.0 / 525 * k6_[i] - 1.0 / 40 * k7_[i]);
    }

    void accept(double h, const Vec& y1) {
        // Continuous extension coefficients (quartic in theta).
        constexpr double d1 = -12715105075.0 / 11282082432.0;
        constexpr double d3 = 87487479700.0 / 32700410799.0;
        constexpr double d4 = -10690763975.0 / 1880347072.0;
        constexpr double d5 = 701980252875.0 / 199316789632.0;
        constexpr double d6 = -1453857185.0 / 822651844.0;
        constexpr double d7 = 69997945.0 / 29380423.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double ydiff = y1[i] - x_[i];
            const double bspl = h * k1_[i] - ydiff;
            rcont1_[i] = x_[i];
            rcont2_[i] = ydiff;
            rcont3_[i] = bspl;
            rcont4_[i] = ydiff - h * k7_[i] - bspl;
            rcont5_[i] = h * (d1 * k1_[i] + d3 * k3_[i] + d4 * k4_[i] + d5 * k5_[i] +
                              d6 * k6_[i] + d7 * k7_[i]);
        }
        t_prev_ = t_;
        h_used_ = h;
        t_ += h;
        x_ = y1;
        k1_ = k7_;  // FSAL
        first_ = false;
    }

    RHS& f_;
    IntegratorConfig cfg_;
    double t_, h_ = 0.0;
    double t_prev_ = 0.0, h_used_ = 0.0, last_err_ = 0.0;
    Vec x_{};
    Vec k1_{}, k2_{}, k3_{}, k4_{}, k5_{}, k6_{}, k7_{};
    Vec rcont1_{}, rcont2_{}, rcont3_{}, rcont4_{}, rcont5_{};
    bool first_ = true;
};

/// Integrate a generic autonomous system over [t0, t0+cfg.t_max], recording
/// states on the uniform dense_dt grid via the continuous extension.
template <std::size_t N, class RHS>
TrajectoryN<N> integrate_system(RHS&& f, const std::array<double, N>& x0,
                                const IntegratorConfig& cfg, double t0 = 0.0) {
    cfg.validate();
    TrajectoryN<N> traj;
    const double t_end = t0 + cfg.t_max;
    const std::size_t n_samples = static_cast<std::size_t>(std::floor(cfg.t_max / cfg.dense_dt + 1e-9)) + 1;
    traj.t.reserve(n_samples);
    traj.x.reserve(n_samples);
    traj.t.push_back(t0);
    traj.x.push_back(x0);

    if (rk_detail::inf_norm(x0) > cfg.escape_radius) {
        traj.status = TrajStatus::Escaped;
        traj.stop_time = t0;
        return traj;
    }

    Dopri5Stepper<N, RHS> stepper(f, cfg, x0, t0);
    std::size_t next = 1;
    while (stepper.t() < t_end - 1e-12 * std::max(1.0, t_end)) {
        if (stepper.advance(t_end) != Dopri5Stepper<N, RHS>::Outcome::Accepted) {
            traj.status = TrajStatus::StepFailure;
            traj.stop_time = stepper.t();
            return traj;
        }
        if (rk_detail::inf_norm(stepper.x()) > cfg.escape_radius ||
            !rk_detail::all_finite(stepper.x())) {
            traj.status = TrajStatus::Escaped;
            traj.stop_time = stepper.t();
            return traj;
        }
        while (next < n_samples) {
            const double ts = t0 + static_cast<double>(next) * cfg.dense_dt;
            if (ts > stepper.t() + 1e-12 * std::max(1.0, std::fabs(stepper.t()))) break;
            traj.t.push_back(ts);
            traj.x.push_back(stepper.dense(ts));
            ++next;
        }
    }
    return traj;
}

struct PropagateResult {
    TrajStatus status = TrajStatus::Completed;
    double t_reached = 0.0;
};

/// Advance a state in place from t0 to t1 without recording samples.
template <std::size_t N, class RHS>
PropagateResult propagate(RHS&& f, std::array<double, N>& x, double t0, double t1,
                          const IntegratorConfig& cfg) {
    Dopri5Stepper<N, RHS> stepper(f, cfg, x, t0);
    while (stepper.t() < t1 - 1e-12 * std::max(1.0, t1)) {
        if (stepper.advance(t1) != Dopri5Stepper<N, RHS>::Outcome::Accepted)
            return {TrajStatus::StepFailure, stepper.t()};
        if (rk_detail::inf_norm(stepper.x()) > cfg.escape_radius ||
            !rk_detail::all_finite(stepper.x()))
            return {TrajStatus::Escaped, stepper.t()};
    }
    x = stepper.x();
    return {TrajStatus::Completed, stepper.t()};
}

/// Solution of the economic system from x0 over [0, t_max].
Trajectory integrate(const SystemParams& p, const State3& x0, const IntegratorConfig& cfg);

/// Integrates x0 and mirror(x0); by oddness the second trajectory is the
/// exact mirror of the first.
std::pair<Trajectory, Trajectory> integrate_pair(const SystemParams& p, const State3& x0,
                                                 const IntegratorConfig& cfg);

}  // namespace ecodyn
