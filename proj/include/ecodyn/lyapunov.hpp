#pragma once

// Maximal Lyapunov exponent estimation. Integer order: Benettin-Wolf with
// either the tangent (variational) system or two nearby trajectories,
// renormalized every renorm_interval. Fractional order: the variational
// system of the same Caputo order integrated with the ABM scheme; on each
// renormalization the tangent history is rescaled, which is exact because
// the tangent flow is linear in its initial data.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ecodyn/abm.hpp"
#include "ecodyn/rk45.hpp"
#include "ecodyn/state.hpp"
#include "ecodyn/system.hpp"

namespace ecodyn {

enum class MleMode { TangentLinear, TwoTrajectory };
enum class Regularity { Regular, Chaotic };

struct MleConfig {
    double t_total = 8000.0;
    double t_transient = 1000.0;     // discarded before accumulation
    double renorm_interval = 1.0;    // tau
    double delta0 = 1e-8;            // perturbation scale
    MleMode mode = MleMode::TangentLinear;
    double threshold = 1e-4;         // zero band for the Regular/Chaotic verdict
    IntegratorConfig integ;          // step control for the IO case (t_max ignored)

    void validate() const {
        const bool ok = t_total > 0.0 && t_transient >= 0.0 && t_transient < t_total &&
                        renorm_interval > 0.0 && delta0 > 0.0;
        if (!ok) throw std::invalid_argument("MleConfig: inconsistent settings");
    }
};

struct MleResult {
    double mle = 0.0;
    Regularity verdict = Regularity::Regular;
    std::vector<double> series_t;    // time of each renormalization
    std::vector<double> series_mle;  // running estimate there
    bool escaped = false;            // partial result when true
    double escape_time = 0.0;
};

/// Chaotic iff mle > threshold. The zero band absorbs finite-time noise;
/// thresholds outside [1e-5, 1e-3] are rejected.
Regularity classify_mle(double mle, double threshold = 1e-4);

namespace mle_detail {

inline double tangent_norm(const std::array<double, 6>& y) {
    return std::sqrt(y[3] * y[3] + y[4] * y[4] + y[5] * y[5]);
}

}  // namespace mle_detail

/// Tangent-linear Benettin-Wolf for a generic 3-d flow. StateRhs maps a
/// state to its derivative; TangentRhs maps (state, tangent) to J(state)*v.
template <class StateRhs, class TangentRhs>
MleResult mle_tangent(StateRhs&& f, TangentRhs&& jv, const std::array<double, 3>& x0,
                      const MleConfig& cfg) {
    cfg.validate();
    const double tau = cfg.renorm_interval;
    const double d0 = cfg.delta0;
    auto joint = [&](const std::array<double, 6>& y) {
        const std::array<double, 3> x{y[0], y[1], y[2]};
        const std::array<double, 3> v{y[3], y[4], y[5]};
        const auto fx = f(x);
        const auto fv = jv(x, v);
        return std::array<double, 6>{fx[0], fx[1], fx[2], fv[0], fv[1], fv[2]};
    };

    const double s3 = d0 / std::sqrt(3.0);
    std::array<double, 6> y{x0[0], x0[1], x0[2], s3, s3, s3};

    MleResult res;
    double acc = 0.0;
    double acc_start = -1.0;
    double t = 0.0;
    IntegratorConfig step_cfg = cfg.integ;
    while (t < cfg.t_total - 1e-9) {
        const double t_next = std::min(t + tau, cfg.t_total);
        const auto pr = propagate<6>(joint, y, t, t_next, step_cfg);
        if (pr.status != TrajStatus::Completed) {
            res.escaped = true;
            res.escape_time = pr.t_reached;
            break;
        }
        t = t_next;
        const double nv = mle_detail::tangent_norm(y);
        if (nv <= 0.0 || !std::isfinite(nv)) {
            res.escaped = true;
            res.escape_time = t;
            break;
        }
        if (t > cfg.t_transient) {
            if (acc_start < 0.0) acc_start = t - tau;
            acc += std::log(nv / d0);
            res.series_t.push_back(t);
            res.series_mle.push_back(acc / (t - acc_start));
        }
        const double s = d0 / nv;
        for (int i = 3; i < 6; ++i) y[i] *= s;
    }
    res.mle = res.series_mle.empty() ? 0.0 : res.series_mle.back();
    res.verdict = classify_mle(res.mle, cfg.threshold);
    return res;
}

/// Two-trajectory Benettin-Wolf: a shadow orbit offset by delta0 is
/// re-centered toward the reference after every interval.
template <class StateRhs>
MleResult mle_two_trajectory(StateRhs&& f, const std::array<double, 3>& x0,
                             const MleConfig& cfg) {
    cfg.validate();
    const double tau = cfg.renorm_interval;
    const double d0 = cfg.delta0;
    std::array<double, 3> x = x0;
    const double s3 = d0 / std::sqrt(3.0);
    std::array<double, 3> xs{x0[0] + s3, x0[1] + s3, x0[2] + s3};

    MleResult res;
    double acc = 0.0, acc_start = -1.0, t = 0.0;
    while (t < cfg.t_total - 1e-9) {
        const double t_next = std::min(t + tau, cfg.t_total);
        const auto pr = propagate<3>(f, x, t, t_next, cfg.integ);
        const auto ps = propagate<3>(f, xs, t, t_next, cfg.integ);
        if (pr.status != TrajStatus::Completed || ps.status != TrajStatus::Completed) {
            res.escaped = true;
            res.escape_time = std::min(pr.t_reached, ps.t_reached);
            break;
        }
        t = t_next;
        double d = 0.0;
        for (int i = 0; i < 3; ++i) d += (xs[i] - x[i]) * (xs[i] - x[i]);
        d = std::sqrt(d);
        if (d <= 0.0 || !std::isfinite(d)) {
            res.escaped = true;
            res.escape_time = t;
            break;
        }
        if (t > cfg.t_transient) {
            if (acc_start < 0.0) acc_start = t - tau;
            acc += std::log(d / d0);
            res.series_t.push_back(t);
            res.series_mle.push_back(acc / (t - acc_start));
        }
        const double s = d0 / d;
        for (int i = 0; i < 3; ++i) xs[i] = x[i] + s * (xs[i] - x[i]);
    }
    res.mle = res.series_mle.empty() ? 0.0 : res.series_mle.back();
    res.verdict = classify_mle(res.mle, cfg.threshold);
    return res;
}

/// Fractional-order tangent MLE: the joint (state, tangent) system of order q
/// is integrated with full-memory ABM; renormalization rescales the tangent
/// part of the state, the initial condition, and the stored history.
template <class StateRhs, class TangentRhs>
MleResult mle_tangent_fo(StateRhs&& f, TangentRhs&& jv, const std::array<double, 3>& x0,
                         const MleConfig& cfg, const FOConfig& fo) {
    cfg.validate();
    fo.validate();
    const double d0 = cfg.delta0;
    auto joint = [&](const std::array<double, 6>& y) {
        const std::array<double, 3> x{y[0], y[1], y[2]};
        const std::array<double, 3> v{y[3], y[4], y[5]};
        const auto fx = f(x);
        const auto fv = jv(x, v);
        return std::array<double, 6>{fx[0], fx[1], fx[2], fv[0], fv[1], fv[2]};
    };

    FOConfig run = fo;
    run.t_max = cfg.t_total;
    const double s3 = d0 / std::sqrt(3.0);
    const std::array<double, 6> y0{x0[0], x0[1], x0[2], s3, s3, s3};
    CaputoAbm<6, decltype(joint)> abm(joint, y0, run);

    const auto m_renorm =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(cfg.renorm_interval / run.h)));

    MleResult res;
    double acc = 0.0, acc_start = -1.0;
    std::size_t steps_since = 0;
    for (;;) {
        const auto out = abm.step();
        if (out == CaputoAbm<6, decltype(joint)>::Outcome::Escaped) {
            res.escaped = true;
            res.escape_time = abm.t();
            break;
        }
        ++steps_since;
        const bool finished = out == CaputoAbm<6, decltype(joint)>::Outcome::Finished;
        if (steps_since == m_renorm || finished) {
            const double t = abm.t();
            const double nv = mle_detail::tangent_norm(abm.current());
            if (nv <= 0.0 || !std::isfinite(nv)) {
                res.escaped = true;
                res.escape_time = t;
                break;
            }
            if (t > cfg.t_transient) {
                if (acc_start < 0.0) acc_start = t - static_cast<double>(steps_since) * run.h;
                acc += std::log(nv / d0);
                res.series_t.push_back(t);
                res.series_mle.push_back(acc / (t - acc_start));
            }
            abm.scale_components(3, 6, d0 / nv);
            steps_since = 0;
        }
        if (finished) break;
    }
    res.mle = res.series_mle.empty() ? 0.0 : res.series_mle.back();
    res.verdict = classify_mle(res.mle, cfg.threshold);
    return res;
}

/// MLE of the economic system, integer order.
MleResult mle_io(const SystemParams& p, const State3& x0, const MleConfig& cfg);

/// MLE of the fractional-order economic system of order q.
MleResult mle_fo(const SystemParams& p, double q, const State3& x0, const MleConfig& cfg,
                 const FOConfig& fo);

}  // namespace ecodyn
