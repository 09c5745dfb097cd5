#include "ecodyn/analysis.hpp"

#include <cmath>

namespace ecodyn {

namespace {

using Vec6 = std::array<double, 6>;

struct JointRhs {
    SystemParams p;
    Vec6 operator()(const Vec6& y) const {
        const State3 x{y[0], y[1], y[2]};
        const State3 v{y[3], y[4], y[5]};
        const State3 fx = eval_rhs(p, x);
        const State3 fv = apply(eval_jacobian(p, x), v);
        return {fx.x1, fx.x2, fx.x3, fv.x1, fv.x2, fv.x3};
    }
};

double vnorm(const Vec6& y) { return std::sqrt(y[3] * y[3] + y[4] * y[4] + y[5] * y[5]); }

AnalysisResult analyze_io(const SystemParams& p, const State3& x0, const AnalyzeConfig& cfg) {
    AnalysisResult res;
    const double t_budget = cfg.integ.t_max;
    const double t_transient = cfg.strip_fraction * t_budget;
    const double tau = cfg.renorm_interval;
    const double d0 = 1.0;

    JointRhs joint{p};
    const double s3 = d0 / std::sqrt(3.0);
    Vec6 y{x0.x1, x0.x2, x0.x3, s3, s3, s3};

    Trajectory traj;
    const std::size_t n_samples =
        static_cast<std::size_t>(std::floor(t_budget / cfg.integ.dense_dt + 1e-9)) + 1;
    traj.t.reserve(n_samples);
    traj.x.reserve(n_samples);
    traj.t.push_back(0.0);
    traj.x.push_back({y[0], y[1], y[2]});

    if (inf_norm(x0) > cfg.integ.escape_radius) {
        res.status = TrajStatus::Escaped;
        res.stop_time = 0.0;
        return res;
    }

    Dopri5Stepper<6, JointRhs> stepper(joint, cfg.integ, y, 0.0);
    double acc = 0.0, acc_start = -1.0;
    std::size_t next = 1;
    double tb = tau;
    bool failed = false;
    while (true) {
        const double target = std::min(tb, t_budget);
        while (stepper.t() < target - 1e-12 * std::max(1.0, target)) {
            if (stepper.advance(target) != Dopri5Stepper<6, JointRhs>::Outcome::Accepted) {
                res.status = TrajStatus::StepFailure;
                res.stop_time = stepper.t();
                failed = true;
                break;
            }
            double nrm = 0.0;
            for (int i = 0; i < 3; ++i) nrm = std::max(nrm, std::fabs(stepper.x()[i]));
            if (nrm > cfg.integ.escape_radius || !std::isfinite(nrm)) {
                res.status = TrajStatus::Escaped;
                res.stop_time = stepper.t();
                failed = true;
                break;
            }
            while (next < n_samples) {
                const double ts = static_cast<double>(next) * cfg.integ.dense_dt;
                if (ts > stepper.t() + 1e-12 * std::max(1.0, stepper.t())) break;
                const Vec6 d = stepper.dense(ts);
                traj.t.push_back(ts);
                traj.x.push_back({d[0], d[1], d[2]});
                ++next;
            }
        }
        if (failed) break;
        const double t = stepper.t();
        const double nv = vnorm(stepper.x());
        if (nv <= 0.0 || !std::isfinite(nv)) {
            res.status = TrajStatus::Escaped;
            res.stop_time = t;
            failed = true;
            break;
        }
        if (t > t_transient) {
            if (acc_start < 0.0) acc_start = std::max(t - tau, t_transient);
            acc += std::log(nv / d0);
            res.mle.series_t.push_back(t);
            res.mle.series_mle.push_back(acc / (t - acc_start));
        }
        stepper.rescale_components(3, 6, d0 / nv);
        if (t >= t_budget - 1e-9) break;
        tb += tau;
    }

    res.mle.mle = res.mle.series_mle.empty() ? 0.0 : res.mle.series_mle.back();
    res.mle.verdict = classify_mle(res.mle.mle, cfg.mle_threshold);
    if (failed) {
        res.mle.escaped = true;
        res.mle.escape_time = res.stop_time;
        return res;
    }
    res.status = TrajStatus::Completed;
    res.stripped = strip_transient(traj, t_transient);
    res.settle_time = res.stripped.t.empty() ? t_transient : res.stripped.t.front();
    res.sig = make_signature(res.stripped, res.mle, cfg.sym_threshold);
    return res;
}

AnalysisResult analyze_fo(const SystemParams& p, double q, const State3& x0,
                          const AnalyzeConfig& cfg) {
    AnalysisResult res;
    FOConfig run = cfg.fo;
    run.q = q;
    run.t_max = cfg.integ.t_max;
    run.escape_radius = cfg.integ.escape_radius;
    const double t_transient = cfg.strip_fraction * run.t_max;
    const double d0 = 1.0;

    JointRhs joint{p};
    const double s3 = d0 / std::sqrt(3.0);
    const Vec6 y0{x0.x1, x0.x2, x0.x3, s3, s3, s3};
    CaputoAbm<6, JointRhs> abm(joint, y0, run);

    const auto m_renorm = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(cfg.renorm_interval / run.h)));

    Trajectory traj;
    traj.t.reserve(abm.total_steps() + 1);
    traj.x.reserve(abm.total_steps() + 1);
    traj.t.push_back(0.0);
    traj.x.push_back({y0[0], y0[1], y0[2]});

    double acc = 0.0, acc_start = -1.0;
    std::size_t steps_since = 0;
    bool failed = false;
    for (;;) {
        const auto out = abm.step();
        if (out == CaputoAbm<6, JointRhs>::Outcome::Escaped) {
            res.status = TrajStatus::Escaped;
            res.stop_time = abm.t();
            failed = true;
            break;
        }
        traj.t.push_back(abm.t());
        traj.x.push_back({abm.current()[0], abm.current()[1], abm.current()[2]});
        ++steps_since;
        const bool finished = out == CaputoAbm<6, JointRhs>::Outcome::Finished;
        if (steps_since == m_renorm || finished) {
            const double t = abm.t();
            const double nv = vnorm(abm.current());
            if (nv <= 0.0 || !std::isfinite(nv)) {
                res.status = TrajStatus::Escaped;
                res.stop_time = t;
                failed = true;
                break;
            }
            if (t > t_transient) {
                if (acc_start < 0.0)
                    acc_start = std::max(t - static_cast<double>(steps_since) * run.h, t_transient);
                acc += std::log(nv / d0);
                res.mle.series_t.push_back(t);
                res.mle.series_mle.push_back(acc / (t - acc_start));
            }
            abm.scale_components(3, 6, d0 / nv);
            steps_since = 0;
        }
        if (finished) break;
    }

    res.mle.mle = res.mle.series_mle.empty() ? 0.0 : res.mle.series_mle.back();
    res.mle.verdict = classify_mle(res.mle.mle, cfg.mle_threshold);
    if (failed) {
        res.mle.escaped = true;
        res.mle.escape_time = res.stop_time;
        return res;
    }
    res.status = TrajStatus::Completed;
    res.stripped = strip_transient(traj, t_transient);
    res.settle_time = res.stripped.t.empty() ? t_transient : res.stripped.t.front();
    res.sig = make_signature(res.stripped, res.mle, cfg.sym_threshold);
    return res;
}

}  // namespace

AnalysisResult analyze_ic(const SystemParams& p, double q, const State3& x0,
                          const AnalyzeConfig& cfg) {
    p.validate();
    cfg.integ.validate();
    if (q < 1.0) return analyze_fo(p, q, x0, cfg);
    return analyze_io(p, x0, cfg);
}

}  // namespace ecodyn
