#include "ecodyn/lyapunov.hpp"

namespace ecodyn {

Regularity classify_mle(double mle, double threshold) {
    if (!(threshold >= 1e-5 && threshold <= 1e-3))
        throw std::invalid_argument("classify_mle: threshold must lie in [1e-5, 1e-3]");
    return mle > threshold ? Regularity::Chaotic : Regularity::Regular;
}

namespace {

auto econ_rhs(const SystemParams& p) {
    return [p](const std::array<double, 3>& y) { return eval_rhs(p, State3::of(y)).array(); };
}

auto econ_tangent(const SystemParams& p) {
    return [p](const std::array<double, 3>& x, const std::array<double, 3>& v) {
        const Jacobian3 j = eval_jacobian(p, State3::of(x));
        return apply(j, State3::of(v)).array();
    };
}

}  // namespace

MleResult mle_io(const SystemParams& p, const State3& x0, const MleConfig& cfg) {
    p.validate();
    if (cfg.mode == MleMode::TwoTrajectory)
        return mle_two_trajectory(econ_rhs(p), x0.array(), cfg);
    return mle_tangent(econ_rhs(p), econ_tangent(p), x0.array(), cfg);
}

MleResult mle_fo(const SystemParams& p, double q, const State3& x0, const MleConfig& cfg,
                 const FOConfig& fo) {
    p.validate();
    FOConfig run = fo;
    run.q = q;
    return mle_tangent_fo(econ_rhs(p), econ_tangent(p), x0.array(), cfg, run);
}

}  // namespace ecodyn
