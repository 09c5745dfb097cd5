#include "ecodyn/rk45.hpp"

namespace ecodyn {

Trajectory integrate(const SystemParams& p, const State3& x0, const IntegratorConfig& cfg) {
    p.validate();
    auto rhs = [&p](const std::array<double, 3>& y) {
        return eval_rhs(p, State3::of(y)).array();
    };
    return integrate_system<3>(rhs, x0.array(), cfg);
}

std::pair<Trajectory, Trajectory> integrate_pair(const SystemParams& p, const State3& x0,
                                                 const IntegratorConfig& cfg) {
    return {integrate(p, x0, cfg), integrate(p, mirror(x0), cfg)};
}

}  // namespace ecodyn
