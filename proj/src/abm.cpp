#include "ecodyn/abm.hpp"

namespace ecodyn {

AbmWeights abm_weights(double q, double h, std::size_t n) {
    if (!(q > 0.0 && q <= 1.0 && h > 0.0))
        throw std::invalid_argument("abm_weights: require q in (0,1] and h > 0");
    const abm_detail::PowerTables tables(q, n + 2);
    const double hq = std::pow(h, q);
    AbmWeights w;
    w.pred_scale = hq / std::tgamma(q + 1.0);
    w.corr_scale = hq / std::tgamma(q + 2.0);
    const double bfac = hq / q;
    const double afac = hq / (q * (q + 1.0));
    w.predictor.resize(n + 1);
    w.corrector.resize(n + 2);
    for (std::size_t j = 0; j <= n; ++j) {
        w.predictor[j] = bfac * tables.pred_kernel(n, j);
        w.corrector[j] = afac * tables.corr_kernel(n, j);
    }
    w.corrector[n + 1] = afac;
    return w;
}

Trajectory integrate_fo(const SystemParams& p, const State3& x0, const FOConfig& cfg) {
    p.validate();
    auto rhs = [&p](const std::array<double, 3>& y) {
        return eval_rhs(p, State3::of(y)).array();
    };
    return integrate_caputo<3>(rhs, x0.array(), cfg);
}

}  // namespace ecodyn
