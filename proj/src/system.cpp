#include "ecodyn/system.hpp"

#include <cmath>
#include <stdexcept>

namespace ecodyn {

bool SystemParams::valid() const {
    const bool finite = std::isfinite(a) && std::isfinite(b) && std::isfinite(c) &&
                        std::isfinite(d) && std::isfinite(e) && std::isfinite(f);
    // b, e, f enter the equilibrium square roots as denominators / radicand
    // factors and must stay positive.
    return finite && b > 0.0 && e > 0.0 && f > 0.0;
}

void SystemParams::validate() const {
    if (!valid())
        throw std::invalid_argument("SystemParams: require finite coefficients and b, e, f > 0");
}

State3 eval_rhs(const SystemParams& p, const State3& x) {
    if (!is_finite(x)) throw std::domain_error("eval_rhs: non-finite state");
    return {p.a * x.x2 + p.b * x.x1 * (p.c - x.x2 * x.x2),
            p.d * (x.x1 + x.x3),
            p.e * x.x1 - p.f * x.x2};
}

Jacobian3 eval_jacobian(const SystemParams& p, const State3& x) {
    if (!is_finite(x)) throw std::domain_error("eval_jacobian: non-finite state");
    Jacobian3 j;
    j.m[0] = {p.b * (p.c - x.x2 * x.x2), p.a - 2.0 * p.b * x.x1 * x.x2, 0.0};
    j.m[1] = {p.d, 0.0, p.d};
    j.m[2] = {p.e, -p.f, 0.0};
    return j;
}

State3 apply(const Jacobian3& j, const State3& v) {
    return {j.m[0][0] * v.x1 + j.m[0][1] * v.x2 + j.m[0][2] * v.x3,
            j.m[1][0] * v.x1 + j.m[1][1] * v.x2 + j.m[1][2] * v.x3,
            j.m[2][0] * v.x1 + j.m[2][1] * v.x2 + j.m[2][2] * v.x3};
}

}  // namespace ecodyn
