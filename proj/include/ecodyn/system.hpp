#pragma once

#include <array>
#include <cstddef>

#include "ecodyn/state.hpp"

namespace ecodyn {

/// Coefficients of the economic system
///
///   x1' = a*x2 + b*x1*(c - x2^2)
///   x2' = d*(x1 + x3)
///   x3' = e*x1 - f*x2
///
/// a is the bifurcation parameter (marginal propensity to savings), b the
/// ratio of capitalized profit, c the potential GDP, d the inverse
/// capital/output ratio, e the capital-inflow/savings ratio, f the
/// debt-refund/output ratio.
struct SystemParams {
    // Defaults are the reference configuration. d carries all six decimals;
    // rounding it changes the dynamics qualitatively.
    double a = 0.05;
    double b = 0.01;
    double c = 1.0;
    double d = 0.031847;
    double e = 0.19;
    double f = 0.25;

    /// Reference coefficient set with a chosen bifurcation parameter.
    static SystemParams preset(double a_value) {
        SystemParams p;
        p.a = a_value;
        return p;
    }

    bool valid() const;

    /// Throws std::invalid_argument when valid() is false.
    void validate() const;

    friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

struct Jacobian3 {
    // row-major entries
    std::array<std::array<double, 3>, 3> m{};

    double operator()(std::size_t i, std::size_t j) const { return m[i][j]; }
    double& operator()(std::size_t i, std::size_t j) { return m[i][j]; }
};

/// Time derivative of the state. Throws std::domain_error on non-finite input.
State3 eval_rhs(const SystemParams& p, const State3& x);

/// Partial derivatives of eval_rhs at x. Rows 2 and 3 are constant in the
/// state; only row 1 depends on (x1, x2).
Jacobian3 eval_jacobian(const SystemParams& p, const State3& x);

/// J * v, used by the variational (tangent) dynamics.
State3 apply(const Jacobian3& j, const State3& v);

}  // namespace ecodyn
