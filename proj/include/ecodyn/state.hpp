#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace ecodyn {

/// A point in phase space: x1 savings, x2 GDP, x3 foreign capital inflow.
struct State3 {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;

    std::array<double, 3> array() const { return {x1, x2, x3}; }
    static State3 of(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }

    double operator[](std::size_t i) const { return i == 0 ? x1 : (i == 1 ? x2 : x3); }

    friend bool operator==(const State3&, const State3&) = default;
};

/// Point reflection through the origin. The vector field is odd, so this
/// maps trajectories to trajectories.
inline State3 mirror(const State3& x) { return {-x.x1, -x.x2, -x.x3}; }

inline bool is_finite(const State3& x) {
    return std::isfinite(x.x1) && std::isfinite(x.x2) && std::isfinite(x.x3);
}

inline double inf_norm(const State3& x) {
    return std::max({std::fabs(x.x1), std::fabs(x.x2), std::fabs(x.x3)});
}

inline double distance(const State3& a, const State3& b) {
    const double d1 = a.x1 - b.x1, d2 = a.x2 - b.x2, d3 = a.x3 - b.x3;
    return std::sqrt(d1 * d1 + d2 * d2 + d3 * d3);
}

}  // namespace ecodyn
