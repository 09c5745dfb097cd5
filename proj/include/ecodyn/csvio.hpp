#pragma once

#include <iosfwd>
#include <string>

#include "ecodyn/lyapunov.hpp"
#include "ecodyn/rk45.hpp"

namespace ecodyn {

/// 17 significant digits: doubles survive the text round trip.
std::string fmt17(double v);

/// Columns t,x1,x2,x3 plus a trailing status comment line.
void write_trajectory_csv(const Trajectory& traj, std::ostream& os);

/// Columns t,running_mle (the convergence series).
void write_mle_series_csv(const MleResult& res, std::ostream& os);

}  // namespace ecodyn
