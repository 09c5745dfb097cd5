#include "ecodyn/csvio.hpp"

#include <cstdio>
#include <ostream>

namespace ecodyn {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& os) {
    os << "t,x1,x2,x3\n";
    for (std::size_t i = 0; i < traj.size(); ++i)
        os << fmt17(traj.t[i]) << ',' << fmt17(traj.x[i][0]) << ',' << fmt17(traj.x[i][1])
           << ',' << fmt17(traj.x[i][2]) << '\n';
    switch (traj.status) {
        case TrajStatus::Completed: os << "# status=Completed\n"; break;
        case TrajStatus::Escaped:
            os << "# status=Escaped t=" << fmt17(traj.stop_time) << '\n';
            break;
        case TrajStatus::StepFailure:
            os << "# status=StepFailure t=" << fmt17(traj.stop_time) << '\n';
            break;
    }
}

void write_mle_series_csv(const MleResult& res, std::ostream& os) {
    os << "t,running_mle\n";
    for (std::size_t i = 0; i < res.series_t.size(); ++i)
        os << fmt17(res.series_t[i]) << ',' << fmt17(res.series_mle[i]) << '\n';
}

}  // namespace ecodyn
