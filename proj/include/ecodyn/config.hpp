#pragma once

// Flat, diffable key = value run configuration with [section] headers.
// Floats are emitted with 17 significant digits, so emit -> parse is the
// identity; every run writes its resolved config next to its outputs.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ecodyn/analysis.hpp"
#include "ecodyn/lyapunov.hpp"
#include "ecodyn/sweep.hpp"
#include "ecodyn/system.hpp"

namespace ecodyn {

struct RunConfig {
    // [system]
    SystemParams params;      // the preset with a possibly overridden
    double q = 1.0;           // 1 = integer order

    // [integrator] + [fo] + [analysis]
    AnalyzeConfig analysis;

    // [mle]
    MleConfig mle;

    // [run]
    std::vector<State3> ics;

    // [sweep]
    SweepAxis sweep_axis = SweepAxis::ParamA;
    double sweep_lo = 0.0;
    double sweep_hi = 0.2;
    int sweep_points = 400;

    // [basin]
    int lattice_n = 100;
    double lattice_x1_lo = -5.0, lattice_x1_hi = 5.0;
    double lattice_x2_lo = -5.0, lattice_x2_hi = 5.0;
    double sphere_radius = 0.1;
    int sphere_count = 50;

    // [equilibria]
    double a_grid_lo = 0.0, a_grid_hi = 0.2;
    int a_grid_points = 201;

    // [output]
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    int threads = 0;             // 0 = all hardware threads

    void emit(std::ostream& os) const;
    static RunConfig parse(std::istream& is);

    friend bool operator==(const RunConfig&, const RunConfig&);
};

bool operator==(const RunConfig& a, const RunConfig& b);

/// Reads the file; throws std::runtime_error with a line diagnostic on error.
RunConfig load_config(const std::string& path);

/// Writes <dir>/config.resolved.cfg with a tool-version stamp.
void write_resolved_config(const RunConfig& cfg, const std::string& dir);

}  // namespace ecodyn
