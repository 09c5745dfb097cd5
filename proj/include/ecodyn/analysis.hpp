#pragma once

// Per-initial-condition pipeline shared by basin scans, sweeps, and the CLI:
// one joint integration of state plus tangent vector yields the dense
// trajectory, the finite-time MLE, and the attractor signature.

#include <optional>

#include "ecodyn/abm.hpp"
#include "ecodyn/attractor.hpp"
#include "ecodyn/lyapunov.hpp"
#include "ecodyn/rk45.hpp"
#include "ecodyn/system.hpp"

namespace ecodyn {

struct AnalyzeConfig {
    IntegratorConfig integ;          // t_max is the per-run budget
    FOConfig fo;                     // step settings when q < 1 (t_max taken from integ)
    double strip_fraction = 0.4;     // transient discard, also the MLE transient
    double renorm_interval = 1.0;
    double mle_threshold = 1e-4;     // use ~1e-3 for fractional runs
    double sym_threshold = 1e-3;
};

struct AnalysisResult {
    TrajStatus status = TrajStatus::Completed;
    double stop_time = 0.0;          // when status != Completed
    Trajectory stripped;             // post-transient state samples
    MleResult mle;
    AttractorSignature sig;          // valid when status == Completed
    double settle_time = 0.0;        // start of the retained window
};

/// Integrate (q = 1: adaptive RK; q < 1: Caputo ABM), estimate the MLE from
/// the tangent vector, strip the transient, and build the signature.
AnalysisResult analyze_ic(const SystemParams& p, double q, const State3& x0,
                          const AnalyzeConfig& cfg);

}  // namespace ecodyn
