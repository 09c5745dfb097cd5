#pragma once

// Bifurcation diagrams over the parameter a (integer order) or over the
// fractional order q, with a fixed set of initial conditions per axis value,
// and coexistence-window detection. Diagrams are conditioned on their IC
// set: basins move as the parameter varies, so no diagram is exhaustive.

#include <iosfwd>
#include <vector>

#include "ecodyn/analysis.hpp"
#include "ecodyn/attractor.hpp"

namespace ecodyn {

enum class SweepAxis { ParamA, OrderQ };

struct SweepSpec {
    SweepAxis axis = SweepAxis::ParamA;
    double lo = 0.0;
    double hi = 0.2;
    int points = 400;
    double fixed_q = 1.0;   // order used by ParamA sweeps
    double fixed_a = 0.05;  // parameter used by OrderQ sweeps
    std::vector<State3> ics = default_ics();
    AnalyzeConfig cfg;

    void validate() const;
    double value(int k) const;

    /// The four reference seeds (+-1,+-1,+-1) and (+-1,+-1,-+1).
    static std::vector<State3> default_ics();
};

struct DiagramCell {
    double axis_value = 0.0;
    int ic_index = 0;
    TrajStatus status = TrajStatus::Completed;
    std::vector<double> peaks;      // raw x1 peaks (sign as integrated)
    AttractorSignature sig;         // raw signature
    AttractorSignature canonical;   // flipped to mean(x1) >= 0 for comparisons
    double mle = 0.0;
    Regularity regularity = Regularity::Regular;
};

struct BifurcationDiagram {
    SweepSpec spec;
    SystemParams base;
    std::vector<DiagramCell> cells;  // points * ics, cell (k, i) at k*ics+i

    const DiagramCell& cell(int k, int i) const {
        return cells[static_cast<std::size_t>(k) * spec.ics.size() + i];
    }
};

BifurcationDiagram sweep_param(const SystemParams& base, const SweepSpec& spec, int threads = 0);
BifurcationDiagram sweep_order(const SystemParams& base, const SweepSpec& spec, int threads = 0);

struct CoexistenceWindow {
    double lo = 0.0, hi = 0.0;
    int first_index = 0, last_index = 0;
};

/// Axis intervals where at least two ICs settle onto attractors that are
/// distinct even after mirroring to canonical orientation (a symmetric pair
/// alone is one attractor class, not coexistence of families). Consecutive
/// flagged grid points merge into one window.
std::vector<CoexistenceWindow> detect_coexistence(const BifurcationDiagram& diagram);

/// Count of distinct canonical attractor classes among completed cells.
int coexistence_classes(const BifurcationDiagram& diagram, int k);

/// Columns axis_value,ic_index,peak_value,regularity,mle (one row per peak).
void write_diagram_csv(const BifurcationDiagram& diagram, std::ostream& os);

void write_window_report(const std::vector<CoexistenceWindow>& windows,
                         const BifurcationDiagram& diagram, std::ostream& os);

}  // namespace ecodyn
