#include "ecodyn/sweep.hpp"

#include <omp.h>

#include <ostream>
#include <stdexcept>

#include "ecodyn/csvio.hpp"

namespace ecodyn {

std::vector<State3> SweepSpec::default_ics() {
    return {{1.0, 1.0, 1.0}, {-1.0, -1.0, -1.0}, {1.0, 1.0, -1.0}, {-1.0, -1.0, 1.0}};
}

void SweepSpec::validate() const {
    const bool ok = points >= 1 && hi >= lo && !ics.empty();
    if (!ok) throw std::invalid_argument("SweepSpec: inconsistent settings");
}

double SweepSpec::value(int k) const {
    if (points == 1) return lo;
    return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
}

namespace {

DiagramCell analyze_cell(const SystemParams& p, double q, const State3& ic,
                         const AnalyzeConfig& cfg, double axis_value, int ic_index) {
    DiagramCell cell;
    cell.axis_value = axis_value;
    cell.ic_index = ic_index;
    AnalysisResult res;
    try {
        res = analyze_ic(p, q, ic, cfg);
    } catch (const std::exception&) {
        cell.status = TrajStatus::StepFailure;
        return cell;
    }
    cell.status = res.status;
    cell.mle = res.mle.mle;
    cell.regularity = res.mle.verdict;
    if (res.status != TrajStatus::Completed) return cell;
    cell.sig = res.sig;
    cell.peaks = res.sig.peaks;
    if (res.sig.symmetry_sign < 0) {
        const Trajectory mirrored = mirror_trajectory(res.stripped);
        cell.canonical = make_signature(mirrored, res.mle, cfg.sym_threshold);
    } else {
        cell.canonical = res.sig;
    }
    return cell;
}

BifurcationDiagram run_sweep(const SystemParams& base, const SweepSpec& spec, int threads) {
    spec.validate();
    BifurcationDiagram diagram;
    diagram.spec = spec;
    diagram.base = base;
    const std::size_t n_ic = spec.ics.size();
    const std::size_t total = static_cast<std::size_t>(spec.points) * n_ic;
    diagram.cells.resize(total);

    const int nw = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nw)
    for (long long idx = 0; idx < static_cast<long long>(total); ++idx) {
        const int k = static_cast<int>(idx / static_cast<long long>(n_ic));
        const int i = static_cast<int>(idx % static_cast<long long>(n_ic));
        const double v = spec.value(k);
        SystemParams p = base;
        double q = 1.0;
        if (spec.axis == SweepAxis::ParamA) {
            p.a = v;
            q = spec.fixed_q;
        } else {
            p.a = spec.fixed_a;
            q = v;
        }
        diagram.cells[idx] = analyze_cell(p, q, spec.ics[i], spec.cfg, v, i);
    }
    return diagram;
}

}  // namespace

BifurcationDiagram sweep_param(const SystemParams& base, const SweepSpec& spec, int threads) {
    if (spec.axis != SweepAxis::ParamA)
        throw std::invalid_argument("sweep_param: spec.axis must be ParamA");
    return run_sweep(base, spec, threads);
}

BifurcationDiagram sweep_order(const SystemParams& base, const SweepSpec& spec, int threads) {
    if (spec.axis != SweepAxis::OrderQ)
        throw std::invalid_argument("sweep_order: spec.axis must be OrderQ");
    if (!(spec.lo > 0.0 && spec.hi <= 1.0))
        throw std::invalid_argument("sweep_order: q range must lie in (0, 1]");
    return run_sweep(base, spec, threads);
}

int coexistence_classes(const BifurcationDiagram& diagram, int k) {
    const MatchTolerances match_tol;  // one definition of "same attractor" everywhere
    std::vector<const AttractorSignature*> reps;
    for (std::size_t i = 0; i < diagram.spec.ics.size(); ++i) {
        const DiagramCell& c = diagram.cell(k, static_cast<int>(i));
        if (c.status != TrajStatus::Completed) continue;
        bool found = false;
        for (const auto* r : reps)
            if (same_attractor(c.canonical, *r, match_tol)) {
                found = true;
                break;
            }
        if (!found) reps.push_back(&c.canonical);
    }
    return static_cast<int>(reps.size());
}

std::vector<CoexistenceWindow> detect_coexistence(const BifurcationDiagram& diagram) {
    std::vector<CoexistenceWindow> windows;
    if (diagram.spec.ics.size() < 2) return windows;
    bool open = false;
    CoexistenceWindow w;
    for (int k = 0; k < diagram.spec.points; ++k) {
        const bool coexisting = coexistence_classes(diagram, k) >= 2;
        if (coexisting && !open) {
            open = true;
            w.first_index = k;
            w.lo = diagram.spec.value(k);
        }
        if (coexisting) {
            w.last_index = k;
            w.hi = diagram.spec.value(k);
        }
        if (!coexisting && open) {
            windows.push_back(w);
            open = false;
        }
    }
    if (open) windows.push_back(w);
    return windows;
}

void write_diagram_csv(const BifurcationDiagram& diagram, std::ostream& os) {
    os << "axis_value,ic_index,peak_value,regularity,mle\n";
    for (const auto& c : diagram.cells) {
        if (c.status != TrajStatus::Completed) continue;
        const char* reg = c.regularity == Regularity::Chaotic ? "Chaotic" : "Regular";
        for (double p : c.peaks)
            os << fmt17(c.axis_value) << ',' << c.ic_index << ',' << fmt17(p) << ',' << reg
               << ',' << fmt17(c.mle) << '\n';
    }
}

void write_window_report(const std::vector<CoexistenceWindow>& windows,
                         const BifurcationDiagram& diagram, std::ostream& os) {
    const char* axis = diagram.spec.axis == SweepAxis::ParamA ? "a" : "q";
    os << "coexistence windows over " << axis << " in [" << fmt17(diagram.spec.lo) << ", "
       << fmt17(diagram.spec.hi) << "], " << diagram.spec.points << " grid points, "
       << diagram.spec.ics.size() << " initial conditions\n";
    os << "diagram is conditioned on its IC set; basins move with the parameter\n";
    if (windows.empty()) {
        os << "  none detected\n";
        return;
    }
    for (const auto& w : windows)
        os << "  [" << fmt17(w.lo) << ", " << fmt17(w.hi) << "]  (grid " << w.first_index
           << ".." << w.last_index << ")\n";
}

}  // namespace ecodyn
