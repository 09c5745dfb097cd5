#include "ecodyn/table1.hpp"

#include <stdexcept>

#include "ecodyn/rng.hpp"
#include "ecodyn/stability.hpp"

namespace ecodyn {

namespace {

using F = AttractorFamily;

Table1Seed ref_seed(State3 ic, F fam, int index) { return {ic, fam, index, index == 1}; }
Table1Seed chk_seed(State3 ic, F fam, int index) { return {ic, fam, index, false}; }

std::vector<Table1Case> make_table1() {
    std::vector<Table1Case> rows;

    Table1Case c052{"a=0.052", 0.052, 1.0, 1e-3, {}};
    c052.seeds = {
        ref_seed({0.0720, 0.0, 0.0}, F::H, 1),
        chk_seed({-0.0720, 0.0, 0.0}, F::H, 2),
        chk_seed({1.0, 1.0, 1.0}, F::H, 1),
        chk_seed({-1.0, -1.0, -1.0}, F::H, 2),
        ref_seed({0.250, 0.0, 0.0}, F::SECH, 1),
        chk_seed({-0.250, 0.0, 0.0}, F::SECH, 2),
        chk_seed({1.0, 1.0, -1.0}, F::SECH, 1),
        chk_seed({-1.0, -1.0, 1.0}, F::SECH, 2),
        // the alternative SECH seeds; their pairing is not pinned (the source
        // sign conventions disagree), so only the family is checked
        chk_seed({0.014, 0.0, 0.0}, F::SECH, 0),
        chk_seed({-0.014, 0.0, 0.0}, F::SECH, 0),
    };
    rows.push_back(c052);

    Table1Case c050{"a=0.05", 0.05, 1.0, 1e-3, {}};
    c050.seeds = {
        ref_seed({0.150, 0.0, 0.0}, F::SEC, 1),
        chk_seed({-0.150, 0.0, 0.0}, F::SEC, 2),
        chk_seed({1.0, 1.0, 1.0}, F::SEC, 1),
        chk_seed({-1.0, -1.0, -1.0}, F::SEC, 2),
        ref_seed({0.350, 0.0, 0.0}, F::SECH, 1),
        chk_seed({-0.350, 0.0, 0.0}, F::SECH, 2),
        chk_seed({1.0, 1.0, -1.0}, F::SECH, 1),
        chk_seed({-1.0, -1.0, 1.0}, F::SECH, 2),
    };
    rows.push_back(c050);

    Table1Case c0509{"a=0.0509", 0.0509, 1.0, 1e-8, {}};
    c0509.seeds = {
        ref_seed({0.150, 0.0, 0.0}, F::SEC, 1),
        chk_seed({-0.150, 0.0, 0.0}, F::SEC, 2),
        chk_seed({1.0, 1.0, 1.0}, F::SEC, 1),
        chk_seed({-1.0, -1.0, -1.0}, F::SEC, 2),
        ref_seed({0.280, 0.0, 0.0}, F::HC, 1),
        chk_seed({-0.280, 0.0, 0.0}, F::HC, 2),
        chk_seed({1.0, 1.0, -1.0}, F::HC, 1),
        chk_seed({-1.0, -1.0, 1.0}, F::HC, 2),
    };
    rows.push_back(c0509);

    Table1Case cfo{"fo-a=0.05", 0.05, 0.9995, 1e-3, {}};
    cfo.seeds = {
        ref_seed({1.0, 1.0, 1.0}, F::SEC, 1),
        chk_seed({-1.0, -1.0, -1.0}, F::SEC, 2),
        ref_seed({1.0, 1.0, -1.0}, F::H, 1),
        chk_seed({-1.0, -1.0, 1.0}, F::H, 2),
    };
    rows.push_back(cfo);

    return rows;
}

}  // namespace

const std::vector<Table1Case>& table1() {
    static const std::vector<Table1Case> rows = make_table1();
    return rows;
}

const Table1Case& table1_case(const std::string& name) {
    for (const auto& c : table1())
        if (c.name == name) return c;
    throw std::invalid_argument("table1_case: unknown case " + name);
}

AttractorRegistry build_registry(const Table1Case& c, const AnalyzeConfig& cfg) {
    const SystemParams p = SystemParams::preset(c.a);
    AttractorRegistry reg;
    for (const auto& seed : c.seeds) {
        if (!seed.reference) continue;
        const AnalysisResult res = analyze_ic(p, c.q, seed.ic, cfg);
        if (res.status != TrajStatus::Completed)
            throw std::runtime_error("build_registry: reference run for " + c.name +
                                     " did not complete");
        const AttractorSignature sig1 = res.sig;
        const Trajectory mirrored = mirror_trajectory(res.stripped);
        const AttractorSignature sig2 = make_signature(mirrored, res.mle, cfg.sym_threshold);
        reg.add({seed.family, 1}, sig1);
        if (!same_attractor(sig1, sig2, reg.tolerances()))
            reg.add({seed.family, 2}, sig2);
    }
    return reg;
}

CasePipelineConfig default_pipeline_config(const Table1Case& c) {
    CasePipelineConfig cfg;
    cfg.reference_cfg.integ.rel_tol = c.rel_tol;
    cfg.reference_cfg.integ.t_max = c.q < 1.0 ? 1500.0 : 5000.0;
    cfg.reference_cfg.strip_fraction = 0.5;
    cfg.reference_cfg.mle_threshold = c.q < 1.0 ? 1e-3 : 1e-4;
    cfg.basin_cfg = cfg.reference_cfg;
    cfg.basin_cfg.integ.t_max = 2000.0;
    cfg.basin_cfg.strip_fraction = 0.4;
    cfg.with_lattices = c.q >= 1.0;
    return cfg;
}

CaseResult run_case(const Table1Case& c, const CasePipelineConfig& cfg) {
    CaseResult out;
    out.table_case = c;
    out.params = SystemParams::preset(c.a);
    out.registry = build_registry(c, cfg.reference_cfg);

    for (const auto& seed : c.seeds) {
        SeedRun run;
        run.seed = seed;
        const AnalysisResult res = analyze_ic(out.params, c.q, seed.ic, cfg.reference_cfg);
        run.status = res.status;
        run.mle = res.mle.mle;
        run.regularity = res.mle.verdict;
        if (res.status == TrajStatus::Completed) {
            const MatchResult m = match(res.sig, out.registry);
            if (m.status == MatchStatus::Matched) {
                run.matched = m.label;
                run.label_consistent = m.label.family == seed.family &&
                                       (seed.index == 0 || m.label.index == seed.index);
            }
        }
        out.seed_runs.push_back(run);
    }

    if (c.q < 1.0) {
        // Sphere and lattice scans with the full-memory scheme are far past
        // desk scale; the fractional case carries the published labels only.
        out.verdict.note = "not computed for the fractional case";
        return out;
    }

    const Equilibria eq = equilibria(out.params);
    const std::vector<std::pair<std::string, State3>> centers = {
        {"X0", eq.points[0]}, {"X1", eq.points[1]}, {"X2", eq.points[2]}};
    std::uint64_t k = 0;
    for (const auto& [name, center] : centers) {
        SphereSpec sphere;
        sphere.center = center;
        sphere.radius = cfg.sphere_radius;
        sphere.count = cfg.sphere_count;
        sphere.seed = SplitMix64::stream(cfg.seed, k++).next();
        out.spheres[name] =
            scan_sphere(out.params, c.q, sphere, out.registry, cfg.basin_cfg, cfg.threads);
    }
    out.verdict = hiddenness(out.registry, {"X0", "X1", "X2"}, out.spheres);

    if (cfg.with_lattices) {
        LatticeSpec b0;
        b0.name = "B0";
        b0.x3 = 0.0;
        b0.n1 = b0.n2 = cfg.lattice_n;
        LatticeSpec b1 = b0;
        b1.name = "B1";
        b1.x3 = eq.points[1].x3;
        out.lattices.push_back(
            scan_lattice(out.params, c.q, b0, out.registry, cfg.basin_cfg, cfg.threads));
        out.lattices.push_back(
            scan_lattice(out.params, c.q, b1, out.registry, cfg.basin_cfg, cfg.threads));
    }
    return out;
}

}  // namespace ecodyn
