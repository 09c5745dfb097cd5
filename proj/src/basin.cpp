#include "ecodyn/basin.hpp"

#include <omp.h>

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "ecodyn/csvio.hpp"
#include "ecodyn/rng.hpp"

namespace ecodyn {

void LatticeSpec::validate() const {
    const bool ok = n1 >= 2 && n2 >= 2 && x1_range[1] > x1_range[0] &&
                    x2_range[1] > x2_range[0] && std::isfinite(x3);
    if (!ok) throw std::invalid_argument("LatticeSpec: inconsistent settings");
}

State3 LatticeSpec::point(int i, int j) const {
    const double u = static_cast<double>(i) / static_cast<double>(n1 - 1);
    const double v = static_cast<double>(j) / static_cast<double>(n2 - 1);
    return {x1_range[0] + u * (x1_range[1] - x1_range[0]),
            x2_range[0] + v * (x2_range[1] - x2_range[0]), x3};
}

void SphereSpec::validate() const {
    if (!(radius >= 0.0) || count < 1)
        throw std::invalid_argument("SphereSpec: radius must be >= 0 and count >= 1");
}

namespace {

PointLabel label_point(const SystemParams& p, double q, const State3& ic,
                       const AttractorRegistry& registry, const AnalyzeConfig& cfg) {
    PointLabel out;
    AnalysisResult res;
    try {
        res = analyze_ic(p, q, ic, cfg);
    } catch (const std::exception&) {
        out.kind = LabelKind::Unresolved;
        return out;
    }
    out.mle = res.mle.mle;
    out.settle_time = res.settle_time;
    if (res.status == TrajStatus::Escaped) {
        out.kind = LabelKind::Escaped;
        return out;
    }
    if (res.status != TrajStatus::Completed) {
        out.kind = LabelKind::Unresolved;
        return out;
    }
    const MatchResult m = match(res.sig, registry);
    if (m.status == MatchStatus::Matched) {
        out.kind = LabelKind::Attractor;
        out.label = m.label;
    } else {
        out.kind = LabelKind::Unresolved;
    }
    return out;
}

int worker_count(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

}  // namespace

BasinGrid scan_lattice(const SystemParams& p, double q, const LatticeSpec& spec,
                       const AttractorRegistry& registry, const AnalyzeConfig& cfg,
                       int threads) {
    spec.validate();
    if (registry.empty()) throw std::invalid_argument("scan_lattice: empty registry");
    BasinGrid grid;
    grid.spec = spec;
    grid.params = p;
    grid.q = q;
    const std::size_t total = static_cast<std::size_t>(spec.n1) * spec.n2;
    grid.labels.resize(total);

    const int nw = worker_count(threads);
#pragma omp parallel for schedule(dynamic, 8) num_threads(nw)
    for (long long idx = 0; idx < static_cast<long long>(total); ++idx) {
        const int i = static_cast<int>(idx % spec.n1);
        const int j = static_cast<int>(idx / spec.n1);
        grid.labels[idx] = label_point(p, q, spec.point(i, j), registry, cfg);
    }
    return grid;
}

std::vector<SphereSample> scan_sphere(const SystemParams& p, double q, const SphereSpec& spec,
                                      const AttractorRegistry& registry,
                                      const AnalyzeConfig& cfg, int threads) {
    spec.validate();
    if (registry.empty()) throw std::invalid_argument("scan_sphere: empty registry");
    std::vector<SphereSample> samples(spec.count);
    const int nw = worker_count(threads);
#pragma omp parallel for schedule(dynamic) num_threads(nw)
    for (int i = 0; i < spec.count; ++i) {
        SplitMix64 rng = SplitMix64::stream(spec.seed, static_cast<std::uint64_t>(i));
        samples[i].ic = sample_ball(rng, spec.center, spec.radius);
        samples[i].label = label_point(p, q, samples[i].ic, registry, cfg);
    }
    return samples;
}

HiddennessVerdict hiddenness(const AttractorRegistry& registry,
                             const std::vector<std::string>& equilibrium_names,
                             const std::map<std::string, std::vector<SphereSample>>& scans) {
    HiddennessVerdict verdict;
    for (const auto& name : equilibrium_names)
        if (!scans.count(name))
            throw std::invalid_argument("hiddenness: missing sphere scan for equilibrium " + name);
    for (const auto& entry : registry.entries()) {
        HiddennessEvidence ev;
        ev.attractor = entry.label;
        for (const auto& name : equilibrium_names) {
            int hits = 0;
            for (const auto& s : scans.at(name))
                if (s.label.kind == LabelKind::Attractor && s.label.label == entry.label) ++hits;
            ev.hits[name] = hits;
            if (hits > 0) ev.self_excited = true;
        }
        verdict.attractors.push_back(std::move(ev));
    }
    if (!scans.empty()) verdict.samples_per_sphere = static_cast<int>(scans.begin()->second.size());
    return verdict;
}

std::array<int, 3> label_color(const PointLabel& l) {
    switch (l.kind) {
        case LabelKind::Escaped: return {255, 255, 255};
        case LabelKind::Unresolved: return {128, 128, 128};
        case LabelKind::Attractor: break;
    }
    const bool first = l.label.index == 1;
    switch (l.label.family) {
        case AttractorFamily::H:
        case AttractorFamily::SEC:
            return first ? std::array<int, 3>{220, 30, 30} : std::array<int, 3>{10, 10, 10};
        case AttractorFamily::SECH:
        case AttractorFamily::HC:
            return first ? std::array<int, 3>{30, 60, 220} : std::array<int, 3>{205, 155, 100};
        case AttractorFamily::Unknown: break;
    }
    return {128, 128, 128};
}

void write_ppm(const BasinGrid& grid, std::ostream& os) {
    os << "P3\n# " << grid.spec.name << " x3=" << grid.spec.x3 << ", x2 increases upward\n"
       << grid.spec.n1 << ' ' << grid.spec.n2 << "\n255\n";
    for (int j = grid.spec.n2 - 1; j >= 0; --j) {
        for (int i = 0; i < grid.spec.n1; ++i) {
            const auto c = label_color(grid.at(i, j));
            os << c[0] << ' ' << c[1] << ' ' << c[2] << (i + 1 == grid.spec.n1 ? '\n' : ' ');
        }
    }
}

namespace {

std::string label_text(const PointLabel& l) {
    switch (l.kind) {
        case LabelKind::Escaped: return "Escaped";
        case LabelKind::Unresolved: return "Unresolved";
        case LabelKind::Attractor: return l.label.str();
    }
    return "Unresolved";
}

}  // namespace

void write_basin_csv(const BasinGrid& grid, std::ostream& os) {
    os << "x1,x2,x3,label,mle,settle_time\n";
    for (int j = 0; j < grid.spec.n2; ++j) {
        for (int i = 0; i < grid.spec.n1; ++i) {
            const State3 p = grid.spec.point(i, j);
            const PointLabel& l = grid.at(i, j);
            os << fmt17(p.x1) << ',' << fmt17(p.x2) << ',' << fmt17(p.x3) << ','
               << label_text(l) << ',' << fmt17(l.mle) << ',' << fmt17(l.settle_time) << '\n';
        }
    }
}

void write_sphere_csv(const std::vector<SphereSample>& samples, std::ostream& os) {
    os << "x1,x2,x3,label,mle,settle_time\n";
    for (const auto& s : samples)
        os << fmt17(s.ic.x1) << ',' << fmt17(s.ic.x2) << ',' << fmt17(s.ic.x3) << ','
           << label_text(s.label) << ',' << fmt17(s.label.mle) << ','
           << fmt17(s.label.settle_time) << '\n';
}

void write_hiddenness_report(const HiddennessVerdict& v, std::ostream& os) {
    os << "hiddenness verdict (" << v.note << ", " << v.samples_per_sphere
       << " samples per sphere)\n";
    for (const auto& ev : v.attractors) {
        os << "  " << ev.attractor.str() << ": "
           << (ev.self_excited ? "self-excited" : "hidden");
        os << "  [";
        bool sep = false;
        for (const auto& [name, hits] : ev.hits) {
            if (sep) os << ", ";
            os << name << ": " << hits;
            sep = true;
        }
        os << "]\n";
    }
}

}  // namespace ecodyn
