#pragma once

// Attraction-basin mapping: planar lattices through equilibria, spherical
// neighborhoods around them, and the numerical hidden/self-excited verdict.
// Lattice and sphere points are independent jobs; results land in
// preallocated slots, so output never depends on scheduling.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ecodyn/analysis.hpp"
#include "ecodyn/attractor.hpp"

namespace ecodyn {

struct LatticeSpec {
    std::string name = "B0";
    double x3 = 0.0;                          // plane anchor
    std::array<double, 2> x1_range{-5.0, 5.0};
    std::array<double, 2> x2_range{-5.0, 5.0};
    int n1 = 400;
    int n2 = 400;

    void validate() const;
    State3 point(int i, int j) const;  // i indexes x1, j indexes x2
};

struct SphereSpec {
    State3 center;
    double radius = 0.1;
    int count = 50;
    std::uint64_t seed = 1;

    void validate() const;
};

enum class LabelKind { Attractor, Escaped, Unresolved };

struct PointLabel {
    LabelKind kind = LabelKind::Unresolved;
    AttractorLabel label;  // valid when kind == Attractor
    double mle = 0.0;
    double settle_time = 0.0;
};

struct BasinGrid {
    LatticeSpec spec;
    SystemParams params;
    double q = 1.0;
    std::vector<PointLabel> labels;  // row-major, index j * n1 + i

    const PointLabel& at(int i, int j) const { return labels[static_cast<std::size_t>(j) * spec.n1 + i]; }
};

/// Integrate every lattice node, match against the registry, label the grid.
/// Per-point failures become Escaped/Unresolved; the scan never aborts.
BasinGrid scan_lattice(const SystemParams& p, double q, const LatticeSpec& spec,
                       const AttractorRegistry& registry, const AnalyzeConfig& cfg,
                       int threads = 0);

struct SphereSample {
    State3 ic;
    PointLabel label;
};

/// Seeded uniform samples in the ball around an equilibrium, each analyzed
/// and matched. Sample i is drawn from stream (seed, i): thread-count
/// independent.
std::vector<SphereSample> scan_sphere(const SystemParams& p, double q, const SphereSpec& spec,
                                      const AttractorRegistry& registry, const AnalyzeConfig& cfg,
                                      int threads = 0);

struct HiddennessEvidence {
    AttractorLabel attractor;
    bool self_excited = false;
    std::map<std::string, int> hits;  // equilibrium name -> sample count reaching this attractor
};

struct HiddennessVerdict {
    std::vector<HiddennessEvidence> attractors;
    int samples_per_sphere = 0;
    // The verdict is numerical evidence from finitely many samples, not proof.
    std::string note = "numerical evidence from sampled equilibrium neighborhoods";
};

/// Self-excited iff at least one sampled neighborhood point of some
/// equilibrium reaches the attractor; hidden (numerically) otherwise.
/// Throws when a named equilibrium has no scan.
HiddennessVerdict hiddenness(const AttractorRegistry& registry,
                             const std::vector<std::string>& equilibrium_names,
                             const std::map<std::string, std::vector<SphereSample>>& scans);

/// Fixed palette, the figures' color language: H1/SEC1 red, H2/SEC2 black,
/// SECH1/HC1 blue, SECH2/HC2 light brown, Escaped white, Unresolved gray.
std::array<int, 3> label_color(const PointLabel& l);

/// Plain-text PPM (P3), one pixel per lattice point, x2 increasing upward.
void write_ppm(const BasinGrid& grid, std::ostream& os);

/// Columns x1,x2,x3,label,mle,settle_time.
void write_basin_csv(const BasinGrid& grid, std::ostream& os);

void write_sphere_csv(const std::vector<SphereSample>& samples, std::ostream& os);

void write_hiddenness_report(const HiddennessVerdict& v, std::ostream& os);

}  // namespace ecodyn
