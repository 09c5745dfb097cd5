#pragma once

// Turns post-transient trajectories into attractor signatures (regularity,
// symmetry sign, bounding box, x1 peak set, period estimate) and matches
// them against a registry of labeled references. Chaotic orbits never
// repeat pointwise, but these descriptors separate the few coexisting
// attractors this system exhibits.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ecodyn/lyapunov.hpp"
#include "ecodyn/rk45.hpp"

namespace ecodyn {

enum class AttractorFamily { SEC, SECH, H, HC, Unknown };

struct AttractorLabel {
    AttractorFamily family = AttractorFamily::Unknown;
    int index = 0;  // 1 or 2 within a symmetric pair

    std::string str() const;
    static AttractorLabel parse(const std::string& s);

    friend bool operator==(const AttractorLabel&, const AttractorLabel&) = default;
};

/// The symmetric partner (same family, other index).
AttractorLabel partner(const AttractorLabel& l);

struct AttractorSignature {
    Regularity regularity = Regularity::Regular;
    int symmetry_sign = 0;  // sign of the time-average of x1; 0 within threshold
    std::array<double, 3> bbox_min{}, bbox_max{};
    std::vector<double> peaks;       // sorted local maxima of x1
    std::optional<double> period;    // dominant recurrence time when Regular
    double mle = 0.0;
};

/// Suffix of the trajectory from t_discard on. Throws unless Completed.
Trajectory strip_transient(const Trajectory& traj, double t_discard);

/// Discards the leading fraction of the time span (default 0.4); anchored at
/// t = 0 so stripping twice is a no-op.
Trajectory strip_transient_fraction(const Trajectory& traj, double fraction = 0.4);

/// Values at strict local maxima of one component, refined by quadratic
/// interpolation through the three neighboring samples; sorted ascending.
std::vector<double> extract_peaks(const Trajectory& traj, int component);

/// All components negated; the mirror image of the orbit.
Trajectory mirror_trajectory(const Trajectory& traj);

/// Assembles the signature of a stripped trajectory. |mean(x1)| below
/// sym_threshold gives symmetry_sign 0.
AttractorSignature make_signature(const Trajectory& stripped, const MleResult& mle,
                                  double sym_threshold = 1e-3);

struct MatchTolerances {
    double bbox_overlap_min = 0.5;     // volumetric intersection/union
    double peak_hausdorff_max = 0.2;
};

/// Intersection-over-union of two axis-aligned boxes, with a small padding
/// so point boxes compare sensibly.
double bbox_overlap(const std::array<double, 3>& amin, const std::array<double, 3>& amax,
                    const std::array<double, 3>& bmin, const std::array<double, 3>& bmax);

/// Symmetric Hausdorff distance of two sorted value sets. Both empty: 0;
/// exactly one empty: +infinity.
double peak_hausdorff(const std::vector<double>& a, const std::vector<double>& b);

/// Same regularity and symmetry sign, boxes overlapping, peak sets close.
bool same_attractor(const AttractorSignature& a, const AttractorSignature& b,
                    const MatchTolerances& tol);

struct RegistryEntry {
    AttractorLabel label;
    AttractorSignature sig;
};

class AttractorRegistry {
  public:
    explicit AttractorRegistry(MatchTolerances tol = {}) : tol_(tol) {}

    /// Throws if the new reference collides with an existing one (same
    /// regularity and symmetry sign with matching peak sets).
    void add(const AttractorLabel& label, const AttractorSignature& sig);

    const std::vector<RegistryEntry>& entries() const { return entries_; }
    const MatchTolerances& tolerances() const { return tol_; }
    bool empty() const { return entries_.empty(); }

    void save(std::ostream& os) const;
    static AttractorRegistry load(std::istream& is);

  private:
    MatchTolerances tol_;
    std::vector<RegistryEntry> entries_;
};

enum class MatchStatus { Matched, NewAttractor, Ambiguous };

struct MatchResult {
    MatchStatus status = MatchStatus::NewAttractor;
    AttractorLabel label;                     // valid when Matched
    std::vector<AttractorLabel> candidates;   // filled when Ambiguous
};

/// Order-independent: all registry entries are tested, then the unique hit
/// (if any) is returned. Throws if the registry is empty.
MatchResult match(const AttractorSignature& sig, const AttractorRegistry& registry);

}  // namespace ecodyn
