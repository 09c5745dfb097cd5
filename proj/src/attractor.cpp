#include "ecodyn/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ecodyn {

std::string AttractorLabel::str() const {
    switch (family) {
        case AttractorFamily::SEC: return "SEC" + std::to_string(index);
        case AttractorFamily::SECH: return "SECH" + std::to_string(index);
        case AttractorFamily::H: return "H" + std::to_string(index);
        case AttractorFamily::HC: return "HC" + std::to_string(index);
        case AttractorFamily::Unknown: break;
    }
    return "Unknown";
}

AttractorLabel AttractorLabel::parse(const std::string& s) {
    auto try_prefix = [&s](const char* prefix, AttractorFamily fam) -> std::optional<AttractorLabel> {
        const std::size_t n = std::string(prefix).size();
        if (s.rfind(prefix, 0) == 0 && s.size() > n &&
            std::all_of(s.begin() + n, s.end(), [](char c) { return std::isdigit(c); }))
            return AttractorLabel{fam, std::stoi(s.substr(n))};
        return std::nullopt;
    };
    // longest prefixes first: SECH before SEC, HC before H
    for (auto& [prefix, fam] : {std::pair{"SECH", AttractorFamily::SECH},
                                std::pair{"SEC", AttractorFamily::SEC},
                                std::pair{"HC", AttractorFamily::HC},
                                std::pair{"H", AttractorFamily::H}})
        if (auto l = try_prefix(prefix, fam)) return *l;
    return AttractorLabel{};
}

AttractorLabel partner(const AttractorLabel& l) {
    if (l.family == AttractorFamily::Unknown) return l;
    return {l.family, l.index == 1 ? 2 : 1};
}

Trajectory strip_transient(const Trajectory& traj, double t_discard) {
    if (traj.status != TrajStatus::Completed)
        throw std::invalid_argument("strip_transient: trajectory did not complete");
    Trajectory out;
    out.status = traj.status;
    const auto it = std::lower_bound(traj.t.begin(), traj.t.end(), t_discard - 1e-12);
    const std::size_t start = static_cast<std::size_t>(it - traj.t.begin());
    out.t.assign(traj.t.begin() + start, traj.t.end());
    out.x.assign(traj.x.begin() + start, traj.x.end());
    return out;
}

Trajectory strip_transient_fraction(const Trajectory& traj, double fraction) {
    if (traj.t.empty()) return traj;
    return strip_transient(traj, fraction * traj.t.back());
}

std::vector<double> extract_peaks(const Trajectory& traj, int component) {
    if (traj.size() < 3) throw std::invalid_argument("extract_peaks: need at least 3 samples");
    std::vector<double> peaks;
    for (std::size_t i = 1; i + 1 < traj.size(); ++i) {
        const double ym = traj.x[i - 1][component];
        const double y0 = traj.x[i][component];
        const double yp = traj.x[i + 1][component];
        if (y0 > ym && y0 > yp) {
            // vertex of the parabola through the three samples
            const double denom = ym - 2.0 * y0 + yp;
            double value = y0;
            if (denom < 0.0) {
                const double delta = 0.5 * (ym - yp) / denom;
                value = y0 - 0.25 * (ym - yp) * delta;
            }
            peaks.push_back(value);
        }
    }
    std::sort(peaks.begin(), peaks.end());
    return peaks;
}

Trajectory mirror_trajectory(const Trajectory& traj) {
    Trajectory out = traj;
    for (auto& s : out.x)
        for (double& c : s) c = -c;
    return out;
}

namespace {

// Dominant recurrence time of component 0 via the autocorrelation: first
// local maximum after the first zero crossing, refined parabolically.
std::optional<double> estimate_period(const Trajectory& traj) {
    const std::size_t n = traj.size();
    if (n < 16) return std::nullopt;
    const double dt = traj.t[1] - traj.t[0];
    double mean = 0.0;
    for (const auto& s : traj.x) mean += s[0];
    mean /= static_cast<double>(n);

    const std::size_t max_lag = n / 2;
    std::vector<double> r(max_lag, 0.0);
    for (std::size_t lag = 0; lag < max_lag; ++lag) {
        double sum = 0.0;
        for (std::size_t i = 0; i + lag < n; ++i)
            sum += (traj.x[i][0] - mean) * (traj.x[i + lag][0] - mean);
        r[lag] = sum / static_cast<double>(n - lag);
    }
    if (r[0] <= 0.0) return std::nullopt;
    std::size_t i = 1;
    while (i < max_lag && r[i] > 0.0) ++i;  // first zero crossing
    for (; i + 1 < max_lag; ++i) {
        if (r[i] > r[i - 1] && r[i] > r[i + 1] && r[i] > 0.2 * r[0]) {
            const double denom = r[i - 1] - 2.0 * r[i] + r[i + 1];
            double lag = static_cast<double>(i);
            if (denom < 0.0) lag += 0.5 * (r[i - 1] - r[i + 1]) / denom;
            return lag * dt;
        }
    }
    return std::nullopt;
}

}  // namespace

AttractorSignature make_signature(const Trajectory& stripped, const MleResult& mle,
                                  double sym_threshold) {
    if (stripped.t.empty()) throw std::invalid_argument("make_signature: empty trajectory");
    AttractorSignature sig;
    sig.regularity = mle.verdict;
    sig.mle = mle.mle;
    sig.bbox_min = sig.bbox_max = stripped.x.front();
    double mean_x1 = 0.0;
    for (const auto& s : stripped.x) {
        for (int c = 0; c < 3; ++c) {
            sig.bbox_min[c] = std::min(sig.bbox_min[c], s[c]);
            sig.bbox_max[c] = std::max(sig.bbox_max[c], s[c]);
        }
        mean_x1 += s[0];
    }
    mean_x1 /= static_cast<double>(stripped.size());
    sig.symmetry_sign = std::fabs(mean_x1) < sym_threshold ? 0 : (mean_x1 > 0.0 ? 1 : -1);
    if (stripped.size() >= 3) sig.peaks = extract_peaks(stripped, 0);
    if (sig.regularity == Regularity::Regular) sig.period = estimate_period(stripped);
    return sig;
}

double bbox_overlap(const std::array<double, 3>& amin, const std::array<double, 3>& amax,
                    const std::array<double, 3>& bmin, const std::array<double, 3>& bmax) {
    constexpr double pad = 1e-6;
    double inter = 1.0, vol_a = 1.0, vol_b = 1.0;
    for (int c = 0; c < 3; ++c) {
        const double alo = amin[c] - pad, ahi = amax[c] + pad;
        const double blo = bmin[c] - pad, bhi = bmax[c] + pad;
        inter *= std::max(0.0, std::min(ahi, bhi) - std::max(alo, blo));
        vol_a *= ahi - alo;
        vol_b *= bhi - blo;
    }
    const double uni = vol_a + vol_b - inter;
    return uni > 0.0 ? inter / uni : 0.0;
}

double peak_hausdorff(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() && b.empty()) return 0.0;
    if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
    auto directed = [](const std::vector<double>& from, const std::vector<double>& to) {
        double worst = 0.0;
        for (double v : from) {
            auto it = std::lower_bound(to.begin(), to.end(), v);
            double best = std::numeric_limits<double>::infinity();
            if (it != to.end()) best = std::min(best, std::fabs(*it - v));
            if (it != to.begin()) best = std::min(best, std::fabs(*(it - 1) - v));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

bool same_attractor(const AttractorSignature& a, const AttractorSignature& b,
                    const MatchTolerances& tol) {
    if (a.regularity != b.regularity || a.symmetry_sign != b.symmetry_sign) return false;
    if (bbox_overlap(a.bbox_min, a.bbox_max, b.bbox_min, b.bbox_max) <= tol.bbox_overlap_min)
        return false;
    return peak_hausdorff(a.peaks, b.peaks) < tol.peak_hausdorff_max;
}

void AttractorRegistry::add(const AttractorLabel& label, const AttractorSignature& sig) {
    for (const auto& e : entries_) {
        if (e.label == label)
            throw std::invalid_argument("AttractorRegistry: duplicate label " + label.str());
        if (same_attractor(e.sig, sig, tol_))
            throw std::invalid_argument("AttractorRegistry: " + label.str() +
                                        " overlaps existing reference " + e.label.str());
    }
    entries_.push_back({label, sig});
}

MatchResult match(const AttractorSignature& sig, const AttractorRegistry& registry) {
    if (registry.empty()) throw std::invalid_argument("match: empty registry");
    MatchResult res;
    for (const auto& e : registry.entries())
        if (same_attractor(sig, e.sig, registry.tolerances())) res.candidates.push_back(e.label);
    if (res.candidates.empty()) {
        res.status = MatchStatus::NewAttractor;
    } else if (res.candidates.size() == 1) {
        res.status = MatchStatus::Matched;
        res.label = res.candidates.front();
        res.candidates.clear();
    } else {
        res.status = MatchStatus::Ambiguous;
    }
    return res;
}

namespace {

void put_doubles(std::ostream& os, const char* key, const double* v, std::size_t n) {
    os << key;
    os.precision(17);
    for (std::size_t i = 0; i < n; ++i) os << ' ' << v[i];
    os << '\n';
}

}  // namespace

void AttractorRegistry::save(std::ostream& os) const {
    os << "ecodyn-registry 1\n";
    os.precision(17);
    os << "tolerances " << tol_.bbox_overlap_min << ' ' << tol_.peak_hausdorff_max << '\n';
    for (const auto& e : entries_) {
        os << "begin " << e.label.str() << '\n';
        os << "regularity " << (e.sig.regularity == Regularity::Chaotic ? "Chaotic" : "Regular")
           << '\n';
        os << "symmetry_sign " << e.sig.symmetry_sign << '\n';
        os << "mle " << e.sig.mle << '\n';
        put_doubles(os, "bbox_min", e.sig.bbox_min.data(), 3);
        put_doubles(os, "bbox_max", e.sig.bbox_max.data(), 3);
        if (e.sig.period)
            os << "period " << *e.sig.period << '\n';
        else
            os << "period none\n";
        os << "peaks " << e.sig.peaks.size();
        for (double p : e.sig.peaks) os << ' ' << p;
        os << "\nend\n";
    }
}

AttractorRegistry AttractorRegistry::load(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("ecodyn-registry", 0) != 0)
        throw std::runtime_error("AttractorRegistry::load: bad header");
    MatchTolerances tol;
    AttractorRegistry reg(tol);
    std::optional<AttractorLabel> label;
    AttractorSignature sig;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "tolerances") {
            ls >> tol.bbox_overlap_min >> tol.peak_hausdorff_max;
            reg = AttractorRegistry(tol);
        } else if (key == "begin") {
            std::string name;
            ls >> name;
            label = AttractorLabel::parse(name);
            sig = AttractorSignature{};
        } else if (key == "regularity") {
            std::string v;
            ls >> v;
            sig.regularity = v == "Chaotic" ? Regularity::Chaotic : Regularity::Regular;
        } else if (key == "symmetry_sign") {
            ls >> sig.symmetry_sign;
        } else if (key == "mle") {
            ls >> sig.mle;
        } else if (key == "bbox_min") {
            ls >> sig.bbox_min[0] >> sig.bbox_min[1] >> sig.bbox_min[2];
        } else if (key == "bbox_max") {
            ls >> sig.bbox_max[0] >> sig.bbox_max[1] >> sig.bbox_max[2];
        } else if (key == "period") {
            std::string v;
            ls >> v;
            if (v != "none") sig.period = std::stod(v);
        } else if (key == "peaks") {
            std::size_t n = 0;
            ls >> n;
            sig.peaks.resize(n);
            for (auto& p : sig.peaks) ls >> p;
        } else if (key == "end") {
            if (!label) throw std::runtime_error("AttractorRegistry::load: end without begin");
            reg.add(*label, sig);
            label.reset();
        }
    }
    return reg;
}

}  // namespace ecodyn
