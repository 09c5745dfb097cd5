#include "ecodyn/config.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ecodyn/csvio.hpp"
#include "ecodyn/version.hpp"

namespace ecodyn {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct KvReader {
    std::map<std::string, std::string> kv;  // "section.key" -> value

    static KvReader read(std::istream& is) {
        KvReader r;
        std::string line, section;
        int lineno = 0;
        while (std::getline(is, line)) {
            ++lineno;
            const std::string t = trim(line);
            if (t.empty() || t[0] == '#') continue;
            if (t.front() == '[' && t.back() == ']') {
                section = t.substr(1, t.size() - 2);
                continue;
            }
            const auto eq = t.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("config line " + std::to_string(lineno) +
                                         ": expected key = value");
            r.kv[section + "." + trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
        }
        return r;
    }

    bool has(const std::string& key) const { return kv.count(key) > 0; }

    double num(const std::string& key, double fallback) const {
        const auto it = kv.find(key);
        if (it == kv.end()) return fallback;
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size())
            throw std::runtime_error("config key " + key + ": bad number '" + it->second + "'");
        return v;
    }

    long long integer(const std::string& key, long long fallback) const {
        const auto it = kv.find(key);
        if (it == kv.end()) return fallback;
        return std::stoll(it->second);
    }

    std::string text(const std::string& key, const std::string& fallback) const {
        const auto it = kv.find(key);
        return it == kv.end() ? fallback : it->second;
    }
};

std::vector<State3> parse_ics(const std::string& text) {
    std::vector<State3> ics;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ';')) {
        item = trim(item);
        if (item.empty()) continue;
        State3 s;
        char c1 = 0, c2 = 0;
        std::istringstream ps(item);
        if (!(ps >> s.x1 >> c1 >> s.x2 >> c2 >> s.x3) || c1 != ',' || c2 != ',')
            throw std::runtime_error("config: bad initial condition '" + item + "'");
        ics.push_back(s);
    }
    return ics;
}

std::string emit_ics(const std::vector<State3>& ics) {
    std::string out;
    for (std::size_t i = 0; i < ics.size(); ++i) {
        if (i) out += "; ";
        out += fmt17(ics[i].x1) + "," + fmt17(ics[i].x2) + "," + fmt17(ics[i].x3);
    }
    return out;
}

}  // namespace

void RunConfig::emit(std::ostream& os) const {
    os << "# " << kToolName << ' ' << kVersion << " run configuration\n";
    os << "# times in model time units\n";
    os << "[system]\n";
    os << "a = " << fmt17(params.a) << '\n';
    os << "b = " << fmt17(params.b) << '\n';
    os << "c = " << fmt17(params.c) << '\n';
    os << "d = " << fmt17(params.d) << '\n';
    os << "e = " << fmt17(params.e) << '\n';
    os << "f = " << fmt17(params.f) << '\n';
    os << "q = " << fmt17(q) << '\n';
    os << "[integrator]\n";
    os << "t_max = " << fmt17(analysis.integ.t_max) << '\n';
    os << "rel_tol = " << fmt17(analysis.integ.rel_tol) << '\n';
    os << "abs_tol = " << fmt17(analysis.integ.abs_tol) << '\n';
    os << "h_init = " << fmt17(analysis.integ.h_init) << '\n';
    os << "h_min = " << fmt17(analysis.integ.h_min) << '\n';
    os << "h_max = " << fmt17(analysis.integ.h_max) << '\n';
    os << "escape_radius = " << fmt17(analysis.integ.escape_radius) << '\n';
    os << "dense_dt = " << fmt17(analysis.integ.dense_dt) << '\n';
    os << "mode = " << (analysis.integ.mode == StepMode::Fixed ? "fixed" : "adaptive") << '\n';
    os << "[fo]\n";
    os << "h = " << fmt17(analysis.fo.h) << '\n';
    os << "corrector_iterations = " << analysis.fo.corrector_iterations << '\n';
    os << "max_steps = " << analysis.fo.max_steps << '\n';
    os << "memory_window = " << analysis.fo.memory_window << '\n';
    os << "[analysis]\n";
    os << "strip_fraction = " << fmt17(analysis.strip_fraction) << '\n';
    os << "renorm_interval = " << fmt17(analysis.renorm_interval) << '\n';
    os << "mle_threshold = " << fmt17(analysis.mle_threshold) << '\n';
    os << "sym_threshold = " << fmt17(analysis.sym_threshold) << '\n';
    os << "[mle]\n";
    os << "t_total = " << fmt17(mle.t_total) << '\n';
    os << "t_transient = " << fmt17(mle.t_transient) << '\n';
    os << "renorm_interval = " << fmt17(mle.renorm_interval) << '\n';
    os << "delta0 = " << fmt17(mle.delta0) << '\n';
    os << "mode = " << (mle.mode == MleMode::TwoTrajectory ? "two_trajectory" : "tangent") << '\n';
    os << "threshold = " << fmt17(mle.threshold) << '\n';
    os << "[run]\n";
    os << "ics = " << emit_ics(ics) << '\n';
    os << "[sweep]\n";
    os << "axis = " << (sweep_axis == SweepAxis::OrderQ ? "q" : "a") << '\n';
    os << "lo = " << fmt17(sweep_lo) << '\n';
    os << "hi = " << fmt17(sweep_hi) << '\n';
    os << "points = " << sweep_points << '\n';
    os << "[basin]\n";
    os << "lattice_n = " << lattice_n << '\n';
    os << "x1_lo = " << fmt17(lattice_x1_lo) << '\n';
    os << "x1_hi = " << fmt17(lattice_x1_hi) << '\n';
    os << "x2_lo = " << fmt17(lattice_x2_lo) << '\n';
    os << "x2_hi = " << fmt17(lattice_x2_hi) << '\n';
    os << "sphere_radius = " << fmt17(sphere_radius) << '\n';
    os << "sphere_count = " << sphere_count << '\n';
    os << "[equilibria]\n";
    os << "a_lo = " << fmt17(a_grid_lo) << '\n';
    os << "a_hi = " << fmt17(a_grid_hi) << '\n';
    os << "a_points = " << a_grid_points << '\n';
    os << "[output]\n";
    os << "dir = " << out_dir << '\n';
    os << "seed = " << seed << '\n';
    os << "threads = " << threads << '\n';
}

RunConfig RunConfig::parse(std::istream& is) {
    const KvReader r = KvReader::read(is);
    RunConfig c;
    c.params.a = r.num("system.a", c.params.a);
    c.params.b = r.num("system.b", c.params.b);
    c.params.c = r.num("system.c", c.params.c);
    c.params.d = r.num("system.d", c.params.d);
    c.params.e = r.num("system.e", c.params.e);
    c.params.f = r.num("system.f", c.params.f);
    c.q = r.num("system.q", c.q);
    c.analysis.integ.t_max = r.num("integrator.t_max", c.analysis.integ.t_max);
    c.analysis.integ.rel_tol = r.num("integrator.rel_tol", c.analysis.integ.rel_tol);
    c.analysis.integ.abs_tol = r.num("integrator.abs_tol", c.analysis.integ.abs_tol);
    c.analysis.integ.h_init = r.num("integrator.h_init", c.analysis.integ.h_init);
    c.analysis.integ.h_min = r.num("integrator.h_min", c.analysis.integ.h_min);
    c.analysis.integ.h_max = r.num("integrator.h_max", c.analysis.integ.h_max);
    c.analysis.integ.escape_radius = r.num("integrator.escape_radius", c.analysis.integ.escape_radius);
    c.analysis.integ.dense_dt = r.num("integrator.dense_dt", c.analysis.integ.dense_dt);
    c.analysis.integ.mode =
        r.text("integrator.mode", "adaptive") == "fixed" ? StepMode::Fixed : StepMode::Adaptive;
    c.analysis.fo.h = r.num("fo.h", c.analysis.fo.h);
    c.analysis.fo.corrector_iterations =
        static_cast<int>(r.integer("fo.corrector_iterations", c.analysis.fo.corrector_iterations));
    c.analysis.fo.max_steps =
        static_cast<std::size_t>(r.integer("fo.max_steps", static_cast<long long>(c.analysis.fo.max_steps)));
    c.analysis.fo.memory_window = static_cast<std::size_t>(
        r.integer("fo.memory_window", static_cast<long long>(c.analysis.fo.memory_window)));
    c.analysis.strip_fraction = r.num("analysis.strip_fraction", c.analysis.strip_fraction);
    c.analysis.renorm_interval = r.num("analysis.renorm_interval", c.analysis.renorm_interval);
    c.analysis.mle_threshold = r.num("analysis.mle_threshold", c.analysis.mle_threshold);
    c.analysis.sym_threshold = r.num("analysis.sym_threshold", c.analysis.sym_threshold);
    c.mle.t_total = r.num("mle.t_total", c.mle.t_total);
    c.mle.t_transient = r.num("mle.t_transient", c.mle.t_transient);
    c.mle.renorm_interval = r.num("mle.renorm_interval", c.mle.renorm_interval);
    c.mle.delta0 = r.num("mle.delta0", c.mle.delta0);
    c.mle.mode = r.text("mle.mode", "tangent") == "two_trajectory" ? MleMode::TwoTrajectory
                                                                   : MleMode::TangentLinear;
    c.mle.threshold = r.num("mle.threshold", c.mle.threshold);
    if (r.has("run.ics")) c.ics = parse_ics(r.text("run.ics", ""));
    c.sweep_axis = r.text("sweep.axis", "a") == "q" ? SweepAxis::OrderQ : SweepAxis::ParamA;
    c.sweep_lo = r.num("sweep.lo", c.sweep_lo);
    c.sweep_hi = r.num("sweep.hi", c.sweep_hi);
    c.sweep_points = static_cast<int>(r.integer("sweep.points", c.sweep_points));
    c.lattice_n = static_cast<int>(r.integer("basin.lattice_n", c.lattice_n));
    c.lattice_x1_lo = r.num("basin.x1_lo", c.lattice_x1_lo);
    c.lattice_x1_hi = r.num("basin.x1_hi", c.lattice_x1_hi);
    c.lattice_x2_lo = r.num("basin.x2_lo", c.lattice_x2_lo);
    c.lattice_x2_hi = r.num("basin.x2_hi", c.lattice_x2_hi);
    c.sphere_radius = r.num("basin.sphere_radius", c.sphere_radius);
    c.sphere_count = static_cast<int>(r.integer("basin.sphere_count", c.sphere_count));
    c.a_grid_lo = r.num("equilibria.a_lo", c.a_grid_lo);
    c.a_grid_hi = r.num("equilibria.a_hi", c.a_grid_hi);
    c.a_grid_points = static_cast<int>(r.integer("equilibria.a_points", c.a_grid_points));
    c.out_dir = r.text("output.dir", c.out_dir);
    c.seed = static_cast<std::uint64_t>(r.integer("output.seed", static_cast<long long>(c.seed)));
    c.threads = static_cast<int>(r.integer("output.threads", c.threads));
    return c;
}

bool operator==(const RunConfig& a, const RunConfig& b) {
    auto integ_eq = [](const IntegratorConfig& x, const IntegratorConfig& y) {
        return x.t_max == y.t_max && x.rel_tol == y.rel_tol && x.abs_tol == y.abs_tol &&
               x.h_init == y.h_init && x.h_min == y.h_min && x.h_max == y.h_max &&
               x.escape_radius == y.escape_radius && x.dense_dt == y.dense_dt &&
               x.mode == y.mode;
    };
    auto fo_eq = [](const FOConfig& x, const FOConfig& y) {
        return x.h == y.h && x.corrector_iterations == y.corrector_iterations &&
               x.max_steps == y.max_steps && x.memory_window == y.memory_window;
    };
    return a.params == b.params && a.q == b.q && integ_eq(a.analysis.integ, b.analysis.integ) &&
           fo_eq(a.analysis.fo, b.analysis.fo) &&
           a.analysis.strip_fraction == b.analysis.strip_fraction &&
           a.analysis.renorm_interval == b.analysis.renorm_interval &&
           a.analysis.mle_threshold == b.analysis.mle_threshold &&
           a.analysis.sym_threshold == b.analysis.sym_threshold &&
           a.mle.t_total == b.mle.t_total && a.mle.t_transient == b.mle.t_transient &&
           a.mle.renorm_interval == b.mle.renorm_interval && a.mle.delta0 == b.mle.delta0 &&
           a.mle.mode == b.mle.mode && a.mle.threshold == b.mle.threshold && a.ics == b.ics &&
           a.sweep_axis == b.sweep_axis && a.sweep_lo == b.sweep_lo && a.sweep_hi == b.sweep_hi &&
           a.sweep_points == b.sweep_points && a.lattice_n == b.lattice_n &&
           a.lattice_x1_lo == b.lattice_x1_lo && a.lattice_x1_hi == b.lattice_x1_hi &&
           a.lattice_x2_lo == b.lattice_x2_lo && a.lattice_x2_hi == b.lattice_x2_hi &&
           a.sphere_radius == b.sphere_radius && a.sphere_count == b.sphere_count &&
           a.a_grid_lo == b.a_grid_lo && a.a_grid_hi == b.a_grid_hi &&
           a.a_grid_points == b.a_grid_points && a.out_dir == b.out_dir && a.seed == b.seed &&
           a.threads == b.threads;
}

RunConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file " + path);
    return RunConfig::parse(is);
}

void write_resolved_config(const RunConfig& cfg, const std::string& dir) {
    std::filesystem::create_directories(dir);
    std::ofstream os(std::filesystem::path(dir) / "config.resolved.cfg");
    if (!os) throw std::runtime_error("cannot write resolved config in " + dir);
    cfg.emit(os);
}

}  // namespace ecodyn
