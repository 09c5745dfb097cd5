#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ecodyn/abm.hpp"
#include "oracles.hpp"

using namespace ecodyn;

TEST_CASE("at q = 1 every predictor weight equals h") {
    const double h = 0.05;
    const AbmWeights w = abm_weights(1.0, h, 12);
    REQUIRE(w.predictor.size() == 13);
    for (double b : w.predictor) CHECK(b == doctest::Approx(h).epsilon(1e-14));
    CHECK(w.pred_scale == doctest::Approx(h).epsilon(1e-14));
}

TEST_CASE("at q = 1 the corrector is the trapezoid rule") {
    const double h = 0.1;
    const std::size_t n = 9;
    const AbmWeights w = abm_weights(1.0, h, n);
    REQUIRE(w.corrector.size() == n + 2);
    CHECK(w.corrector.front() == doctest::Approx(h / 2.0).epsilon(1e-14));
    CHECK(w.corrector.back() == doctest::Approx(h / 2.0).epsilon(1e-14));
    for (std::size_t j = 1; j <= n; ++j)
        CHECK(w.corrector[j] == doctest::Approx(h).epsilon(1e-13));
}

TEST_CASE("weights at q = 0.9995, n = 10 are finite, positive, monotone") {
    const AbmWeights w = abm_weights(0.9995, 0.05, 10);
    for (double b : w.predictor) {
        CHECK(std::isfinite(b));
        CHECK(b > 0.0);
    }
    for (double a : w.corrector) {
        CHECK(std::isfinite(a));
        CHECK(a > 0.0);
    }
    // older history gets smaller predictor weights; interior corrector
    // weights also grow toward the current time
    for (std::size_t j = 1; j < w.predictor.size(); ++j)
        CHECK(w.predictor[j] > w.predictor[j - 1]);
    for (std::size_t j = 2; j + 1 < w.corrector.size(); ++j)
        CHECK(w.corrector[j] > w.corrector[j - 1]);
}

TEST_CASE("weights reject invalid q and h") {
    CHECK_THROWS_AS(abm_weights(0.0, 0.1, 5), std::invalid_argument);
    CHECK_THROWS_AS(abm_weights(1.5, 0.1, 5), std::invalid_argument);
    CHECK_THROWS_AS(abm_weights(0.5, 0.0, 5), std::invalid_argument);
}

TEST_CASE("D^q x = 1 has solution t^q / Gamma(q+1)") {
    for (double q : {0.35, 0.7, 0.9995}) {
        auto rhs = [](const std::array<double, 1>&) { return std::array<double, 1>{1.0}; };
        FOConfig cfg;
        cfg.q = q;
        cfg.h = 1e-3;
        cfg.t_max = 2.0;
        const auto traj = integrate_caputo<1>(rhs, {0.0}, cfg);
        REQUIRE(traj.status == TrajStatus::Completed);
        double worst = 0.0;
        for (std::size_t i = 0; i < traj.size(); ++i) {
            const double exact = std::pow(traj.t[i], q) / std::tgamma(q + 1.0);
            worst = std::max(worst, std::fabs(traj.x[i][0] - exact));
        }
        CAPTURE(q);
        CHECK(worst < 1e-4);
    }
}

TEST_CASE("D^q x = -x follows the Mittag-Leffler function up to t = 5") {
    for (double q : {0.6, 0.9, 0.9995}) {
        auto rhs = [](const std::array<double, 1>& y) { return std::array<double, 1>{-y[0]}; };
        FOConfig cfg;
        cfg.q = q;
        cfg.h = 1e-3;
        cfg.t_max = 5.0;
        const auto traj = integrate_caputo<1>(rhs, {1.0}, cfg);
        REQUIRE(traj.status == TrajStatus::Completed);
        double worst = 0.0;
        for (std::size_t i = 0; i < traj.size(); i += 50) {
            const double exact = oracles::mittag_leffler(q, -std::pow(traj.t[i], q));
            worst = std::max(worst, std::fabs(traj.x[i][0] - exact));
        }
        CAPTURE(q);
        CHECK(worst < 1e-4);
    }
}

TEST_CASE("q = 1 reduces to the classical predictor-corrector and tracks RK") {
    const SystemParams p = SystemParams::preset(0.05);
    FOConfig fo;
    fo.q = 1.0;
    fo.h = 0.01;
    fo.t_max = 200.0;
    const Trajectory abm = integrate_fo(p, {1.0, 1.0, 1.0}, fo);
    REQUIRE(abm.status == TrajStatus::Completed);

    IntegratorConfig rk;
    rk.t_max = 200.0;
    rk.rel_tol = 1e-10;
    rk.abs_tol = 1e-12;
    const Trajectory ref = integrate(p, {1.0, 1.0, 1.0}, rk);
    REQUIRE(ref.status == TrajStatus::Completed);

    // compare at the shared endpoint t = 200
    const auto& xa = abm.x.back();
    const auto& xr = ref.x.back();
    for (int c = 0; c < 3; ++c) CHECK(std::fabs(xa[c] - xr[c]) < 1e-3);
}

TEST_CASE("q -> 1 consistency: halving h shrinks the gap to the RK reference") {
    const SystemParams p = SystemParams::preset(0.05);
    IntegratorConfig rk;
    rk.t_max = 50.0;
    rk.rel_tol = 1e-12;
    rk.abs_tol = 1e-13;
    const Trajectory ref = integrate(p, {1.0, 1.0, 1.0}, rk);

    auto gap = [&](double h) {
        FOConfig fo;
        fo.q = 1.0;
        fo.h = h;
        fo.t_max = 50.0;
        const Trajectory t = integrate_fo(p, {1.0, 1.0, 1.0}, fo);
        double g = 0.0;
        for (int c = 0; c < 3; ++c) g = std::max(g, std::fabs(t.x.back()[c] - ref.x.back()[c]));
        return g;
    };
    const double g1 = gap(0.04);
    const double g2 = gap(0.02);
    CHECK(g2 < g1);
    CHECK(std::log2(g1 / g2) >= 1.0);  // observed order >= 1
}

TEST_CASE("recomputing a step from the stored history matches bitwise") {
    const SystemParams p = SystemParams::preset(0.052);
    auto rhs = [&p](const std::array<double, 3>& y) { return eval_rhs(p, State3::of(y)).array(); };
    FOConfig cfg;
    cfg.q = 0.9995;
    cfg.h = 0.05;
    cfg.t_max = 20.0;
    CaputoAbm<3, decltype(rhs)> abm(rhs, State3{1.0, 1.0, 1.0}.array(), cfg);
    std::vector<std::array<double, 3>> states;
    while (true) {
        const auto out = abm.step();
        states.push_back(abm.current());
        if (out != CaputoAbm<3, decltype(rhs)>::Outcome::Advanced) break;
    }
    for (std::size_t n : {std::size_t{1}, states.size() / 2, states.size()}) {
        const auto re = abm.recompute_state(n);
        CHECK(re == states[n - 1]);
    }
}

TEST_CASE("fractional trajectories mirror exactly") {
    const SystemParams p = SystemParams::preset(0.05);
    FOConfig cfg;
    cfg.q = 0.9995;
    cfg.h = 0.05;
    cfg.t_max = 100.0;
    const Trajectory fwd = integrate_fo(p, {1.0, 1.0, -1.0}, cfg);
    const Trajectory rev = integrate_fo(p, mirror(State3{1.0, 1.0, -1.0}), cfg);
    REQUIRE(fwd.size() == rev.size());
    for (std::size_t i = 0; i < fwd.size(); ++i)
        for (int c = 0; c < 3; ++c) CHECK(rev.x[i][c] == -fwd.x[i][c]);
}

TEST_CASE("full-memory cost is quadratic in the step count") {
    auto rhs = [](const std::array<double, 1>& y) { return std::array<double, 1>{-y[0]}; };
    auto ops = [&rhs](double t_max) {
        FOConfig cfg;
        cfg.q = 0.8;
        cfg.h = 0.01;
        cfg.t_max = t_max;
        CaputoAbm<1, decltype(rhs)> abm(rhs, {1.0}, cfg);
        while (abm.step() == CaputoAbm<1, decltype(rhs)>::Outcome::Advanced) {}
        return abm.history_ops();
    };
    const auto n1 = ops(5.0);   // 500 steps
    const auto n2 = ops(10.0);  // 1000 steps
    // sum_{n=0}^{N-1} (n+1) = N(N+1)/2
    CHECK(n1 == 500ull * 501ull / 2ull);
    CHECK(n2 == 1000ull * 1001ull / 2ull);
}

TEST_CASE("truncated memory window is available for benchmarking and is cheaper") {
    auto rhs = [](const std::array<double, 1>& y) { return std::array<double, 1>{-y[0]}; };
    FOConfig cfg;
    cfg.q = 0.8;
    cfg.h = 0.01;
    cfg.t_max = 5.0;
    cfg.memory_window = 50;
    CaputoAbm<1, decltype(rhs)> abm(rhs, {1.0}, cfg);
    while (abm.step() == CaputoAbm<1, decltype(rhs)>::Outcome::Advanced) {}
    CHECK(abm.history_ops() < 500ull * 501ull / 2ull);
    CHECK(abm.history_ops() <= 50ull * 500ull);
}

TEST_CASE("memory cap rejects runs that would exceed max_steps") {
    auto rhs = [](const std::array<double, 1>& y) { return std::array<double, 1>{-y[0]}; };
    FOConfig cfg;
    cfg.h = 1e-4;
    cfg.t_max = 1000.0;  // ten million steps
    CHECK_THROWS_AS((CaputoAbm<1, decltype(rhs)>(rhs, {1.0}, cfg)), std::length_error);
}

TEST_CASE("escape detection in the fractional integrator") {
    auto rhs = [](const std::array<double, 1>& y) { return std::array<double, 1>{y[0]}; };
    FOConfig cfg;
    cfg.q = 0.95;
    cfg.h = 0.01;
    cfg.t_max = 50.0;
    cfg.escape_radius = 10.0;
    const auto traj = integrate_caputo<1>(rhs, {1.0}, cfg);
    CHECK(traj.status == TrajStatus::Escaped);
    CHECK(traj.stop_time < 50.0);
}
