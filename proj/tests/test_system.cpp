#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "ecodyn/rng.hpp"
#include "ecodyn/system.hpp"
#include "oracles.hpp"

using namespace ecodyn;

TEST_CASE("preset carries the reference coefficients at full precision") {
    const SystemParams p = SystemParams::preset(0.05);
    CHECK(p.a == 0.05);
    CHECK(p.b == 0.01);
    CHECK(p.c == 1.0);
    CHECK(p.d == 0.031847);  // six decimals; rounding d changes the dynamics
    CHECK(p.e == 0.19);
    CHECK(p.f == 0.25);
    CHECK(p.valid());
}

TEST_CASE("parameter validation rejects nonpositive b, e, f") {
    SystemParams p = SystemParams::preset(0.05);
    p.b = 0.0;
    CHECK_FALSE(p.valid());
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = SystemParams::preset(0.05);
    p.f = -0.25;
    CHECK_FALSE(p.valid());
}

TEST_CASE("origin is an equilibrium") {
    const SystemParams p = SystemParams::preset(0.05);
    const State3 dx = eval_rhs(p, {0.0, 0.0, 0.0});
    CHECK(dx.x1 == 0.0);
    CHECK(dx.x2 == 0.0);
    CHECK(dx.x3 == 0.0);
}

TEST_CASE("vector field value by hand substitution at (1,1,1), a = 0.05") {
    const SystemParams p = SystemParams::preset(0.05);
    const State3 dx = eval_rhs(p, {1.0, 1.0, 1.0});
    CHECK(dx.x1 == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(dx.x2 == doctest::Approx(0.063694).epsilon(1e-12));
    CHECK(dx.x3 == doctest::Approx(-0.06).epsilon(1e-12));
}

TEST_CASE("non-finite state is rejected") {
    const SystemParams p = SystemParams::preset(0.05);
    CHECK_THROWS_AS(eval_rhs(p, {std::nan(""), 0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(eval_jacobian(p, {0.0, std::numeric_limits<double>::infinity(), 0.0}),
                    std::domain_error);
}

TEST_CASE("the right-hand side is odd, bitwise") {
    const SystemParams p = SystemParams::preset(0.052);
    SplitMix64 rng(20240521u);
    for (int i = 0; i < 200; ++i) {
        const State3 x{rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)};
        const State3 fwd = eval_rhs(p, x);
        const State3 rev = eval_rhs(p, mirror(x));
        CHECK(rev.x1 == -fwd.x1);
        CHECK(rev.x2 == -fwd.x2);
        CHECK(rev.x3 == -fwd.x3);
    }
}

TEST_CASE("mirror is an involution and maps X1* onto X2*") {
    CHECK(mirror(State3{1.0, 2.0, 3.0}) == State3{-1.0, -2.0, -3.0});
    const State3 x{0.3, -0.7, 2.0};
    CHECK(mirror(mirror(x)) == x);
}

TEST_CASE("Jacobian at the origin matches the closed form") {
    const double a = 0.052;
    const SystemParams p = SystemParams::preset(a);
    const Jacobian3 j = eval_jacobian(p, {0.0, 0.0, 0.0});
    CHECK(j(0, 0) == doctest::Approx(0.01).epsilon(1e-15));
    CHECK(j(0, 1) == a);
    CHECK(j(0, 2) == 0.0);
    CHECK(j(1, 0) == 0.031847);
    CHECK(j(1, 1) == 0.0);
    CHECK(j(1, 2) == 0.031847);
    CHECK(j(2, 0) == 0.19);
    CHECK(j(2, 1) == -0.25);
    CHECK(j(2, 2) == 0.0);
}

TEST_CASE("Jacobian matches central differences at a fixed point") {
    const SystemParams p = SystemParams::preset(0.05);
    const State3 x{1.0, 2.0, -1.0};
    const Jacobian3 j = eval_jacobian(p, x);
    const Jacobian3 fd = oracles::fd_jacobian(p, x);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) CHECK(std::fabs(j(r, c) - fd(r, c)) < 1e-6);
}

TEST_CASE("Jacobian matches central differences on 100 random states in [-5,5]^3") {
    const SystemParams p = SystemParams::preset(0.052);
    SplitMix64 rng(77u);
    for (int i = 0; i < 100; ++i) {
        const State3 x{rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)};
        const Jacobian3 j = eval_jacobian(p, x);
        const Jacobian3 fd = oracles::fd_jacobian(p, x);
        double worst = 0.0;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) worst = std::max(worst, std::fabs(j(r, c) - fd(r, c)));
        CHECK(worst < 1e-5);
    }
}

TEST_CASE("Jacobian is even in the state") {
    const SystemParams p = SystemParams::preset(0.1);
    SplitMix64 rng(3u);
    for (int i = 0; i < 50; ++i) {
        const State3 x{rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0)};
        const Jacobian3 ja = eval_jacobian(p, x);
        const Jacobian3 jb = eval_jacobian(p, mirror(x));
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) CHECK(ja(r, c) == jb(r, c));
    }
}

TEST_CASE("with x3 = 0 the first two equations reduce to the planar van der Pol extension") {
    const SystemParams p = SystemParams::preset(0.07);
    SplitMix64 rng(11u);
    for (int i = 0; i < 50; ++i) {
        const double x1 = rng.uniform(-3.0, 3.0), x2 = rng.uniform(-3.0, 3.0);
        const State3 dx = eval_rhs(p, {x1, x2, 0.0});
        CHECK(dx.x1 == p.a * x2 + p.b * x1 * (p.c - x2 * x2));
        CHECK(dx.x2 == p.d * x1);
    }
}
