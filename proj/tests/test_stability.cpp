#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "ecodyn/rng.hpp"
#include "ecodyn/stability.hpp"
#include "oracles.hpp"

using namespace ecodyn;

namespace {

// Closed-form characteristic coefficients at the equilibria for the preset
// c = 1, derived independently from trace / minor sum / determinant.
struct SymbolicX0 {
    double c2, c1, c0;
    explicit SymbolicX0(const SystemParams& p)
        : c2(-p.b * p.c), c1(p.d * p.f - p.a * p.d), c0(-(p.b * p.c * p.d * p.f + p.a * p.d * p.e)) {}
};

struct SymbolicX1 {
    double c2, c1, c0;
    explicit SymbolicX1(const SystemParams& p)
        : c2(p.a * p.e / p.f),
          c1(p.d * p.f + p.a * p.d + 2.0 * p.b * p.d * p.f / p.e),
          c0(2.0 * p.a * p.d * p.e + 2.0 * p.b * p.d * p.f) {}
};

}  // namespace

TEST_CASE("equilibria reproduce the published 4-decimal coordinates") {
    struct Row {
        double a, x1, x2;
    };
    // (x1, x2, -x1) for X1*; X2* is the mirror
    const Row rows[] = {{0.05, 2.8828, 2.1909}, {0.052, 2.9280, 2.2253}, {0.0509, 2.9032, 2.2064}};
    for (const Row& r : rows) {
        const Equilibria eq = equilibria(SystemParams::preset(r.a));
        REQUIRE(eq.has_pair);
        CAPTURE(r.a);
        CHECK(std::fabs(eq.points[1].x1 - r.x1) < 5e-5);
        CHECK(std::fabs(eq.points[1].x2 - r.x2) < 5e-5);
        CHECK(eq.points[1].x3 == -eq.points[1].x1);
        CHECK(eq.points[2] == mirror(eq.points[1]));
    }
}

TEST_CASE("equilibria have vanishing right-hand side") {
    for (double a : {0.0, 0.05, 0.052, 0.0509, 0.2}) {
        const SystemParams p = SystemParams::preset(a);
        const Equilibria eq = equilibria(p);
        for (const State3& x : eq.points) {
            const State3 r = eval_rhs(p, x);
            CHECK(inf_norm(r) < 1e-12);
        }
    }
}

TEST_CASE("negative radicand leaves only the origin, flagged") {
    const Equilibria eq = equilibria(SystemParams::preset(-1.0));
    CHECK_FALSE(eq.has_pair);
    CHECK(eq.points[0] == State3{0.0, 0.0, 0.0});
}

TEST_CASE("characteristic polynomial at the origin, a = 0") {
    const SystemParams p = SystemParams::preset(0.0);
    const CubicPolynomial poly = char_poly(p, {0.0, 0.0, 0.0});
    CHECK(poly.c3 == 1.0);
    CHECK(poly.c2 == doctest::Approx(-0.01).epsilon(1e-12));
    CHECK(poly.c1 == doctest::Approx(0.00796175).epsilon(1e-12));
    CHECK(poly.c0 == doctest::Approx(-7.96175e-5).epsilon(1e-12));
}

TEST_CASE("numeric characteristic coefficients equal the symbolic forms to 1e-12") {
    for (int k = 0; k <= 40; ++k) {
        const double a = 0.2 * static_cast<double>(k) / 40.0;
        const SystemParams p = SystemParams::preset(a);
        const Equilibria eq = equilibria(p);
        const CubicPolynomial p0 = char_poly(p, eq.points[0]);
        const SymbolicX0 s0(p);
        CHECK(std::fabs(p0.c2 - s0.c2) < 1e-12);
        CHECK(std::fabs(p0.c1 - s0.c1) < 1e-12);
        CHECK(std::fabs(p0.c0 - s0.c0) < 1e-12);
        const CubicPolynomial p1 = char_poly(p, eq.points[1]);
        const SymbolicX1 s1(p);
        CHECK(std::fabs(p1.c2 - s1.c2) < 1e-12);
        CHECK(std::fabs(p1.c1 - s1.c1) < 1e-12);
        CHECK(std::fabs(p1.c0 - s1.c0) < 1e-12);
    }
}

TEST_CASE("origin polynomial agrees with the published rounded coefficients to 1e-4") {
    for (int k = 0; k <= 200; ++k) {
        const double a = 0.2 * static_cast<double>(k) / 200.0;
        const CubicPolynomial poly = char_poly(SystemParams::preset(a), {0.0, 0.0, 0.0});
        CHECK(std::fabs(poly.c2 - (-0.0100)) < 1e-4);
        CHECK(std::fabs(poly.c1 - (0.0080 - 0.0318 * a)) < 1e-4);
        CHECK(std::fabs(poly.c0 - (-0.0060 * a - 0.0001)) < 1e-4);
    }
}

TEST_CASE("pair polynomial constant term agrees with the published rounded form to 1e-4") {
    // Only the constant coefficient of the published X1,2 polynomial is
    // consistent with the system's own Jacobian; see the symbolic checks
    // above for the exact lambda^2 and lambda coefficients.
    for (int k = 0; k <= 200; ++k) {
        const double a = 0.2 * static_cast<double>(k) / 200.0;
        const SystemParams p = SystemParams::preset(a);
        const Equilibria eq = equilibria(p);
        const CubicPolynomial poly = char_poly(p, eq.points[1]);
        CHECK(std::fabs(poly.c0 - (0.0121 * a + 0.0002)) < 1e-4);
    }
}

TEST_CASE("origin coefficient signs: three changes below a = 0.2, one above 0.2516") {
    const CubicPolynomial low = char_poly(SystemParams::preset(0.1), {0.0, 0.0, 0.0});
    CHECK(low.c3 > 0.0);
    CHECK(low.c2 < 0.0);
    CHECK(low.c1 > 0.0);
    CHECK(low.c0 < 0.0);
    const CubicPolynomial high = char_poly(SystemParams::preset(0.3), {0.0, 0.0, 0.0});
    CHECK(high.c3 > 0.0);
    CHECK(high.c2 < 0.0);
    CHECK(high.c1 < 0.0);
    CHECK(high.c0 < 0.0);
}

TEST_CASE("cubic_roots solves lambda^3 - lambda") {
    const auto r = cubic_roots({1.0, 0.0, -1.0, 0.0});
    CHECK(r[0] == std::complex<double>(-1.0, 0.0));
    CHECK(std::abs(r[1]) < 1e-12);
    CHECK(r[2] == std::complex<double>(1.0, 0.0));
}

TEST_CASE("cubic_roots against the companion-matrix oracle on 1000 random cubics") {
    SplitMix64 rng(424242u);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const CubicPolynomial poly{1.0, rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
                                   rng.uniform(-2.0, 2.0)};
        const auto mine = cubic_roots(poly);
        const auto ref = oracles::companion_eigenvalues(poly);
        worst = std::max(worst, oracles::root_set_distance(mine, ref));
        for (const auto& z : mine) CHECK(std::abs(poly.eval(z)) < 1e-10);
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("cubic_roots: residuals stay small near repeated roots") {
    // (lambda - 1)^2 (lambda + 2) = lambda^3 - 3 lambda + 2
    const auto r = cubic_roots({1.0, 0.0, -3.0, 2.0});
    for (const auto& z : r) CHECK(std::abs(CubicPolynomial{1.0, 0.0, -3.0, 2.0}.eval(z)) < 1e-10);
}

TEST_CASE("origin eigenvalues: one positive real root, stable spiral pair") {
    const CubicPolynomial poly = char_poly(SystemParams::preset(0.05), {0.0, 0.0, 0.0});
    const auto r = cubic_roots(poly);
    CHECK(r[0].imag() == 0.0);
    CHECK(r[0].real() > 0.0);
    CHECK(r[1].imag() != 0.0);
    CHECK(r[1].real() < 0.0);
    CHECK(r[2] == std::conj(r[1]));
}

TEST_CASE("at a = 0 the origin is degenerate: imaginary pair, not hyperbolic") {
    // (lambda - bc) divides the polynomial exactly when a = 0, leaving
    // lambda^2 + df: a positive real eigenvalue and a purely imaginary pair.
    const SystemParams p = SystemParams::preset(0.0);
    const StabilityReport r = analyze_equilibrium(p, {0.0, 0.0, 0.0});
    CHECK_FALSE(r.hyperbolic);
    CHECK(r.saddle_class == SaddleClass::Other);
    CHECK(r.eigenvalues[0].real() == doctest::Approx(p.b * p.c).epsilon(1e-10));
    CHECK(std::fabs(r.eigenvalues[1].real()) < 1e-12);
    CHECK(std::fabs(r.eigenvalues[1].imag()) ==
          doctest::Approx(std::sqrt(p.d * p.f)).epsilon(1e-10));
}

TEST_CASE("saddle classification over the 201-point grid, a > 0") {
    for (int k = 1; k <= 200; ++k) {
        const double a = 0.2 * static_cast<double>(k) / 200.0;
        const SystemParams p = SystemParams::preset(a);
        const Equilibria eq = equilibria(p);
        CAPTURE(a);
        const StabilityReport r0 = analyze_equilibrium(p, eq.points[0]);
        CHECK(r0.saddle_class == SaddleClass::AttractingFocusSaddle);
        CHECK(r0.hyperbolic);
        const StabilityReport r1 = analyze_equilibrium(p, eq.points[1]);
        CHECK(r1.saddle_class == SaddleClass::RepellingFocusSaddle);
        CHECK(r1.hyperbolic);
        const StabilityReport r2 = analyze_equilibrium(p, eq.points[2]);
        CHECK(r2.saddle_class == SaddleClass::RepellingFocusSaddle);
        CHECK(r2.hyperbolic);
        // symmetric partners share their spectrum exactly
        for (int i = 0; i < 3; ++i) CHECK(r1.eigenvalues[i] == r2.eigenvalues[i]);
    }
}

TEST_CASE("roots on the imaginary axis classify as Other, not hyperbolic") {
    // (lambda + 1)(lambda^2 + 1)
    const auto r = cubic_roots({1.0, 1.0, 1.0, 1.0});
    const auto cls = classify_io(r);
    CHECK(cls.saddle_class == SaddleClass::Other);
    CHECK_FALSE(cls.hyperbolic);
}

TEST_CASE("eigenvalue residuals below 1e-10 at the equilibria") {
    for (double a : {0.01, 0.05, 0.052, 0.1, 0.2}) {
        const SystemParams p = SystemParams::preset(a);
        const Equilibria eq = equilibria(p);
        for (int e = 0; e < 3; ++e) {
            const CubicPolynomial poly = char_poly(p, eq.points[e]);
            for (const auto& z : cubic_roots(poly)) CHECK(std::abs(poly.eval(z)) < 1e-10);
        }
    }
}

TEST_CASE("instability measure: positive real eigenvalue pins iota = q") {
    const SystemParams p = SystemParams::preset(0.05);
    const auto r = cubic_roots(char_poly(p, {0.0, 0.0, 0.0}));
    const auto im = instability_measure(r, 0.9995);
    CHECK(im.alpha_min == 0.0);  // arg of a positive real eigenvalue
    CHECK(im.iota == 0.9995);
    CHECK(im.verdict == FoVerdict::Unstable);
}

TEST_CASE("instability measure by hand: {-1, -1 +- i} at q = 0.5 gives iota = -1") {
    const std::array<std::complex<double>, 3> eig{std::complex<double>(-1.0, 0.0),
                                                  std::complex<double>(-1.0, -1.0),
                                                  std::complex<double>(-1.0, 1.0)};
    const auto im = instability_measure(eig, 0.5);
    CHECK(im.alpha_min == doctest::Approx(3.0 * std::numbers::pi / 4.0).epsilon(1e-15));
    CHECK(im.iota == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(im.verdict == FoVerdict::AsymptoticallyStable);
}

TEST_CASE("iota > 0 for all three equilibria across [0, 0.2] at q = 0.9995") {
    for (int k = 0; k <= 200; ++k) {
        const double a = 0.2 * static_cast<double>(k) / 200.0;
        const SystemParams p = SystemParams::preset(a);
        const Equilibria eq = equilibria(p);
        for (int e = 0; e < 3; ++e) {
            const StabilityReport rep = analyze_equilibrium(p, eq.points[e], 0.9995);
            REQUIRE(rep.iota.has_value());
            CHECK(*rep.iota > 0.0);
            CHECK(*rep.fo_verdict == FoVerdict::Unstable);
        }
    }
}

TEST_CASE("at q = 1 instability agrees with the sign of the leading real part") {
    SplitMix64 rng(99u);
    for (int i = 0; i < 200; ++i) {
        const CubicPolynomial poly{1.0, rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
                                   rng.uniform(-2.0, 2.0)};
        const auto r = cubic_roots(poly);
        bool zero_eig = false;
        double max_re = -1e300;
        for (const auto& z : r) {
            if (std::abs(z) == 0.0) zero_eig = true;
            max_re = std::max(max_re, z.real());
        }
        if (zero_eig) continue;
        const auto im = instability_measure(r, 1.0);
        if (im.verdict == FoVerdict::Critical) continue;  // on the axis
        CHECK((im.iota > 0.0) == (max_re > 0.0));
    }
}

TEST_CASE("zero eigenvalue has no argument") {
    const std::array<std::complex<double>, 3> eig{std::complex<double>(0.0, 0.0),
                                                  std::complex<double>(-1.0, 0.0),
                                                  std::complex<double>(1.0, 0.0)};
    CHECK_THROWS_AS(instability_measure(eig, 0.9), std::domain_error);
}

TEST_CASE("geometric multiplicity via the rank test") {
    Jacobian3 ident;
    ident.m = {{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}};
    CHECK(geometric_multiplicity(ident, 1.0) == 3);

    Jacobian3 defective;
    defective.m = {{{1.0, 1.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 2.0}}};
    CHECK(geometric_multiplicity(defective, 1.0) == 1);
    CHECK(geometric_multiplicity(defective, 2.0) == 1);
    CHECK(geometric_multiplicity(defective, 5.0) == 0);
}
