#include "ecodyn/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace ecodyn {

namespace {

using Complex = std::complex<double>;
using Roots = std::array<Complex, 3>;

Roots sort_roots(Roots r) {
    // Real roots first (ascending), then the conjugate pair by imaginary part.
    std::stable_sort(r.begin(), r.end(), [](const Complex& a, const Complex& b) {
        const bool ra = a.imag() == 0.0, rb = b.imag() == 0.0;
        if (ra != rb) return ra;
        if (ra) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return r;
}

void polish(const CubicPolynomial& p, Complex& z, bool keep_real) {
    for (int it = 0; it < 2; ++it) {
        const Complex d = p.deriv(z);
        if (std::abs(d) < 1e-300) return;
        const Complex step = p.eval(z) / d;
        z -= keep_real ? Complex(step.real(), 0.0) : step;
    }
    if (keep_real) z = Complex(z.real(), 0.0);
}

Roots companion_roots(const CubicPolynomial& p) {
    Eigen::Matrix3d c;
    c << 0.0, 0.0, -p.c0,
         1.0, 0.0, -p.c1,
         0.0, 1.0, -p.c2;
    const Eigen::EigenSolver<Eigen::Matrix3d> es(c);
    Roots r;
    for (int i = 0; i < 3; ++i) r[i] = es.eigenvalues()(i);
    return sort_roots(r);
}

}  // namespace

Equilibria equilibria(const SystemParams& p) {
    p.validate();
    Equilibria eq;
    eq.points[0] = {0.0, 0.0, 0.0};
    const double radicand = p.b * p.f * p.f + p.a * p.e * p.f;
    if (radicand < 0.0) {
        eq.has_pair = false;
        eq.points[1] = eq.points[2] = eq.points[0];
        return eq;
    }
    const double r1 = std::sqrt(radicand / (p.b * p.e * p.e));
    const double r2 = std::sqrt(radicand / (p.b * p.f * p.f));
    eq.points[1] = {r1, r2, -r1};
    eq.points[2] = mirror(eq.points[1]);
    return eq;
}

CubicPolynomial char_poly_of(const Jacobian3& j) {
    const auto& m = j.m;
    const double tr = m[0][0] + m[1][1] + m[2][2];
    const double minors = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) +
                          (m[0][0] * m[2][2] - m[0][2] * m[2][0]) +
                          (m[0][0] * m[1][1] - m[0][1] * m[1][0]);
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    return {1.0, -tr, minors, -det};
}

CubicPolynomial char_poly(const SystemParams& p, const State3& eq) {
    return char_poly_of(eval_jacobian(p, eq));
}

std::array<std::complex<double>, 3> cubic_roots(const CubicPolynomial& poly) {
    if (poly.c3 != 1.0) throw std::invalid_argument("cubic_roots: polynomial must be monic");
    const double a = poly.c2, b = poly.c1, c = poly.c0;
    const double shift = a / 3.0;
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const double disc = -4.0 * p * p * p - 27.0 * q * q;

    // Near-degenerate (repeated-root) cubics go to the companion matrix.
    if (std::fabs(disc) < 1e-14) return companion_roots(poly);

    Roots r;
    if (disc > 0.0) {
        // three distinct real roots (requires p < 0)
        const double m = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        constexpr double two_pi_3 = 2.0 * std::numbers::pi / 3.0;
        for (int k = 0; k < 3; ++k)
            r[k] = Complex(m * std::cos(theta - two_pi_3 * k) - shift, 0.0);
        for (auto& z : r) polish(poly, z, true);
    } else {
        // one real root and a conjugate pair
        double u, v;
        if (q == 0.0) {
            u = v = 0.0;  // p > 0 here; roots are 0 and +-i*sqrt(p) before shift
        } else {
            const double sq = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
            const double u3 = -q / 2.0 - std::copysign(sq, q);
            u = std::cbrt(u3);
            v = -p / (3.0 * u);
        }
        Complex real_root(u + v - shift, 0.0);
        double im = std::sqrt(3.0) / 2.0 * (u - v);
        if (q == 0.0) im = std::sqrt(p);
        Complex pair(-(u + v) / 2.0 - shift, std::fabs(im));
        polish(poly, real_root, true);
        polish(poly, pair, false);
        r = {real_root, Complex(pair.real(), -std::fabs(pair.imag())),
             Complex(pair.real(), std::fabs(pair.imag()))};
    }
    return sort_roots(r);
}

IoClassification classify_io(const std::array<std::complex<double>, 3>& eig, double tol) {
    IoClassification out;
    out.hyperbolic = std::all_of(eig.begin(), eig.end(),
                                 [tol](const Complex& z) { return std::fabs(z.real()) > tol; });
    int n_real = 0;
    for (const auto& z : eig) n_real += z.imag() == 0.0;
    if (n_real != 1) {
        out.saddle_class = SaddleClass::Other;
        return out;
    }
    const Complex real_eig = eig[0];
    const Complex pair_eig = eig[1];  // sorted layout: real first
    if (!out.hyperbolic)
        out.saddle_class = SaddleClass::Other;
    else if (real_eig.real() > 0.0 && pair_eig.real() < 0.0)
        out.saddle_class = SaddleClass::AttractingFocusSaddle;
    else if (real_eig.real() < 0.0 && pair_eig.real() > 0.0)
        out.saddle_class = SaddleClass::RepellingFocusSaddle;
    else
        out.saddle_class = SaddleClass::Other;
    return out;
}

InstabilityMeasure instability_measure(const std::array<std::complex<double>, 3>& eig, double q) {
    if (!(q > 0.0 && q <= 1.0))
        throw std::invalid_argument("instability_measure: q must be in (0,1]");
    InstabilityMeasure out;
    out.alpha_min = std::numbers::pi;
    for (const auto& z : eig) {
        if (std::abs(z) == 0.0)
            throw std::domain_error("instability_measure: zero eigenvalue has no argument");
        out.alpha_min = std::min(out.alpha_min, std::fabs(std::arg(z)));
    }
    out.iota = q - 2.0 * out.alpha_min / std::numbers::pi;
    if (std::fabs(out.iota) < 1e-12)
        out.verdict = FoVerdict::Critical;
    else
        out.verdict = out.iota > 0.0 ? FoVerdict::Unstable : FoVerdict::AsymptoticallyStable;
    return out;
}

int geometric_multiplicity(const Jacobian3& j, std::complex<double> lambda, double tol) {
    // rank of (J - lambda I) via complex Gaussian elimination with partial pivoting
    std::array<std::array<Complex, 3>, 3> m;
    double scale = 0.0;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            m[r][c] = Complex(j.m[r][c], 0.0) - (r == c ? lambda : Complex(0.0));
            scale = std::max(scale, std::abs(m[r][c]));
        }
    if (scale == 0.0) return 3;
    int rank = 0;
    int row = 0;
    for (int col = 0; col < 3 && row < 3; ++col) {
        int piv = row;
        for (int r = row + 1; r < 3; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) <= tol * scale) continue;
        std::swap(m[piv], m[row]);
        for (int r = row + 1; r < 3; ++r) {
            const Complex f = m[r][col] / m[row][col];
            for (int c = col; c < 3; ++c) m[r][c] -= f * m[row][c];
        }
        ++rank;
        ++row;
    }
    return 3 - rank;
}

StabilityReport analyze_equilibrium(const SystemParams& p, const State3& eq,
                                    std::optional<double> q) {
    StabilityReport rep;
    rep.equilibrium = eq;
    rep.poly = char_poly(p, eq);
    rep.eigenvalues = cubic_roots(rep.poly);
    const auto cls = classify_io(rep.eigenvalues);
    rep.saddle_class = cls.saddle_class;
    rep.hyperbolic = cls.hyperbolic;
    if (q) {
        const auto im = instability_measure(rep.eigenvalues, *q);
        rep.alpha_min = im.alpha_min;
        rep.iota = im.iota;
        rep.fo_verdict = im.verdict;
    } else {
        double amin = std::numbers::pi;
        for (const auto& z : rep.eigenvalues)
            if (std::abs(z) > 0.0) amin = std::min(amin, std::fabs(std::arg(z)));
        rep.alpha_min = amin;
    }
    return rep;
}

}  // namespace ecodyn
