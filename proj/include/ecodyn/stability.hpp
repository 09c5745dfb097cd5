#pragma once

// Closed-form equilibria, characteristic polynomials, cubic eigenvalues,
// integer-order saddle classification, and the fractional-order instability
// measure iota = q - 2*alpha_min/pi.

#include <array>
#include <complex>
#include <optional>

#include "ecodyn/state.hpp"
#include "ecodyn/system.hpp"

namespace ecodyn {

/// Monic cubic c3*l^3 + c2*l^2 + c1*l + c0 with c3 = 1.
struct CubicPolynomial {
    double c3 = 1.0;
    double c2 = 0.0;
    double c1 = 0.0;
    double c0 = 0.0;

    std::complex<double> eval(std::complex<double> z) const {
        return ((c3 * z + c2) * z + c1) * z + c0;
    }
    std::complex<double> deriv(std::complex<double> z) const {
        return (3.0 * c3 * z + 2.0 * c2) * z + c1;
    }
};

struct Equilibria {
    std::array<State3, 3> points;  // X0 = origin, X1, X2 = -X1
    bool has_pair = true;          // false when the radicand is negative
};

/// X0 = (0,0,0) and the symmetric pair X1,2 = (±r1, ±r2, ∓r1) with
/// r1 = sqrt((b f^2 + a e f)/(b e^2)), r2 = sqrt((b f^2 + a e f)/(b f^2)).
Equilibria equilibria(const SystemParams& p);

/// Monic characteristic polynomial of the Jacobian at eq.
CubicPolynomial char_poly(const SystemParams& p, const State3& eq);
CubicPolynomial char_poly_of(const Jacobian3& j);

/// Three roots, conjugate-paired when complex; real roots first (ascending),
/// then the pair ordered by imaginary part. Every root satisfies
/// |P(root)| < 1e-10 for coefficients of moderate size.
std::array<std::complex<double>, 3> cubic_roots(const CubicPolynomial& poly);

enum class SaddleClass { AttractingFocusSaddle, RepellingFocusSaddle, Other };

struct IoClassification {
    SaddleClass saddle_class = SaddleClass::Other;
    bool hyperbolic = false;
};

/// AttractingFocusSaddle (index 1): one real eigenvalue > 0 plus a complex
/// pair with negative real part. RepellingFocusSaddle (index 2): one real
/// eigenvalue < 0 plus a pair with positive real part.
IoClassification classify_io(const std::array<std::complex<double>, 3>& eig, double tol = 1e-9);

enum class FoVerdict { Unstable, AsymptoticallyStable, Critical };

struct InstabilityMeasure {
    double iota = 0.0;
    double alpha_min = 0.0;  // smallest |arg(eigenvalue)|
    FoVerdict verdict = FoVerdict::Critical;
};

/// iota = q - 2*alpha_min/pi. Positive means the fractional-order
/// equilibrium is unstable. Throws std::domain_error on a zero eigenvalue.
InstabilityMeasure instability_measure(const std::array<std::complex<double>, 3>& eig, double q);

/// Dimension of the eigenspace of lambda, via a rank test of J - lambda*I.
int geometric_multiplicity(const Jacobian3& j, std::complex<double> lambda, double tol = 1e-9);

struct StabilityReport {
    State3 equilibrium;
    CubicPolynomial poly;
    std::array<std::complex<double>, 3> eigenvalues{};
    SaddleClass saddle_class = SaddleClass::Other;
    bool hyperbolic = false;
    double alpha_min = 0.0;
    std::optional<double> iota;            // present when q was supplied
    std::optional<FoVerdict> fo_verdict;
};

StabilityReport analyze_equilibrium(const SystemParams& p, const State3& eq,
                                    std::optional<double> q = std::nullopt);

}  // namespace ecodyn
