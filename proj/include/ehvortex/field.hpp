#pragma once

// Pointwise Euler-Heisenberg physics in natural units (hbar = c = 1).
//
// All nonlinear prefactors are expressed through the single coupling
//   lambda = 2 alpha^2 / (45 m^4),
// so for example 16 alpha^2/(45 m^4) = 8 lambda and 28 alpha^2/(45 m^4) = 14 lambda.

#include <array>
#include <complex>
#include <optional>
#include <utility>

namespace ehv {

using Vec3 = std::array<double, 3>;
using CVec3 = std::array<std::complex<double>, 3>;

inline constexpr double kFineStructure = 1.0 / 137.035999;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

struct Invariants {
    double S = 0;  ///< (E^2 - B^2)/2
    double P = 0;  ///< E.B
};

/// Euler-Heisenberg coupling. `scale` multiplies lambda for demonstration runs
/// where the physical correction is below plotting resolution.
struct Coupling {
    double alpha = kFineStructure;
    double m = 1.0;
    double scale = 1.0;

    static Coupling physical() { return {}; }
    static Coupling classical() { return {0.0, 1.0, 1.0}; }

    /// Throws std::invalid_argument unless m > 0, alpha >= 0, scale >= 0.
    void validate() const;

    double lambda() const { return scale * 2.0 * alpha * alpha / (45.0 * m * m * m * m); }
};

struct FieldSample {
    Vec3 D{};
    Vec3 B{};
    std::optional<Vec3> E;

    /// S, P with D standing in for E; their combination equals F+.F+.
    Invariants invariants() const;
};

Invariants invariants(const Vec3& E, const Vec3& B);

double lagrangian_density(const Vec3& E, const Vec3& B, const Coupling& c);

/// D = dL/dE.
Vec3 constitutive_D(const Vec3& E, const Vec3& B, const Coupling& c);

/// E(D, B), valid through order alpha^2.
Vec3 inverse_constitutive_E(const Vec3& D, const Vec3& B, const Coupling& c);

double hamiltonian_density(const Vec3& D, const Vec3& B, const Coupling& c);

/// dH/dB and dH/dD in closed form.
Vec3 hamiltonian_grad_B(const Vec3& D, const Vec3& B, const Coupling& c);
Vec3 hamiltonian_grad_D(const Vec3& D, const Vec3& B, const Coupling& c);

/// F+- = (D +- iB)/sqrt(2).
std::pair<CVec3, CVec3> to_riemann_silberstein(const Vec3& D, const Vec3& B);

/// Inverse of the map above for F+: D = sqrt(2) Re F+, B = sqrt(2) Im F+.
std::pair<Vec3, Vec3> from_riemann_silberstein(const CVec3& fplus);

/// Unconjugated square F.F.
std::complex<double> rs_squared(const CVec3& f);

}  // namespace ehv
