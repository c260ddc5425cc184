#include "ehvortex/field.hpp"

#include <cmath>
#include <stdexcept>

namespace ehv {

void Coupling::validate() const {
    if (!(m > 0.0) || !std::isfinite(m)) throw std::invalid_argument("coupling: electron mass must be positive");
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("coupling: fine-structure constant must be non-negative");
    if (!(scale >= 0.0) || !std::isfinite(scale)) throw std::invalid_argument("coupling: scale must be non-negative");
}

Invariants FieldSample::invariants() const { return ehv::invariants(D, B); }

Invariants invariants(const Vec3& E, const Vec3& B) { return {0.5 * (dot(E, E) - dot(B, B)), dot(E, B)}; }

double lagrangian_density(const Vec3& E, const Vec3& B, const Coupling& c) {
    const auto [S, P] = invariants(E, B);
    return S + c.lambda() * (4.0 * S * S + 7.0 * P * P);
}

Vec3 constitutive_D(const Vec3& E, const Vec3& B, const Coupling& c) {
    const double lam = c.lambda();
    const auto [S, P] = invariants(E, B);
    return (1.0 + 8.0 * lam * S) * E + (14.0 * lam * P) * B;
}

Vec3 inverse_constitutive_E(const Vec3& D, const Vec3& B, const Coupling& c) {
    const double lam = c.lambda();
    // alpha^2 K = -8 lambda s(D, B) = -4 lambda (D^2 - B^2), alpha^2 M = -14 lambda D.B
    const double k = -4.0 * lam * (dot(D, D) - dot(B, B));
    const double mm = -14.0 * lam * dot(D, B);
    return (1.0 + k) * D + mm * B;
}

double hamiltonian_density(const Vec3& D, const Vec3& B, const Coupling& c) {
    const double lam = c.lambda();
    const double s = dot(D, D) - dot(B, B);
    const double p = dot(D, B);
    return 0.5 * (dot(D, D) + dot(B, B)) - lam * s * s - 7.0 * lam * p * p;
}

Vec3 hamiltonian_grad_B(const Vec3& D, const Vec3& B, const Coupling& c) {
    const double lam = c.lambda();
    const double s = dot(D, D) - dot(B, B);
    return (1.0 + 4.0 * lam * s) * B - (14.0 * lam * dot(D, B)) * D;
}

Vec3 hamiltonian_grad_D(const Vec3& D, const Vec3& B, const Coupling& c) {
    const double lam = c.lambda();
    const double s = dot(D, D) - dot(B, B);
    return (1.0 - 4.0 * lam * s) * D - (14.0 * lam * dot(D, B)) * B;
}

std::pair<CVec3, CVec3> to_riemann_silberstein(const Vec3& D, const Vec3& B) {
    const double r = 1.0 / std::sqrt(2.0);
    CVec3 plus{}, minus{};
    for (int k = 0; k < 3; ++k) {
        plus[k] = {r * D[k], r * B[k]};
        minus[k] = {r * D[k], -r * B[k]};
    }
    return {plus, minus};
}

std::pair<Vec3, Vec3> from_riemann_silberstein(const CVec3& fplus) {
    const double s = std::sqrt(2.0);
    Vec3 D{}, B{};
    for (int k = 0; k < 3; ++k) {
        D[k] = s * fplus[k].real();
        B[k] = s * fplus[k].imag();
    }
    return {D, B};
}

std::complex<double> rs_squared(const CVec3& f) { return f[0] * f[0] + f[1] * f[1] + f[2] * f[2]; }

}  // namespace ehv
