#pragma once

// Closed-form vortex solutions of the Euler-Heisenberg field equations and
// their exact symbolic verification.
//
// Polynomials here are graded by the formal coupling lambda = 2 alpha^2/(45 m^4):
// grade 0 is the Maxwell seed, grade 1 the first quantum correction.

#include "ehvortex/field.hpp"
#include "ehvortex/poly.hpp"

#include <map>
#include <optional>
#include <string>

namespace ehv {

enum class Case { RingA, PairB };

/// Where the grade-1 correction comes from.
///  Printed: the closed-form t^3 a + t^2 b + t g coefficient vectors exactly as published.
///  Perturbative: the unique polynomial solution of the grade-1 equation with zero initial
///  value, generated by Taylor recursion in t.
enum class CorrectionSource { Printed, Perturbative };

std::string to_string(Case c);
std::string to_string(CorrectionSource s);
Case parse_case(const std::string& s);
CorrectionSource parse_correction_source(const std::string& s);

/// Test hook: scales one component of the t^power part of the correction by (1 + relative).
/// power 3, 2, 1 select the cubic, quadratic and linear coefficient vectors.
struct Mutation {
    int power = 2;
    int component = 0;
    Rational relative{0};

    /// "beta.x:1e-3" style; alpha|beta|gamma select powers 3|2|1.
    static Mutation parse(const std::string& spec);
};

struct SolutionParams {
    Case kind = Case::RingA;
    Rational a{1};
    double m = 1.0;
    double alpha = kFineStructure;
    CorrectionSource source = CorrectionSource::Printed;
    std::optional<Mutation> mutation;

    Coupling coupling(double scale = 1.0) const { return {alpha, m, scale}; }
    void validate() const;
};

/// Coefficient vectors of the correction, in units of lambda (alpha^2/m^4 = 45 lambda / 2).
struct CorrectionCoefficients {
    VecPoly cubic;      // multiplies t^3
    VecPoly quadratic;  // multiplies t^2
    VecPoly linear;     // multiplies t
};

VecPoly classical_seed(const SolutionParams& params);

CorrectionCoefficients printed_coefficients(const SolutionParams& params);

/// Grade-1 correction (carries one power of lambda), honouring params.source and params.mutation.
VecPoly quantum_correction(const SolutionParams& params);

/// Taylor-recursion solution g of dg/dt = -i curl g + i curl[conj(f)(11 f.f - 3 conj(f).conj(f))], g(t=0) = 0,
/// for the seed f of params; returned ungraded (lambda factored out).
VecPoly perturbative_correction(const SolutionParams& params);

struct AnalyticSolution {
    VecPoly fplus;  // graded in lambda
    SolutionParams params;
    bool quantum = true;

    /// F+ with lambda set to the numeric value of params' coupling times scale.
    NumericVecPoly numeric(double coupling_scale = 1.0) const;
    double lambda(double coupling_scale = 1.0) const;
};

AnalyticSolution make_solution(const SolutionParams& params, bool quantum);

/// Residual  dF+/dt + i curl F+ - i lambda curl[F-(11 F+^2 - 3 F-^2)],  F- = real_field_conjugate(F+),
/// split by coupling grade and truncated above max_grade. Every grade 0..max_grade is present.
std::map<int, VecPoly> maxwell_residual(const VecPoly& fplus, int max_grade = 2);

/// Per-grade: is the divergence the zero polynomial?
std::map<int, bool> divergence_check(const VecPoly& fplus);

struct RingLocus {
    Vec3 sphere_center{};
    double sphere_radius = 0;
    Vec3 plane_normal{};  // unnormalised: (2t, 2t, 2a + 2t)
    double plane_offset = 0;  // plane is normal . r = offset
    std::optional<double> circle_radius;
};

/// Classical RingA vortex as the intersection of
///   x^2 + y^2 + (z-a)^2 - a^2 - 2at - 3t^2 = 0  and  2az + 2t(x+y+z-a) - 2a^2 = 0.
RingLocus classical_ring_locus(double a, double t);

struct VerifyReport {
    Case kind = Case::RingA;
    CorrectionSource source = CorrectionSource::Printed;
    std::map<int, std::size_t> residual_terms;  // grade -> number of surviving terms
    std::map<int, bool> divergence_zero;
    bool initial_condition_ok = false;  // correction vanishes at t=0
    bool mutated = false;

    bool asserted_grades_vanish() const;
    bool passed() const;
    /// key=value lines.
    std::string to_key_value() const;
};

VerifyReport verify(const SolutionParams& params);

}  // namespace ehv
