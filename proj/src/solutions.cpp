#include "ehvortex/solutions.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ehv {

namespace {

const MPoly X = MPoly::var(Var::x);
const MPoly Y = MPoly::var(Var::y);
const MPoly Z = MPoly::var(Var::z);
const MPoly T = MPoly::var(Var::t);
const MPoly I = MPoly::i();

MPoly q(long n, long d = 1) { return MPoly(ComplexRational(Rational(n, d))); }
MPoly c(const Rational& r) { return MPoly(ComplexRational(r)); }

}  // namespace

std::string to_string(Case k) { return k == Case::RingA ? "a" : "b"; }

std::string to_string(CorrectionSource s) { return s == CorrectionSource::Printed ? "printed" : "perturbative"; }

Case parse_case(const std::string& s) {
    if (s == "a" || s == "ring") return Case::RingA;
    if (s == "b" || s == "pair") return Case::PairB;
    throw std::invalid_argument("unknown case '" + s + "' (expected a or b)");
}

CorrectionSource parse_correction_source(const std::string& s) {
    if (s == "printed") return CorrectionSource::Printed;
    if (s == "perturbative") return CorrectionSource::Perturbative;
    throw std::invalid_argument("unknown correction source '" + s + "' (expected printed or perturbative)");
}

Mutation Mutation::parse(const std::string& spec) {
    auto dot = spec.find('.');
    auto colon = spec.find(':');
    if (dot == std::string::npos || colon == std::string::npos || colon < dot + 2)
        throw std::invalid_argument("mutation must look like beta.x:1e-3, got '" + spec + "'");
    const std::string vec = spec.substr(0, dot);
    const std::string comp = spec.substr(dot + 1, colon - dot - 1);
    Mutation m;
    if (vec == "alpha") m.power = 3;
    else if (vec == "beta") m.power = 2;
    else if (vec == "gamma") m.power = 1;
    else throw std::invalid_argument("mutation vector must be alpha, beta or gamma, got '" + vec + "'");
    if (comp.size() != 1 || comp[0] < 'x' || comp[0] > 'z')
        throw std::invalid_argument("mutation component must be x, y or z, got '" + comp + "'");
    m.component = comp[0] - 'x';
    m.relative = parse_rational(spec.substr(colon + 1));
    return m;
}

void SolutionParams::validate() const {
    if (a <= 0) throw std::invalid_argument("a must be positive");
    coupling().validate();
}

VecPoly classical_seed(const SolutionParams& p) {
    const MPoly a = c(p.a);
    if (p.kind == Case::RingA) return {Y + I * T, Z - a + I * (a + T), X + I * T};
    return {Y + T, a - I * (Z + a - T), X + I * T};
}

CorrectionCoefficients printed_coefficients(const SolutionParams& p) {
    const MPoly a = c(p.a);
    // alpha^2 / m^4 expressed through lambda = 2 alpha^2 / (45 m^4)
    const MPoly per_lambda = q(45, 2);
    CorrectionCoefficients k;
    if (p.kind == Case::RingA) {
        const MPoly pre = q(8, 3) * per_lambda;
        k.cubic = scale(VecPoly{q(1), q(1), q(1)}, ComplexRational(Rational(0), Rational(-128, 135) * Rational(45, 2)));
        k.quadratic = {pre * (q(1, 3) * (Z - a) - q(2, 5) * Y - q(1, 3) * I * a),
                       pre * (q(2, 5) * (a - Z) + q(1, 3) * X - q(1, 3) * I * a),
                       pre * (-q(2, 5) * X + q(1, 3) * Y)};
        k.linear = {pre * (q(2, 3) * a * (Z - a) - q(1, 15) * I * (q(11) * a * a - q(12) * a * Z + q(6) * Z * Z)),
                    pre * (-q(2, 5) * I * X * X),
                    pre * (-q(2, 5) * I * Y * Y)};
    } else {
        const MPoly pre = q(8, 15) * per_lambda;
        k.cubic = {-pre * q(2), -pre * q(17, 9) * I, -pre * q(17, 9) * I};
        k.quadratic = {pre * (q(2) * (Z - Y + a) + q(5, 3) * I * a),
                       pre * (q(5, 3) * (X - a) + q(2) * I * (Z + a)),
                       pre * (-q(2) * X + q(2) * I * Y)};
        k.linear = {-pre * (q(11, 3) * a * a + q(4) * a * Z + q(2) * Z * Z + q(10, 3) * I * a * (Z + a)),
                    -pre * (q(2) * I * X * X),
                    -pre * (q(2) * I * Y * Y)};
    }
    return k;
}

VecPoly perturbative_correction(const SolutionParams& p) {
    const VecPoly f = classical_seed(p);
    const VecPoly fm = real_field_conjugate(f);
    const MPoly mix = scale(dot(f, f), 11) - scale(dot(fm, fm), 3);
    const VecPoly source = scale(curl(multiply(fm, mix)), ComplexRational::i());

    const int source_t_degree = [&] {
        int d = 0;
        for (int k = 0; k < 3; ++k)
            for (const auto& [m, coeff] : source[k].terms()) d = std::max<int>(d, m[Var::t]);
        return d;
    }();

    // g = sum_{n>=1} t^n g_n with (n+1) g_{n+1} = -i curl g_n + S_n and g_0 = 0
    VecPoly g;
    VecPoly gn;  // g_0
    for (int n = 0; n <= kDefaultDegreeCap; ++n) {
        VecPoly rhs = scale(curl(gn), ComplexRational(Rational(0), Rational(-1))) + coefficient_of(source, Var::t, n);
        VecPoly next = scale(rhs, ComplexRational(Rational(1, n + 1)));
        if (next.is_zero() && n >= source_t_degree) break;
        g += times_power(next, Var::t, n + 1);
        gn = std::move(next);
    }
    return g;
}

VecPoly quantum_correction(const SolutionParams& p) {
    VecPoly g;
    if (p.source == CorrectionSource::Printed) {
        const auto k = printed_coefficients(p);
        g = times_power(k.cubic, Var::t, 3) + times_power(k.quadratic, Var::t, 2) + times_power(k.linear, Var::t, 1);
    } else {
        g = perturbative_correction(p);
    }
    if (p.mutation) {
        const Mutation& mu = *p.mutation;
        MPoly part = times_power(coefficient_of(g[mu.component], Var::t, mu.power), Var::t, mu.power);
        g[mu.component] += scale(part, ComplexRational(mu.relative));
    }
    return with_grade(g, 1);
}

double AnalyticSolution::lambda(double coupling_scale) const {
    return quantum ? params.coupling(coupling_scale).lambda() : 0.0;
}

NumericVecPoly AnalyticSolution::numeric(double coupling_scale) const {
    return NumericVecPoly(fplus, lambda(coupling_scale));
}

AnalyticSolution make_solution(const SolutionParams& params, bool quantum) {
    params.validate();
    AnalyticSolution s;
    s.params = params;
    s.quantum = quantum;
    s.fplus = classical_seed(params);
    if (quantum) s.fplus += quantum_correction(params);
    return s;
}

std::map<int, VecPoly> maxwell_residual(const VecPoly& fplus, int max_grade) {
    const VecPoly fminus = real_field_conjugate(fplus);
    const int inner = max_grade - 1;  // the nonlinear term carries one extra power of lambda
    std::map<int, VecPoly> out;
    VecPoly r = differentiate(fplus, Var::t) + scale(curl(fplus), ComplexRational::i());
    r = truncate_grade(r, max_grade);
    if (inner >= 0) {
        const MPoly mix = scale(dot(fplus, fplus, inner), 11) - scale(dot(fminus, fminus, inner), 3);
        const VecPoly cubic = multiply(fminus, mix, inner);
        r -= with_grade(scale(curl(cubic), ComplexRational::i()), 1);
    }
    out = coupling_grade(r);
    for (int g = 0; g <= max_grade; ++g) out[g];
    return out;
}

std::map<int, bool> divergence_check(const VecPoly& fplus) {
    std::map<int, bool> out;
    for (const auto& [g, part] : coupling_grade(fplus)) out[g] = divergence(part).is_zero();
    return out;
}

RingLocus classical_ring_locus(double a, double t) {
    if (!(a > 0.0)) throw std::invalid_argument("classical_ring_locus: a must be positive");
    RingLocus loc;
    loc.sphere_center = {0.0, 0.0, a};
    loc.sphere_radius = std::sqrt(a * a + 2.0 * a * t + 3.0 * t * t);
    loc.plane_normal = {2.0 * t, 2.0 * t, 2.0 * a + 2.0 * t};
    loc.plane_offset = 2.0 * a * a + 2.0 * a * t;
    const double n = std::sqrt(dot(loc.plane_normal, loc.plane_normal));
    if (n > 0.0) {
        const double d = std::abs(dot(loc.plane_normal, loc.sphere_center) - loc.plane_offset) / n;
        if (d <= loc.sphere_radius) loc.circle_radius = std::sqrt(loc.sphere_radius * loc.sphere_radius - d * d);
    }
    return loc;
}

bool VerifyReport::asserted_grades_vanish() const {
    for (int g : {0, 1}) {
        auto it = residual_terms.find(g);
        if (it == residual_terms.end() || it->second != 0) return false;
    }
    return true;
}

bool VerifyReport::passed() const {
    if (!asserted_grades_vanish() || !initial_condition_ok) return false;
    for (const auto& [g, ok] : divergence_zero)
        if (!ok) return false;
    return true;
}

std::string VerifyReport::to_key_value() const {
    std::ostringstream os;
    os << "case=" << to_string(kind) << '\n';
    os << "correction=" << to_string(source) << '\n';
    os << "mutated=" << (mutated ? "true" : "false") << '\n';
    for (const auto& [g, n] : residual_terms) {
        const bool asserted = g <= 1;
        os << "residual.grade" << g << ".terms=" << n << '\n';
        os << "residual.grade" << g << ".status="
           << (asserted ? (n == 0 ? "zero" : "NONZERO") : (n == 0 ? "zero(reported)" : "feedthrough(reported)"))
           << '\n';
    }
    for (const auto& [g, ok] : divergence_zero)
        os << "divergence.grade" << g << "=" << (ok ? "zero" : "NONZERO") << '\n';
    os << "initial_condition=" << (initial_condition_ok ? "match" : "MISMATCH") << '\n';
    os << "result=" << (passed() ? "PASS" : "FAIL") << '\n';
    return os.str();
}

VerifyReport verify(const SolutionParams& params) {
    params.validate();
    VerifyReport rep;
    rep.kind = params.kind;
    rep.source = params.source;
    rep.mutated = params.mutation.has_value();

    const AnalyticSolution sol = make_solution(params, true);
    for (const auto& [g, part] : maxwell_residual(sol.fplus, 2)) {
        std::size_t n = 0;
        for (int k = 0; k < 3; ++k) n += part[k].size();
        rep.residual_terms[g] = n;
    }
    rep.divergence_zero = divergence_check(sol.fplus);
    rep.initial_condition_ok = coefficient_of(quantum_correction(params), Var::t, 0).is_zero();
    return rep;
}

}  // namespace ehv
