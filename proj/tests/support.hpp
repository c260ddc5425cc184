#pragma once

#include "ehvortex/poly.hpp"

#include <complex>
#include <random>

namespace ehv::testing {

inline MPoly random_poly(std::mt19937& rng, int max_degree, int terms, bool complex_coeffs = true) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 5);
    MPoly p;
    for (int n = 0; n < terms; ++n) {
        Monomial m;
        int budget = deg(rng);
        for (int v = 0; v < 4 && budget > 0; ++v) {
            std::uniform_int_distribution<int> pick(0, budget);
            const int e = v == 3 ? budget : pick(rng);
            m.exp[v] = static_cast<std::uint8_t>(e);
            budget -= e;
        }
        ComplexRational c(Rational(num(rng), den(rng)), complex_coeffs ? Rational(num(rng), den(rng)) : Rational(0));
        p += MPoly::term(m, c);
    }
    return p;
}

inline VecPoly random_vecpoly(std::mt19937& rng, int max_degree, int terms) {
    return {random_poly(rng, max_degree, terms), random_poly(rng, max_degree, terms),
            random_poly(rng, max_degree, terms)};
}

inline Point4 random_point(std::mt19937& rng, double half = 4.0) {
    std::uniform_real_distribution<double> u(-half, half);
    return {u(rng), u(rng), u(rng), u(rng)};
}

inline MPoly X() { return MPoly::var(Var::x); }
inline MPoly Y() { return MPoly::var(Var::y); }
inline MPoly Z() { return MPoly::var(Var::z); }
inline MPoly T() { return MPoly::var(Var::t); }
inline MPoly L() { return MPoly::var(Var::lambda); }
inline MPoly I() { return MPoly::i(); }
inline MPoly Q(int n, int d = 1) { return MPoly(ComplexRational(Rational(n, d))); }

}  // namespace ehv::testing
