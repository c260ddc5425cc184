#include "ehvortex/poly.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

using namespace ehv;
using namespace ehv::testing;

namespace {

VecPoly ring_seed() { return {Y() + I() * T(), Z() - Q(1) + I() * (Q(1) + T()), X() + I() * T()}; }

std::string read_golden(const std::string& name) {
    std::ifstream is(std::string(EHV_GOLDEN_DIR) + "/" + name);
    REQUIRE(is.good());
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("add, multiply, scale") {
    CHECK((X() + (-X())).is_zero());
    CHECK((X() + I() * Y()) * (X() - I() * Y()) == X() * X() + Y() * Y());
    CHECK(scale(X() * X() * Y(), ComplexRational(Rational(3, 2))) == Q(3, 2) * X() * X() * Y());
    CHECK((Q(0) * X()).is_zero());
}

TEST_CASE("degree cap names the operation") {
    MPoly p = X();
    for (int k = 0; k < 11; ++k) p = p * X();
    CHECK(p.degree() == 12);
    try {
        (void)(p * Y());
        FAIL("expected DegreeCapError");
    } catch (const DegreeCapError& e) {
        CHECK(e.degree() == 13);
        CHECK(e.cap() == 12);
        CHECK(std::string(e.what()).find("mul") != std::string::npos);
    }
    MPoly x = X();
    x.set_degree_cap(20);
    MPoly q = x;
    for (int k = 0; k < 15; ++k) q = q * x;
    CHECK_THROWS_AS(q * X(), DegreeCapError);
    CHECK(q.degree() == 16);
}

TEST_CASE("differentiate") {
    CHECK(differentiate(X() * X() * Y(), Var::x) == Q(2) * X() * Y());
    CHECK(differentiate(Y() + I() * T(), Var::t) == I());
    CHECK(differentiate(Q(7), Var::z).is_zero());
    CHECK_THROWS(differentiate(L() * X(), Var::lambda));
}

TEST_CASE("curl and divergence examples") {
    CHECK(curl(VecPoly{Q(0), Q(0), X()}) == VecPoly{Q(0), Q(-1), Q(0)});
    CHECK(curl(ring_seed()) == VecPoly{Q(-1), Q(-1), Q(-1)});
    CHECK(divergence(VecPoly{X(), Y(), Z()}) == Q(3));
    CHECK(divergence(ring_seed()).is_zero());
}

TEST_CASE("vector identities on random polynomials") {
    std::mt19937 rng(11);
    for (int n = 0; n < 20; ++n) {
        const MPoly p = random_poly(rng, 4, 6);
        const VecPoly v = random_vecpoly(rng, 4, 5);
        CHECK(curl(gradient(p)).is_zero());
        CHECK(divergence(curl(v)).is_zero());
    }
}

TEST_CASE("ring axioms hold exactly") {
    std::mt19937 rng(5);
    for (int n = 0; n < 20; ++n) {
        const MPoly a = random_poly(rng, 3, 4), b = random_poly(rng, 3, 4), c = random_poly(rng, 3, 4);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == MPoly());
        CHECK(a * Q(1) == a);
    }
}

TEST_CASE("evaluate examples") {
    const CVec3 f = evaluate(ring_seed(), Point4{0, 0, 0, 0});
    CHECK(f[0] == std::complex<double>(0, 0));
    CHECK(f[1] == std::complex<double>(-1, 1));
    CHECK(f[2] == std::complex<double>(0, 0));
    const MPoly sq = dot(ring_seed(), ring_seed());
    CHECK(evaluate(sq, Point4{0, 0, 1, 0}) == std::complex<double>(-1, 0));
    CHECK(evaluate(MPoly(), Point4{1, 2, 3, 4}) == std::complex<double>(0, 0));
    CHECK_THROWS_AS(evaluate(L() * X(), Point4{1, 0, 0, 0}), std::logic_error);
    CHECK(evaluate(L() * X() + Y(), Point4{2, 3, 0, 0}, 0.5) == std::complex<double>(4, 0));
}

TEST_CASE("evaluate is compatible with multiplication") {
    std::mt19937 rng(7);
    for (int n = 0; n < 50; ++n) {
        const MPoly p = random_poly(rng, 4, 5), q = random_poly(rng, 4, 5);
        const Point4 at = random_point(rng);
        const auto lhs = evaluate(p * q, at);
        const auto rhs = evaluate(p, at) * evaluate(q, at);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("exact evaluation matches floating point") {
    const MPoly p = Q(1, 3) * X() * X() + I() * Y() * T() - Q(5, 7);
    const ExactPoint4 at{Rational(1, 2), Rational(2), Rational(0), Rational(-3)};
    const ComplexRational e = evaluate_exact(p, at);
    CHECK(e.re == Rational(1, 12) - Rational(5, 7));
    CHECK(e.im == Rational(-6));
}

TEST_CASE("real_field_conjugate") {
    CHECK(real_field_conjugate(Y() + I() * T()) == Y() - I() * T());
    const MPoly real = Q(3) * X() * X() - Y();
    CHECK(real_field_conjugate(real) == real);
    std::mt19937 rng(3);
    for (int n = 0; n < 20; ++n) {
        const MPoly p = random_poly(rng, 4, 6);
        CHECK(real_field_conjugate(real_field_conjugate(p)) == p);
        for (Var v : {Var::x, Var::y, Var::z, Var::t})
            CHECK(differentiate(real_field_conjugate(p), v) == real_field_conjugate(differentiate(p, v)));
    }
}

TEST_CASE("coupling grade split") {
    const MPoly A = X() * Y() + I();
    const MPoly B = T() * T() - Z();
    const auto g = coupling_grade(A + L() * B);
    REQUIRE(g.size() == 2);
    CHECK(g.at(0) == A);
    CHECK(g.at(1) == B);
    const auto seed = coupling_grade(ring_seed());
    REQUIRE(seed.size() == 1);
    CHECK(seed.at(0) == ring_seed());
    CHECK(with_grade(B, 2).max_grade() == 2);
    CHECK(truncate_grade(A + L() * B + L() * L() * A, 1) == A + L() * B);
    CHECK(multiply(A + L() * B, A + L() * B, 1) == A * A + Q(2) * L() * A * B);
}

TEST_CASE("coefficient_of and times_power") {
    const MPoly p = Q(3) * T() * T() * X() + T() * Y() + Z();
    CHECK(coefficient_of(p, Var::t, 2) == Q(3) * X());
    CHECK(coefficient_of(p, Var::t, 1) == Y());
    CHECK(coefficient_of(p, Var::t, 0) == Z());
    CHECK(times_power(Y(), Var::t, 3) == T() * T() * T() * Y());
}

TEST_CASE("text serialization round trip") {
    std::mt19937 rng(9);
    for (int n = 0; n < 10; ++n) {
        const MPoly p = random_poly(rng, 5, 8) + L() * random_poly(rng, 3, 3);
        CHECK(deserialize_mpoly(serialize(p)) == p);
        const VecPoly v = random_vecpoly(rng, 4, 4);
        CHECK(deserialize_vecpoly(serialize(v)) == v);
    }
    CHECK(serialize(ring_seed()) == read_golden("ring_seed.txt"));
    CHECK(deserialize_vecpoly(read_golden("ring_seed.txt")) == ring_seed());
    CHECK_THROWS(deserialize_mpoly("[1 2] 3"));
}

TEST_CASE("numeric copy agrees with exact evaluation") {
    std::mt19937 rng(21);
    const VecPoly v = random_vecpoly(rng, 5, 6) + VecPoly{L() * X() * X(), L() * T(), Q(0)};
    const NumericVecPoly nv(v, 0.25);
    for (int n = 0; n < 20; ++n) {
        const Point4 at = random_point(rng, 2.0);
        const CVec3 a = nv(at);
        const CVec3 b = evaluate(v, at, 0.25);
        for (int k = 0; k < 3; ++k) CHECK(std::abs(a[k] - b[k]) <= 1e-10 * std::max(1.0, std::abs(b[k])));
        const auto sq = nv.square(at);
        CHECK(std::abs(sq - (b[0] * b[0] + b[1] * b[1] + b[2] * b[2])) <= 1e-9 * std::max(1.0, std::abs(sq)));
    }
}
