#include "ehvortex/solutions.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace ehv;
using namespace ehv::testing;

namespace {

SolutionParams params(Case c, CorrectionSource s = CorrectionSource::Printed) {
    SolutionParams p;
    p.kind = c;
    p.source = s;
    return p;
}

ComplexRational cr(int re_n, int re_d, int im_n, int im_d) {
    return {Rational(re_n, re_d), Rational(im_n, im_d)};
}

bool vanishes_at_t0(const VecPoly& v) { return coefficient_of(v, Var::t, 0).is_zero(); }

}  // namespace

TEST_CASE("classical seeds") {
    const CVec3 a = evaluate(classical_seed(params(Case::RingA)), Point4{0, 0, 1, 0});
    CHECK(a[0] == std::complex<double>(0, 0));
    CHECK(a[1] == std::complex<double>(0, 1));
    CHECK(a[2] == std::complex<double>(0, 0));
    const CVec3 b = evaluate(classical_seed(params(Case::PairB)), Point4{0, 0, 0, 0});
    CHECK(b[0] == std::complex<double>(0, 0));
    CHECK(b[1] == std::complex<double>(1, -1));
    CHECK(b[2] == std::complex<double>(0, 0));
    for (Case c : {Case::RingA, Case::PairB}) CHECK(divergence(classical_seed(params(c))).is_zero());
}

TEST_CASE("printed leading coefficients") {
    const auto ra = printed_coefficients(params(Case::RingA));
    for (int k = 0; k < 3; ++k) CHECK(ra.cubic[k] == MPoly(cr(0, 1, -64, 3)));

    const auto pb = printed_coefficients(params(Case::PairB));
    CHECK(pb.cubic[0] == MPoly(cr(-24, 1, 0, 1)));
    CHECK(pb.cubic[1] == MPoly(cr(0, 1, -68, 3)));
    CHECK(pb.cubic[2] == MPoly(cr(0, 1, -68, 3)));
}

TEST_CASE("corrections vanish at t = 0") {
    for (Case c : {Case::RingA, Case::PairB})
        for (CorrectionSource s : {CorrectionSource::Printed, CorrectionSource::Perturbative}) {
            const VecPoly g = quantum_correction(params(c, s));
            CHECK(g.max_grade() == 1);
            CHECK(vanishes_at_t0(g));
        }
}

TEST_CASE("solution splits into seed and correction") {
    const auto p = params(Case::RingA);
    const AnalyticSolution sol = make_solution(p, true);
    const auto g = coupling_grade(sol.fplus);
    REQUIRE(g.size() == 2);
    CHECK(g.at(0) == classical_seed(p));
    const auto k = printed_coefficients(p);
    const VecPoly expect = times_power(k.linear, Var::t, 1) + times_power(k.quadratic, Var::t, 2) +
                           times_power(k.cubic, Var::t, 3);
    CHECK(g.at(1) == expect);
    CHECK(coupling_grade(make_solution(p, false).fplus).size() == 1);
}

TEST_CASE("maxwell residual of the seeds") {
    for (Case c : {Case::RingA, Case::PairB}) {
        const auto r = maxwell_residual(classical_seed(params(c)));
        CHECK(r.at(0).is_zero());
        CHECK_FALSE(r.at(1).is_zero());
    }
}

TEST_CASE("perturbative corrections satisfy the field equation through first order") {
    for (Case c : {Case::RingA, Case::PairB}) {
        const auto r = maxwell_residual(make_solution(params(c, CorrectionSource::Perturbative), true).fplus);
        CHECK(r.at(0).is_zero());
        CHECK(r.at(1).is_zero());
        CHECK(r.count(2) == 1);
    }
    const VecPoly g = perturbative_correction(params(Case::RingA));
    for (int k = 0; k < 3; ++k) CHECK(coefficient_of(g[k], Var::t, 3) == MPoly(cr(0, 1, -14, 3)));
}

TEST_CASE("printed corrections satisfy the field equation through first order" * doctest::should_fail()) {
    for (Case c : {Case::RingA, Case::PairB}) {
        const auto r = maxwell_residual(make_solution(params(c), true).fplus);
        CHECK(r.at(0).is_zero());
        CHECK(r.at(1).is_zero());
    }
}

TEST_CASE("a perturbed coefficient is detected") {
    for (CorrectionSource s : {CorrectionSource::Printed, CorrectionSource::Perturbative}) {
        auto p = params(Case::RingA, s);
        const auto clean = maxwell_residual(make_solution(p, true).fplus).at(1);
        p.mutation = Mutation::parse("beta.x:1e-3");
        const auto dirty = maxwell_residual(make_solution(p, true).fplus).at(1);
        CHECK_FALSE(dirty == clean);
        CHECK_FALSE(dirty.is_zero());
    }
}

TEST_CASE("mutation parsing") {
    const Mutation m = Mutation::parse("gamma.z:-1/2");
    CHECK(m.power == 1);
    CHECK(m.component == 2);
    CHECK(m.relative == Rational(-1, 2));
    CHECK(Mutation::parse("alpha.y:1e-3").power == 3);
    CHECK_THROWS_AS(Mutation::parse("delta.x:1"), std::invalid_argument);
    CHECK_THROWS_AS(Mutation::parse("beta.w:1"), std::invalid_argument);
    CHECK_THROWS_AS(Mutation::parse("beta.x"), std::invalid_argument);
}

TEST_CASE("divergence check") {
    for (Case c : {Case::RingA, Case::PairB})
        for (CorrectionSource s : {CorrectionSource::Printed, CorrectionSource::Perturbative})
            for (const auto& [grade, ok] : divergence_check(make_solution(params(c, s), true).fplus)) {
                CAPTURE(grade);
                CHECK(ok);
            }
    const auto bad = divergence_check(VecPoly{X(), Q(0), Q(0)});
    CHECK_FALSE(bad.at(0));
}

TEST_CASE("the conjugate equation is the conjugate of the residual") {
    const VecPoly fp = make_solution(params(Case::PairB, CorrectionSource::Perturbative), true).fplus;
    const VecPoly fm = real_field_conjugate(fp);
    // dF-/dt - i curl F- + i lambda curl[F+(11 F-^2 - 3 F+^2)]
    const MPoly mix = Q(11) * dot(fm, fm, 1) - Q(3) * dot(fp, fp, 1);
    const VecPoly inner = multiply(multiply(fp, mix, 1), L(), 2);
    VecPoly rm = differentiate(fm, Var::t) - scale(curl(fm), ComplexRational::i()) +
                 scale(curl(inner), ComplexRational::i());
    rm = truncate_grade(rm, 2);
    const auto rp = maxwell_residual(fp, 2);
    const auto gm = coupling_grade(rm);
    for (int k = 0; k <= 2; ++k) {
        const VecPoly lhs = gm.count(k) ? gm.at(k) : VecPoly{};
        CHECK(lhs == real_field_conjugate(rp.at(k)));
    }
}

TEST_CASE("zero coupling reproduces the seed") {
    std::mt19937 rng(12);
    for (Case c : {Case::RingA, Case::PairB}) {
        auto p = params(c);
        p.alpha = 0.0;
        const NumericVecPoly full = make_solution(p, true).numeric();
        const NumericVecPoly seed(classical_seed(p), 0.0);
        for (int n = 0; n < 20; ++n) {
            const Point4 at = random_point(rng);
            CHECK(full(at) == seed(at));
        }
    }
}

TEST_CASE("pointwise residual scales as alpha^4 for the perturbative correction") {
    const VecPoly fp = make_solution(params(Case::RingA, CorrectionSource::Perturbative), true).fplus;
    const auto r = maxwell_residual(fp, 3);
    VecPoly all;
    for (const auto& [k, v] : r) all += with_grade(v, k);
    std::mt19937 rng(13);
    for (int n = 0; n < 10; ++n) {
        const Point4 at = random_point(rng, 2.0);
        auto norm = [&](double alpha) {
            const double lam = Coupling{alpha, 1.0, 1.0}.lambda();
            const CVec3 v = evaluate(all, at, lam);
            return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
        };
        const double ratio = norm(0.02) / norm(0.01);
        CHECK(ratio == doctest::Approx(16.0).epsilon(0.2));
    }
}

TEST_CASE("pair seed at t = a vanishes only on the line y = -a in the plane x = z") {
    const VecPoly seed = classical_seed(params(Case::PairB));
    const MPoly sq = dot(seed, seed);
    for (int yn = -40; yn <= 40; ++yn)
        for (int s : {-3, 0, 2}) {
            const Rational y(yn, 20);
            const ComplexRational v = evaluate_exact(sq, {Rational(s), y, Rational(s), Rational(1)});
            CAPTURE(yn);
            CHECK(v.is_zero() == (y == -1));
        }
}

TEST_CASE("classical ring locus") {
    const RingLocus l0 = classical_ring_locus(1.0, 0.0);
    REQUIRE(l0.circle_radius);
    CHECK(*l0.circle_radius == doctest::Approx(1.0));
    CHECK(l0.sphere_center == Vec3{0, 0, 1});
    CHECK(l0.plane_normal[0] == 0.0);
    CHECK(l0.plane_offset / l0.plane_normal[2] == doctest::Approx(1.0));

    const RingLocus lm = classical_ring_locus(1.0, -1.0 / 3.0);
    CHECK(*lm.circle_radius == doctest::Approx(std::sqrt(2.0 / 3.0)));
    for (double t : {-0.5, -0.2, 0.4})
        CHECK(*classical_ring_locus(1.0, t).circle_radius > *lm.circle_radius);

    const RingLocus far = classical_ring_locus(1.0, 1e6);
    const double n = std::sqrt(dot(far.plane_normal, far.plane_normal));
    for (int k = 0; k < 3; ++k) CHECK(far.plane_normal[k] / n == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-5));
}

TEST_CASE("verify report") {
    const VerifyReport ok = verify(params(Case::PairB, CorrectionSource::Perturbative));
    CHECK(ok.passed());
    CHECK(ok.initial_condition_ok);
    CHECK(ok.to_key_value().find("result=PASS") != std::string::npos);
    auto p = params(Case::PairB, CorrectionSource::Perturbative);
    p.mutation = Mutation::parse("alpha.y:1e-3");
    const VerifyReport bad = verify(p);
    CHECK_FALSE(bad.passed());
    CHECK(bad.mutated);
    CHECK(bad.to_key_value().find("result=FAIL") != std::string::npos);
}

TEST_CASE("parameter validation") {
    auto p = params(Case::RingA);
    p.m = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = params(Case::RingA);
    p.a = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    CHECK(parse_case("ring") == Case::RingA);
    CHECK(parse_case("b") == Case::PairB);
    CHECK_THROWS_AS(parse_case("c"), std::invalid_argument);
    CHECK_THROWS_AS(parse_correction_source("guess"), std::invalid_argument);
}
