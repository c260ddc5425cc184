#pragma once

// Sparse multivariate polynomials in (x, y, z, t) with exact complex-rational
// coefficients. A fifth exponent slot carries the formal coupling marker
// lambda, so that perturbative expressions can be split order by order.

#include "ehvortex/rational.hpp"

#include <array>
#include <complex>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ehv {

enum class Var : std::uint8_t { x = 0, y = 1, z = 2, t = 3, lambda = 4 };

char var_name(Var v);
Var parse_var(char c);

inline constexpr int kDefaultDegreeCap = 12;

/// Raised when a product would exceed the configured total degree in (x, y, z, t).
class DegreeCapError : public std::runtime_error {
public:
    DegreeCapError(const std::string& op, int degree, int cap);
    int degree() const noexcept { return degree_; }
    int cap() const noexcept { return cap_; }

private:
    int degree_;
    int cap_;
};

struct Monomial {
    std::array<std::uint8_t, 5> exp{};

    /// Total degree in x, y, z, t (the coupling grade is not counted).
    int degree() const { return exp[0] + exp[1] + exp[2] + exp[3]; }
    int grade() const { return exp[4]; }
    std::uint8_t operator[](Var v) const { return exp[static_cast<int>(v)]; }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial m;
        for (int k = 0; k < 5; ++k) m.exp[k] = static_cast<std::uint8_t>(a.exp[k] + b.exp[k]);
        return m;
    }
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

struct Point4 {
    double x = 0, y = 0, z = 0, t = 0;
};

struct ExactPoint4 {
    Rational x{0}, y{0}, z{0}, t{0};
};

class MPoly {
public:
    using Terms = std::map<Monomial, ComplexRational>;

    MPoly() = default;
    MPoly(ComplexRational c);
    MPoly(int c) : MPoly(ComplexRational(c)) {}

    static MPoly var(Var v);
    static MPoly term(const Monomial& m, ComplexRational c, int cap = kDefaultDegreeCap);
    static MPoly i() { return MPoly(ComplexRational::i()); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    int degree() const;
    int max_grade() const;
    int degree_cap() const { return cap_; }
    MPoly& set_degree_cap(int cap);

    /// Accumulates c into the coefficient of m; checks the degree cap.
    void add_term(const Monomial& m, const ComplexRational& c);

    ComplexRational coefficient(const Monomial& m) const;

    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly& operator*=(const MPoly& o);

    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    friend MPoly operator-(const MPoly& a);
    friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

private:
    Terms terms_;
    int cap_ = kDefaultDegreeCap;

    friend MPoly multiply(const MPoly&, const MPoly&, int, const char*);
};

/// Product with coupling-grade truncation: terms with lambda power above max_grade are dropped.
/// A negative max_grade keeps everything.
MPoly multiply(const MPoly& a, const MPoly& b, int max_grade = -1, const char* op = "mul");

MPoly scale(const MPoly& p, const ComplexRational& c);
MPoly differentiate(const MPoly& p, Var v);

/// Conjugates coefficients only; x, y, z, t are real variables.
MPoly real_field_conjugate(const MPoly& p);

/// Splits p = sum_k lambda^k P_k into {k: P_k}; the P_k carry no lambda.
std::map<int, MPoly> coupling_grade(const MPoly& p);

/// Multiplies by lambda^k.
MPoly with_grade(const MPoly& p, int k);

MPoly truncate_grade(const MPoly& p, int max_grade);

/// Terms of p that carry exactly var^n, with that power removed.
MPoly coefficient_of(const MPoly& p, Var v, int n);

/// Multiplies by var^n.
MPoly times_power(const MPoly& p, Var v, int n);

/// Floating-point evaluation; lambda terms are weighted by lambda^grade.
std::complex<double> evaluate(const MPoly& p, const Point4& at, double lambda);

/// Floating-point evaluation of a polynomial with no lambda terms.
/// Throws std::logic_error if p carries a coupling grade.
std::complex<double> evaluate(const MPoly& p, const Point4& at);

ComplexRational evaluate_exact(const MPoly& p, const ExactPoint4& at, const Rational& lambda = Rational(0));

/// Human-readable algebraic form such as "3/2*x^2*y + i*t".
std::string to_string(const MPoly& p);

// Text serialization: one term per line, "[ex ey ez et el] coefficient".
std::string serialize(const MPoly& p);
MPoly deserialize_mpoly(const std::string& text);

std::ostream& operator<<(std::ostream& os, const MPoly& p);

/// Three polynomial components.
struct VecPoly {
    std::array<MPoly, 3> c{};

    VecPoly() = default;
    VecPoly(MPoly x, MPoly y, MPoly z) : c{std::move(x), std::move(y), std::move(z)} {}

    MPoly& operator[](int k) { return c[k]; }
    const MPoly& operator[](int k) const { return c[k]; }

    bool is_zero() const { return c[0].is_zero() && c[1].is_zero() && c[2].is_zero(); }
    int degree() const;
    int max_grade() const;

    VecPoly& operator+=(const VecPoly& o);
    VecPoly& operator-=(const VecPoly& o);
    friend VecPoly operator+(VecPoly a, const VecPoly& b) { return a += b; }
    friend VecPoly operator-(VecPoly a, const VecPoly& b) { return a -= b; }
    friend VecPoly operator-(const VecPoly& a) { return {-a[0], -a[1], -a[2]}; }
    friend bool operator==(const VecPoly& a, const VecPoly& b) { return a.c == b.c; }
};

using CVec3 = std::array<std::complex<double>, 3>;

VecPoly scale(const VecPoly& v, const ComplexRational& c);
VecPoly multiply(const VecPoly& v, const MPoly& s, int max_grade = -1);
/// Unconjugated dot product sum_k a_k b_k.
MPoly dot(const VecPoly& a, const VecPoly& b, int max_grade = -1);
VecPoly differentiate(const VecPoly& v, Var var);
VecPoly gradient(const MPoly& p);
VecPoly curl(const VecPoly& v);
MPoly divergence(const VecPoly& v);
VecPoly real_field_conjugate(const VecPoly& v);
std::map<int, VecPoly> coupling_grade(const VecPoly& v);
VecPoly with_grade(const VecPoly& v, int k);
VecPoly truncate_grade(const VecPoly& v, int max_grade);
VecPoly coefficient_of(const VecPoly& v, Var var, int n);
VecPoly times_power(const VecPoly& v, Var var, int n);

CVec3 evaluate(const VecPoly& v, const Point4& at, double lambda);
CVec3 evaluate(const VecPoly& v, const Point4& at);

std::string serialize(const VecPoly& v);
VecPoly deserialize_vecpoly(const std::string& text);

/// Flattened double-precision copy of a vector polynomial with lambda fixed to a
/// number; used for dense lattice sampling.
class NumericVecPoly {
public:
    NumericVecPoly() = default;
    NumericVecPoly(const VecPoly& v, double lambda);

    CVec3 operator()(const Point4& at) const;

    /// F.F (unconjugated) at a point.
    std::complex<double> square(const Point4& at) const;

private:
    struct Term {
        std::array<std::uint8_t, 4> exp;
        std::complex<double> coeff;
    };
    std::array<std::vector<Term>, 3> terms_;
    int max_exp_ = 0;
};

}  // namespace ehv
