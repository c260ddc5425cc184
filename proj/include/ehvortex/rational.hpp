#pragma once

// Exact complex-rational scalars for the polynomial engine.

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <string>
#include <string_view>

namespace ehv {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "3", "-3/4" or a plain decimal such as "1.25" or "1e-3" into an exact rational.
/// Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Complex number with exact rational real and imaginary parts.
struct ComplexRational {
    Rational re{0};
    Rational im{0};

    ComplexRational() = default;
    ComplexRational(Rational r) : re(std::move(r)) {}
    ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    ComplexRational(int r) : re(r) {}

    static ComplexRational i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }

    ComplexRational conj() const { return {re, -im}; }

    ComplexRational& operator+=(const ComplexRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    ComplexRational& operator-=(const ComplexRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    ComplexRational& operator*=(const ComplexRational& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }

    friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
    friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
    friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
    friend ComplexRational operator-(const ComplexRational& a) { return {-a.re, -a.im}; }
    friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
        return a.re == b.re && a.im == b.im;
    }

    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }
};

/// "3/2", "-1/3i", "(1/2+3i)" style rendering used by the text serialization.
std::string to_string(const ComplexRational& c);

/// Inverse of to_string(ComplexRational).
ComplexRational parse_complex_rational(std::string_view text);

}  // namespace ehv
