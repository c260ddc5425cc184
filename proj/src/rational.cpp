#include "ehvortex/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace ehv {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Rational pow10(int n) {
    Rational r(1);
    for (int k = 0; k < n; ++k) r *= 10;
    return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty rational");

    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        boost::multiprecision::cpp_int n{std::string(num)};
        boost::multiprecision::cpp_int d{std::string(den)};
        if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        value = Rational(n, d);
    } else {
        int exponent = 0;
        if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
            auto exp_text = s.substr(e + 1);
            bool exp_neg = false;
            if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
                exp_neg = exp_text.front() == '-';
                exp_text.remove_prefix(1);
            }
            if (!all_digits(exp_text))
                throw std::invalid_argument("malformed exponent in '" + std::string(text) + "'");
            exponent = std::stoi(std::string(exp_text));
            if (exp_neg) exponent = -exponent;
            s = s.substr(0, e);
        }
        std::string_view int_part = s;
        std::string_view frac_part;
        if (auto dot = s.find('.'); dot != std::string_view::npos) {
            int_part = s.substr(0, dot);
            frac_part = s.substr(dot + 1);
        }
        if (int_part.empty() && frac_part.empty())
            throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
            throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        std::string digits = std::string(int_part) + std::string(frac_part);
        boost::multiprecision::cpp_int n(digits.empty() ? std::string("0") : digits);
        value = Rational(n) / pow10(static_cast<int>(frac_part.size()));
        if (exponent > 0) value *= pow10(exponent);
        if (exponent < 0) value /= pow10(-exponent);
    }
    return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) { return q.str(); }

std::string to_string(const ComplexRational& c) {
    if (c.im == 0) return to_string(c.re);
    if (c.re == 0) return to_string(c.im) + "i";
    std::string im = to_string(c.im);
    if (im.front() != '-') im = "+" + im;
    return "(" + to_string(c.re) + im + "i)";
}

ComplexRational parse_complex_rational(std::string_view text) {
    std::string_view s = trim(text);
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    if (s.empty()) throw std::invalid_argument("empty complex rational");
    if (s.back() != 'i') return {parse_rational(s)};
    s.remove_suffix(1);
    // split "re+im" at the last sign that is not leading and not part of an exponent
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            return {parse_rational(s.substr(0, k)), parse_rational(s.substr(k))};
        }
    }
    if (s.empty() || s == "+") return {Rational(0), Rational(1)};
    if (s == "-") return {Rational(0), Rational(-1)};
    return {Rational(0), parse_rational(s)};
}

}  // namespace ehv
