#include "ehvortex/poly.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace ehv {

char var_name(Var v) {
    static constexpr char names[] = {'x', 'y', 'z', 't', 'L'};
    return names[static_cast<int>(v)];
}

Var parse_var(char c) {
    switch (c) {
        case 'x': return Var::x;
        case 'y': return Var::y;
        case 'z': return Var::z;
        case 't': return Var::t;
        case 'L': return Var::lambda;
        default: throw std::invalid_argument(std::string("unknown variable '") + c + "'");
    }
}

DegreeCapError::DegreeCapError(const std::string& op, int degree, int cap)
    : std::runtime_error(op + ": result degree " + std::to_string(degree) + " exceeds degree cap " +
                         std::to_string(cap)),
      degree_(degree),
      cap_(cap) {}

MPoly::MPoly(ComplexRational c) {
    if (!c.is_zero()) terms_.emplace(Monomial{}, std::move(c));
}

MPoly MPoly::var(Var v) {
    Monomial m;
    m.exp[static_cast<int>(v)] = 1;
    return term(m, ComplexRational(1));
}

MPoly MPoly::term(const Monomial& m, ComplexRational c, int cap) {
    MPoly p;
    p.cap_ = cap;
    if (m.degree() > p.cap_) throw DegreeCapError("term", m.degree(), p.cap_);
    if (!c.is_zero()) p.terms_.emplace(m, std::move(c));
    return p;
}

int MPoly::degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

int MPoly::max_grade() const {
    int g = 0;
    for (const auto& [m, c] : terms_) g = std::max(g, m.grade());
    return g;
}

MPoly& MPoly::set_degree_cap(int cap) {
    if (degree() > cap) throw DegreeCapError("set_degree_cap", degree(), cap);
    cap_ = cap;
    return *this;
}

ComplexRational MPoly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? ComplexRational{} : it->second;
}

void MPoly::add_term(const Monomial& m, const ComplexRational& c) {
    if (c.is_zero()) return;
    if (m.degree() > cap_) throw DegreeCapError("add_term", m.degree(), cap_);
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MPoly& MPoly::operator+=(const MPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    cap_ = std::min(cap_, o.cap_);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    cap_ = std::min(cap_, o.cap_);
    return *this;
}

MPoly& MPoly::operator*=(const MPoly& o) { return *this = *this * o; }

MPoly multiply(const MPoly& a, const MPoly& b, int max_grade, const char* op) {
    MPoly r;
    r.cap_ = std::min(a.cap_, b.cap_);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            if (max_grade >= 0 && ma.grade() + mb.grade() > max_grade) continue;
            int d = ma.degree() + mb.degree();
            if (d > r.cap_) throw DegreeCapError(op, d, r.cap_);
            r.add_term(ma * mb, ca * cb);
        }
    }
    return r;
}

MPoly operator*(const MPoly& a, const MPoly& b) { return multiply(a, b, -1, "mul"); }

MPoly operator-(const MPoly& a) { return scale(a, ComplexRational(-1)); }

MPoly scale(const MPoly& p, const ComplexRational& c) {
    MPoly r;
    r.set_degree_cap(p.degree_cap());
    if (c.is_zero()) return r;
    for (const auto& [m, k] : p.terms()) r.add_term(m, k * c);
    return r;
}

MPoly differentiate(const MPoly& p, Var v) {
    if (v == Var::lambda) throw std::invalid_argument("differentiate: lambda is a grading, not a variable");
    const int k = static_cast<int>(v);
    MPoly r;
    r.set_degree_cap(p.degree_cap());
    for (const auto& [m, c] : p.terms()) {
        if (m.exp[k] == 0) continue;
        Monomial d = m;
        --d.exp[k];
        r.add_term(d, c * ComplexRational(Rational(m.exp[k])));
    }
    return r;
}

MPoly real_field_conjugate(const MPoly& p) {
    MPoly r;
    r.set_degree_cap(p.degree_cap());
    for (const auto& [m, c] : p.terms()) r.add_term(m, c.conj());
    return r;
}

std::map<int, MPoly> coupling_grade(const MPoly& p) {
    std::map<int, MPoly> out;
    for (const auto& [m, c] : p.terms()) {
        Monomial stripped = m;
        stripped.exp[4] = 0;
        auto& slot = out[m.grade()];
        slot.set_degree_cap(p.degree_cap());
        slot.add_term(stripped, c);
    }
    return out;
}

MPoly with_grade(const MPoly& p, int k) { return times_power(p, Var::lambda, k); }

MPoly truncate_grade(const MPoly& p, int max_grade) {
    MPoly r;
    r.set_degree_cap(p.degree_cap());
    for (const auto& [m, c] : p.terms())
        if (m.grade() <= max_grade) r.add_term(m, c);
    return r;
}

MPoly coefficient_of(const MPoly& p, Var v, int n) {
    const int k = static_cast<int>(v);
    MPoly r;
    r.set_degree_cap(p.degree_cap());
    for (const auto& [m, c] : p.terms()) {
        if (m.exp[k] != n) continue;
        Monomial s = m;
        s.exp[k] = 0;
        r.add_term(s, c);
    }
    return r;
}

MPoly times_power(const MPoly& p, Var v, int n) {
    Monomial shift;
    shift.exp[static_cast<int>(v)] = static_cast<std::uint8_t>(n);
    return multiply(p, MPoly::term(shift, ComplexRational(1), p.degree_cap() + n), -1, "times_power");
}

namespace {

double ipow(double base, int n) {
    double r = 1.0;
    for (int k = 0; k < n; ++k) r *= base;
    return r;
}

Rational ipow(const Rational& base, int n) {
    Rational r(1);
    for (int k = 0; k < n; ++k) r *= base;
    return r;
}

}  // namespace

std::complex<double> evaluate(const MPoly& p, const Point4& at, double lambda) {
    std::complex<double> sum = 0.0;
    for (const auto& [m, c] : p.terms()) {
        double w = ipow(at.x, m.exp[0]) * ipow(at.y, m.exp[1]) * ipow(at.z, m.exp[2]) * ipow(at.t, m.exp[3]) *
                   ipow(lambda, m.exp[4]);
        sum += c.to_complex() * w;
    }
    return sum;
}

std::complex<double> evaluate(const MPoly& p, const Point4& at) {
    if (p.max_grade() > 0) throw std::logic_error("evaluate: polynomial carries coupling terms; pass lambda");
    return evaluate(p, at, 0.0);
}

ComplexRational evaluate_exact(const MPoly& p, const ExactPoint4& at, const Rational& lambda) {
    ComplexRational sum;
    for (const auto& [m, c] : p.terms()) {
        Rational w = ipow(at.x, m.exp[0]) * ipow(at.y, m.exp[1]) * ipow(at.z, m.exp[2]) * ipow(at.t, m.exp[3]) *
                     ipow(lambda, m.exp[4]);
        sum += c * ComplexRational(w);
    }
    return sum;
}

std::string to_string(const MPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        if (!first) os << " + ";
        first = false;
        os << to_string(c);
        for (int k = 0; k < 5; ++k) {
            if (m.exp[k] == 0) continue;
            os << '*' << var_name(static_cast<Var>(k));
            if (m.exp[k] > 1) os << '^' << int(m.exp[k]);
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const MPoly& p) { return os << to_string(p); }

std::string serialize(const MPoly& p) {
    std::ostringstream os;
    for (const auto& [m, c] : p.terms()) {
        os << '[' << int(m.exp[0]) << ' ' << int(m.exp[1]) << ' ' << int(m.exp[2]) << ' ' << int(m.exp[3]) << ' '
           << int(m.exp[4]) << "] " << to_string(c) << '\n';
    }
    return os.str();
}

MPoly deserialize_mpoly(const std::string& text) {
    MPoly p;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        auto open = line.find('[');
        if (open == std::string::npos) continue;
        auto close = line.find(']', open);
        if (close == std::string::npos) throw std::invalid_argument("deserialize: missing ']' in '" + line + "'");
        std::istringstream exps(line.substr(open + 1, close - open - 1));
        Monomial m;
        for (int k = 0; k < 5; ++k) {
            int e = 0;
            if (!(exps >> e) || e < 0 || e > 255)
                throw std::invalid_argument("deserialize: bad exponent list in '" + line + "'");
            m.exp[k] = static_cast<std::uint8_t>(e);
        }
        p += MPoly::term(m, parse_complex_rational(line.substr(close + 1)));
    }
    return p;
}

int VecPoly::degree() const { return std::max({c[0].degree(), c[1].degree(), c[2].degree()}); }

int VecPoly::max_grade() const { return std::max({c[0].max_grade(), c[1].max_grade(), c[2].max_grade()}); }

VecPoly& VecPoly::operator+=(const VecPoly& o) {
    for (int k = 0; k < 3; ++k) c[k] += o.c[k];
    return *this;
}

VecPoly& VecPoly::operator-=(const VecPoly& o) {
    for (int k = 0; k < 3; ++k) c[k] -= o.c[k];
    return *this;
}

VecPoly scale(const VecPoly& v, const ComplexRational& s) { return {scale(v[0], s), scale(v[1], s), scale(v[2], s)}; }

VecPoly multiply(const VecPoly& v, const MPoly& s, int max_grade) {
    return {multiply(v[0], s, max_grade), multiply(v[1], s, max_grade), multiply(v[2], s, max_grade)};
}

MPoly dot(const VecPoly& a, const VecPoly& b, int max_grade) {
    return multiply(a[0], b[0], max_grade, "dot") + multiply(a[1], b[1], max_grade, "dot") +
           multiply(a[2], b[2], max_grade, "dot");
}

VecPoly differentiate(const VecPoly& v, Var var) {
    return {differentiate(v[0], var), differentiate(v[1], var), differentiate(v[2], var)};
}

VecPoly gradient(const MPoly& p) {
    return {differentiate(p, Var::x), differentiate(p, Var::y), differentiate(p, Var::z)};
}

VecPoly curl(const VecPoly& v) {
    return {differentiate(v[2], Var::y) - differentiate(v[1], Var::z),
            differentiate(v[0], Var::z) - differentiate(v[2], Var::x),
            differentiate(v[1], Var::x) - differentiate(v[0], Var::y)};
}

MPoly divergence(const VecPoly& v) {
    return differentiate(v[0], Var::x) + differentiate(v[1], Var::y) + differentiate(v[2], Var::z);
}

VecPoly real_field_conjugate(const VecPoly& v) {
    return {real_field_conjugate(v[0]), real_field_conjugate(v[1]), real_field_conjugate(v[2])};
}

std::map<int, VecPoly> coupling_grade(const VecPoly& v) {
    std::map<int, VecPoly> out;
    for (int k = 0; k < 3; ++k)
        for (auto& [g, p] : coupling_grade(v[k])) out[g][k] = std::move(p);
    return out;
}

VecPoly with_grade(const VecPoly& v, int k) { return {with_grade(v[0], k), with_grade(v[1], k), with_grade(v[2], k)}; }

VecPoly truncate_grade(const VecPoly& v, int g) {
    return {truncate_grade(v[0], g), truncate_grade(v[1], g), truncate_grade(v[2], g)};
}

VecPoly coefficient_of(const VecPoly& v, Var var, int n) {
    return {coefficient_of(v[0], var, n), coefficient_of(v[1], var, n), coefficient_of(v[2], var, n)};
}

VecPoly times_power(const VecPoly& v, Var var, int n) {
    return {times_power(v[0], var, n), times_power(v[1], var, n), times_power(v[2], var, n)};
}

CVec3 evaluate(const VecPoly& v, const Point4& at, double lambda) {
    return {evaluate(v[0], at, lambda), evaluate(v[1], at, lambda), evaluate(v[2], at, lambda)};
}

CVec3 evaluate(const VecPoly& v, const Point4& at) { return {evaluate(v[0], at), evaluate(v[1], at), evaluate(v[2], at)}; }

std::string serialize(const VecPoly& v) {
    std::string out;
    for (int k = 0; k < 3; ++k) {
        out += "component ";
        out += static_cast<char>('x' + k);
        out += '\n';
        out += serialize(v[k]);
    }
    return out;
}

VecPoly deserialize_vecpoly(const std::string& text) {
    VecPoly v;
    std::istringstream is(text);
    std::string line;
    int current = -1;
    std::string block;
    auto flush = [&] {
        if (current >= 0) v[current] = deserialize_mpoly(block);
        block.clear();
    };
    while (std::getline(is, line)) {
        if (line.rfind("component ", 0) == 0) {
            flush();
            char axis = line.size() > 10 ? line[10] : '?';
            if (axis < 'x' || axis > 'z') throw std::invalid_argument("deserialize: bad component header '" + line + "'");
            current = axis - 'x';
        } else if (!line.empty()) {
            if (current < 0) throw std::invalid_argument("deserialize: term before component header");
            block += line;
            block += '\n';
        }
    }
    flush();
    return v;
}

NumericVecPoly::NumericVecPoly(const VecPoly& v, double lambda) {
    for (int k = 0; k < 3; ++k) {
        std::map<std::array<std::uint8_t, 4>, std::complex<double>> merged;
        for (const auto& [m, c] : v[k].terms()) {
            std::array<std::uint8_t, 4> e{m.exp[0], m.exp[1], m.exp[2], m.exp[3]};
            merged[e] += c.to_complex() * ipow(lambda, m.exp[4]);
            for (int j = 0; j < 4; ++j) max_exp_ = std::max<int>(max_exp_, e[j]);
        }
        for (const auto& [e, c] : merged)
            if (c != 0.0) terms_[k].push_back({e, c});
    }
    if (max_exp_ >= 16) throw std::invalid_argument("NumericVecPoly: exponent too large for evaluation table");
}

CVec3 NumericVecPoly::operator()(const Point4& at) const {
    constexpr int kMax = 16;
    std::array<std::array<double, kMax>, 4> pw{};
    const double base[4] = {at.x, at.y, at.z, at.t};
    for (int j = 0; j < 4; ++j) {
        pw[j][0] = 1.0;
        for (int n = 1; n <= max_exp_ && n < kMax; ++n) pw[j][n] = pw[j][n - 1] * base[j];
    }
    CVec3 out{};
    for (int k = 0; k < 3; ++k) {
        std::complex<double> s = 0.0;
        for (const auto& term : terms_[k])
            s += term.coeff * (pw[0][term.exp[0]] * pw[1][term.exp[1]] * pw[2][term.exp[2]] * pw[3][term.exp[3]]);
        out[k] = s;
    }
    return out;
}

std::complex<double> NumericVecPoly::square(const Point4& at) const {
    CVec3 f = (*this)(at);
    return f[0] * f[0] + f[1] * f[1] + f[2] * f[2];
}

}  // namespace ehv
