#pragma once

// Exact scalar arithmetic in the field of rational functions of s = q^{1/2}
// with rational coefficients. Values are canonical on construction, so
// equality is structural.

#include <gmpxx.h>

#include <algorithm>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "qgauss/errors.hpp"

namespace qg {

using Rational = mpq_class;

inline std::string rational_str(const Rational& r) { return r.get_str(); }

// Laurent polynomial in s with exact rational coefficients.
// Stored dense: c_[i] is the coefficient of s^(min_exp_ + i).
// Invariant: c_ empty (zero) or both ends nonzero.
class LaurentPoly {
public:
    LaurentPoly() = default;

    static LaurentPoly zero() { return LaurentPoly(); }

    static LaurentPoly constant(const Rational& r) {
        LaurentPoly p;
        if (r != 0) {
            p.min_ = 0;
            p.c_ = {r};
        }
        return p;
    }

    static LaurentPoly term(const Rational& r, int exp) {
        LaurentPoly p;
        if (r != 0) {
            p.min_ = exp;
            p.c_ = {r};
        }
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.empty() || (c_.size() == 1 && min_ == 0); }

    int low() const { return min_; }
    int high() const { return min_ + static_cast<int>(c_.size()) - 1; }
    // Number of stored coefficients (degree span), 0 for the zero polynomial.
    std::size_t span() const { return c_.size(); }

    const Rational& leading() const { return c_.back(); }

    Rational coeff(int exp) const {
        if (c_.empty() || exp < min_ || exp > high()) return Rational(0);
        return c_[static_cast<std::size_t>(exp - min_)];
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.min_ == b.min_ && a.c_ == b.c_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    LaurentPoly operator-() const {
        LaurentPoly p(*this);
        for (auto& x : p.c_) x = -x;
        return p;
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        int lo = std::min(a.min_, b.min_);
        int hi = std::max(a.high(), b.high());
        LaurentPoly r;
        r.min_ = lo;
        r.c_.assign(static_cast<std::size_t>(hi - lo + 1), Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[a.min_ - lo + i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[b.min_ - lo + i] += b.c_[i];
        r.trim();
        return r;
    }

    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.is_zero() || b.is_zero()) return LaurentPoly();
        LaurentPoly r;
        r.min_ = a.min_ + b.min_;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        r.trim();
        return r;
    }

    LaurentPoly& operator*=(const Rational& r) {
        if (r == 0) {
            c_.clear();
            min_ = 0;
        } else {
            for (auto& x : c_) x *= r;
        }
        return *this;
    }

    // Shift the exponent range: multiply by s^k.
    LaurentPoly shifted(int k) const {
        LaurentPoly p(*this);
        if (!p.is_zero()) p.min_ += k;
        return p;
    }

    // Exact evaluation at s = s0. Requires s0 != 0 when negative exponents occur.
    Rational eval(const Rational& s0) const {
        if (is_zero()) return Rational(0);
        if (s0 == 0) {
            if (min_ < 0) throw zero_substitution_error();
            return coeff(0);
        }
        // Horner over the nonnegative-shifted polynomial, then multiply s0^min_.
        Rational acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * s0 + c_[i];
        Rational p(1);
        int e = min_;
        Rational base = e < 0 ? Rational(s0.get_den(), s0.get_num()) : s0;
        for (int k = 0; k < std::abs(e); ++k) p *= base;
        return acc * p;
    }

    // Division with remainder over Q[s]; both operands must have low() >= 0.
    static std::pair<LaurentPoly, LaurentPoly> divmod(const LaurentPoly& a, const LaurentPoly& b) {
        if (b.is_zero()) throw division_by_zero();
        LaurentPoly rem = a;
        LaurentPoly quo;
        while (!rem.is_zero() && rem.high() >= b.high()) {
            int shift = rem.high() - b.high();
            Rational f = rem.leading() / b.leading();
            quo = quo + term(f, shift);
            rem = rem - b.shifted(shift) * constant(f);
        }
        return {quo, rem};
    }

    // Monic gcd over Q[s] of the exponent-shifted polynomials (s factors ignored).
    static LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly x = a.shifted(-a.low());
        LaurentPoly y = b.shifted(-b.low());
        if (x.is_zero()) return yedge(y);
        if (y.is_zero()) return yedge(x);
        while (!y.is_zero()) {
            auto [q, r] = divmod(x, y);
            (void)q;
            x = y;
            y = r;
        }
        return yedge(x);
    }

    std::string str() const;  // q-power notation, defined below

private:
    static LaurentPoly yedge(LaurentPoly p) {
        if (!p.is_zero()) {
            Rational inv = 1 / p.leading();
            p *= inv;
        }
        return p;
    }

    void trim() {
        std::size_t lo = 0, hi = c_.size();
        while (lo < hi && c_[lo] == 0) ++lo;
        while (hi > lo && c_[hi - 1] == 0) --hi;
        if (lo == hi) {
            c_.clear();
            min_ = 0;
            return;
        }
        if (lo > 0 || hi < c_.size()) {
            std::vector<Rational> nc(c_.begin() + lo, c_.begin() + hi);
            c_.swap(nc);
            min_ += static_cast<int>(lo);
        }
    }

    int min_ = 0;
    std::vector<Rational> c_;
};

// Reduced fraction of Laurent polynomials. Canonical form: the denominator has
// lowest exponent zero and leading coefficient one; numerator and denominator
// share no polynomial factor.
class QCoeff {
public:
    QCoeff() : num_(), den_(LaurentPoly::constant(1)) {}

    QCoeff(const LaurentPoly& num, const LaurentPoly& den) : num_(num), den_(den) { reduce(); }

    static QCoeff zero() { return QCoeff(); }
    static QCoeff one() { return of(Rational(1)); }
    static QCoeff of(const Rational& r) {
        return QCoeff(LaurentPoly::constant(r), LaurentPoly::constant(1));
    }
    static QCoeff of(long n) { return of(Rational(n)); }

    // s^k = q^(k/2)
    static QCoeff s_pow(int k) {
        return QCoeff(LaurentPoly::term(1, k), LaurentPoly::constant(1));
    }
    static QCoeff q() { return s_pow(2); }
    static QCoeff q_pow(int k) { return s_pow(2 * k); }
    // lambda = q - q^-1
    static QCoeff lambda() { return q() - q_pow(-1); }
    // omega = q^(1/2) - q^(-1/2)
    static QCoeff omega() { return s_pow(1) - s_pow(-1); }
    // (-q)^k
    static QCoeff minus_q_pow(int k) {
        QCoeff c = q_pow(k);
        return (k % 2 == 0) ? c : -c;
    }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return *this == one(); }
    bool is_polynomial() const { return den_ == LaurentPoly::constant(1); }

    friend bool operator==(const QCoeff& a, const QCoeff& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const QCoeff& a, const QCoeff& b) { return !(a == b); }

    QCoeff operator-() const {
        QCoeff c(*this);
        c.num_ = -c.num_;
        return c;
    }

    friend QCoeff operator+(const QCoeff& a, const QCoeff& b) {
        return QCoeff(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend QCoeff operator-(const QCoeff& a, const QCoeff& b) {
        return QCoeff(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend QCoeff operator*(const QCoeff& a, const QCoeff& b) {
        return QCoeff(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend QCoeff operator/(const QCoeff& a, const QCoeff& b) {
        if (b.is_zero()) throw division_by_zero();
        return QCoeff(a.num_ * b.den_, a.den_ * b.num_);
    }

    QCoeff& operator+=(const QCoeff& b) { return *this = *this + b; }
    QCoeff& operator-=(const QCoeff& b) { return *this = *this - b; }
    QCoeff& operator*=(const QCoeff& b) { return *this = *this * b; }

    QCoeff inverse() const {
        if (is_zero()) throw division_by_zero();
        return QCoeff(den_, num_);
    }

    QCoeff pow(int k) const {
        if (k < 0) return inverse().pow(-k);
        QCoeff r = one();
        QCoeff base = *this;
        for (int i = 0; i < k; ++i) r = r * base;
        return r;
    }

    // Exact value at s = s0.
    Rational eval(const Rational& s0) const {
        Rational d = den_.eval(s0);
        if (d == 0) throw pole_error("s = " + rational_str(s0));
        return num_.eval(s0) / d;
    }

    // Sign convention for printing: treat the value as negative when the
    // highest-exponent numerator coefficient is negative.
    bool print_negative() const { return !num_.is_zero() && num_.leading() < 0; }

    std::string str() const;

private:
    void reduce() {
        if (den_.is_zero()) throw division_by_zero();
        if (num_.is_zero()) {
            den_ = LaurentPoly::constant(1);
            return;
        }
        // Move the denominator's s-power into the numerator.
        int b = den_.low();
        den_ = den_.shifted(-b);
        num_ = num_.shifted(-b);
        LaurentPoly g = LaurentPoly::gcd(num_, den_);
        if (g.span() > 1) {
            int off = num_.low();
            num_ = LaurentPoly::divmod(num_.shifted(-off), g).first.shifted(off);
            den_ = LaurentPoly::divmod(den_, g).first;
        }
        Rational lc = 1 / den_.leading();
        num_ *= lc;
        den_ *= lc;
    }

    LaurentPoly num_;
    LaurentPoly den_;
};

// ---- printing ----------------------------------------------------------

namespace detail {

// One monomial r*s^e in q-power notation. `lead` suppresses an initial '+'.
inline void append_q_term(std::string& out, const Rational& r, int e, bool lead) {
    Rational a = r;
    bool neg = a < 0;
    if (neg) a = -a;
    if (lead) {
        if (neg) out += "-";
    } else {
        out += neg ? " - " : " + ";
    }
    std::string power;
    if (e != 0) {
        if (e % 2 == 0) {
            int k = e / 2;
            power = (k == 1) ? "q" : "q^" + std::to_string(k);
        } else {
            power = "q^(" + std::to_string(e) + "/2)";
        }
    }
    if (power.empty()) {
        out += rational_str(a);
    } else if (a == 1) {
        out += power;
    } else {
        out += rational_str(a) + "*" + power;
    }
}

}  // namespace detail

inline std::string LaurentPoly::str() const {
    if (is_zero()) return "0";
    std::string out;
    bool lead = true;
    for (int e = high(); e >= low(); --e) {
        Rational r = coeff(e);
        if (r == 0) continue;
        detail::append_q_term(out, r, e, lead);
        lead = false;
    }
    return out;
}

inline std::string QCoeff::str() const {
    if (is_zero()) return "0";
    if (*this == lambda()) return "lambda";
    if (*this == omega()) return "omega";
    if (is_polynomial()) return num_.str();
    std::string n = num_.str();
    if (num_.span() > 1) n = "(" + n + ")";
    std::string d = den_.str();
    if (den_.span() > 1) d = "(" + d + ")";
    return n + "/" + d;
}

}  // namespace qg
