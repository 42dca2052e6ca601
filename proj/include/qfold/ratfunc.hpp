#ifndef QFOLD_RATFUNC_HPP
#define QFOLD_RATFUNC_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "laurent.hpp"

namespace qfold {

// Rational functions in q as normalized fractions of Laurent polynomials.
// Normal form: gcd-cancelled, denominator valuation 0, over Z the pair has
// coprime integer contents and the denominator a positive leading
// coefficient, over F_p the denominator is monic.  Normal forms are unique,
// so equality is representational.

enum class ring_membership {
    a0,                 // Q[[q]] \cap Q(q): no pole at q = 0
    z_series,           // Z[[q]] \cap Q(q)
    qz_series,          // q Z[[q]] \cap Q(q)
    one_plus_qz_series, // 1 + q Z[[q]] \cap Q(q)
};

template <typename R>
class ratfunc {
public:
    laurent<R> num, den;

    ratfunc() : num(), den(1) {}
    ratfunc(long c) : num(c), den(1) {}
    ratfunc(int c) : num(c), den(1) {}
    ratfunc(const laurent<R> &n) : num(n), den(1) {}
    ratfunc(laurent<R> n, laurent<R> d) : num(std::move(n)), den(std::move(d)) { normalize(); }

    bool is_zero() const { return num.is_zero(); }
    bool is_one() const { return num.is_one() && den.is_one(); }
    bool is_laurent() const { return den.is_one(); }
    std::optional<laurent<R>> as_laurent() const {
        if (den.is_one()) return num;
        return std::nullopt;
    }

    void normalize() {
        if (den.is_zero()) throw std::domain_error("ratfunc: zero denominator");
        if (num.is_zero()) { den = laurent<R>(1); return; }
        laurent<R> g = gcd(num, den);
        if (!g.is_one()) {
            num = num.div_exact(g);
            den = den.div_exact(g);
        }
        int sh = den.valuation();
        if (sh) { num = num.shifted(-sh); den = den.shifted(-sh); }
        if constexpr (std::is_same_v<R, Zc>) {
            Zc ic = gcd(content(num), content(den));
            if (sign(den.lead()) < 0) ic = -ic;
            if (!ic.is_unit() || sign(ic) < 0) {
                for (auto &[e, c] : num.terms) c = c.div_exact(ic);
                for (auto &[e, c] : den.terms) c = c.div_exact(ic);
            }
        } else {
            Fc inv = Fc(1).div_exact(den.lead());
            if (!(den.lead() == Fc(1))) {
                for (auto &[e, c] : num.terms) c = c * inv;
                for (auto &[e, c] : den.terms) c = c * inv;
            }
        }
    }

    friend bool operator==(const ratfunc &a, const ratfunc &b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const ratfunc &a, const ratfunc &b) { return !(a == b); }

    ratfunc operator-() const {
        ratfunc r = *this;
        r.num = -r.num;
        if constexpr (std::is_same_v<R, Zc>) return r;
        return r;
    }
    friend ratfunc operator+(const ratfunc &a, const ratfunc &b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den == b.den) return ratfunc(a.num + b.num, a.den);
        return ratfunc(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend ratfunc operator-(const ratfunc &a, const ratfunc &b) { return a + (-b); }
    friend ratfunc operator*(const ratfunc &a, const ratfunc &b) {
        if (a.is_zero() || b.is_zero()) return ratfunc();
        return ratfunc(a.num * b.num, a.den * b.den);
    }
    friend ratfunc operator/(const ratfunc &a, const ratfunc &b) {
        if (b.is_zero()) throw std::domain_error("ratfunc: division by zero");
        if (a.is_zero()) return ratfunc();
        return ratfunc(a.num * b.den, a.den * b.num);
    }
    ratfunc &operator+=(const ratfunc &o) { *this = *this + o; return *this; }
    ratfunc &operator-=(const ratfunc &o) { *this = *this - o; return *this; }
    ratfunc &operator*=(const ratfunc &o) { *this = *this * o; return *this; }
    ratfunc &operator/=(const ratfunc &o) { *this = *this / o; return *this; }

    ratfunc inverse() const { return ratfunc(1) / *this; }

    ratfunc bar() const { return ratfunc(num.bar(), den.bar()); }

    ratfunc pow(int n) const {
        if (n < 0) return inverse().pow(-n);
        ratfunc r(1), b = *this;
        unsigned m = static_cast<unsigned>(n);
        while (m) {
            if (m & 1) r *= b;
            b = (m >>= 1) ? b * b : b;
        }
        return r;
    }

    // q-adic valuation: order of vanishing at q = 0 (negative for a pole)
    int valuation_at_zero() const {
        if (is_zero()) throw std::domain_error("ratfunc: valuation of 0");
        return num.valuation(); // den has valuation 0 by normal form
    }

    bool is_member(ring_membership tag) const {
        if (is_zero()) return true;
        bool a0 = num.valuation() >= 0;
        switch (tag) {
        case ring_membership::a0:
            return a0;
        case ring_membership::z_series: {
            if (!a0) return false;
            if constexpr (std::is_same_v<R, Zc>)
                return den.coeff(0).is_unit(); // Fatou: lowest-terms denominator has constant term +-1
            else
                return true;
        }
        case ring_membership::qz_series:
            return is_member(ring_membership::z_series) && num.valuation() >= 1;
        case ring_membership::one_plus_qz_series:
            return (*this - ratfunc(1)).is_member(ring_membership::qz_series);
        }
        return false;
    }

    // exact value at q = 0; requires membership in A0 and the constant term
    // of the denominator to divide that of the numerator
    R at_zero() const {
        if (is_zero()) return R(0);
        if (num.valuation() < 0) throw std::domain_error("ratfunc: pole at q = 0");
        return num.coeff(0).div_exact(den.coeff(0));
    }

    std::string str() const {
        if (den.is_one()) return num.str();
        return "(" + num.str() + ")/(" + den.str() + ")";
    }
};

template <typename R>
ratfunc<R> parse_ratfunc(const std::string &s, std::int64_t prime = 0) {
    if (!s.empty() && s.front() == '(') {
        auto mid = s.find(")/(");
        if (mid == std::string::npos || s.back() != ')')
            throw std::invalid_argument("ratfunc: malformed '" + s + "'");
        laurent<R> n = parse_laurent<R>(s.substr(1, mid - 1), prime);
        laurent<R> d = parse_laurent<R>(s.substr(mid + 3, s.size() - mid - 4), prime);
        return ratfunc<R>(std::move(n), std::move(d));
    }
    return ratfunc<R>(parse_laurent<R>(s, prime));
}

using qrat = ratfunc<Zc>;
using frat = ratfunc<Fc>;

inline frat reduce_mod_p(const qrat &x, std::int64_t p) {
    fpoly n = reduce_mod_p(x.num, p);
    fpoly d = reduce_mod_p(x.den, p);
    if (d.is_zero()) throw std::domain_error("ratfunc: denominator vanishes mod p");
    return frat(std::move(n), std::move(d));
}

} // namespace qfold

#endif
