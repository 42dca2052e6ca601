#ifndef QFOLD_LAURENT_HPP
#define QFOLD_LAURENT_HPP

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "arith.hpp"

namespace qfold {

// Laurent polynomials in q over a coefficient ring R (Zc or Fc).  Terms are
// kept sorted by exponent with no zero coefficients, so equality is
// representational.  The canonical text form is `c*q^e` terms joined by
// " + " with exponents strictly increasing, e.g. "-1*q^-2 + 3 + 2*q^5".

template <typename R>
class laurent {
public:
    std::vector<std::pair<int, R>> terms; // (exponent, coeff), ascending, coeff != 0

    laurent() = default;
    laurent(long c) { if (c) terms.emplace_back(0, R(c)); }
    laurent(int c) : laurent(static_cast<long>(c)) {}
    laurent(const R &c) { if (!c.is_zero()) terms.emplace_back(0, c); }

    static laurent monomial(int exp, R c = R(1)) {
        laurent r;
        if (!c.is_zero()) r.terms.emplace_back(exp, std::move(c));
        return r;
    }
    static laurent qpow(int exp) { return monomial(exp); }

    bool is_zero() const { return terms.empty(); }
    bool is_one() const { return terms.size() == 1 && terms[0].first == 0 && terms[0].second == R(1); }
    int valuation() const { assert(!terms.empty()); return terms.front().first; }
    int degree() const { assert(!terms.empty()); return terms.back().first; }
    const R &lead() const { assert(!terms.empty()); return terms.back().second; }
    const R &trail() const { assert(!terms.empty()); return terms.front().second; }

    R coeff(int exp) const {
        auto it = std::lower_bound(terms.begin(), terms.end(), exp,
                                   [](const auto &t, int e) { return t.first < e; });
        if (it != terms.end() && it->first == exp) return it->second;
        return R(0);
    }

    // value at q = 0; defined only when there is no pole
    R at_zero() const {
        if (terms.empty()) return R(0);
        assert(valuation() >= 0);
        return coeff(0);
    }

    friend bool operator==(const laurent &a, const laurent &b) { return a.terms == b.terms; }
    friend bool operator!=(const laurent &a, const laurent &b) { return !(a == b); }

    laurent operator-() const {
        laurent r = *this;
        for (auto &t : r.terms) t.second = -t.second;
        return r;
    }

    friend laurent operator+(const laurent &a, const laurent &b) {
        laurent r;
        r.terms.reserve(a.terms.size() + b.terms.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms.size() && j < b.terms.size()) {
            if (a.terms[i].first < b.terms[j].first) r.terms.push_back(a.terms[i++]);
            else if (a.terms[i].first > b.terms[j].first) r.terms.push_back(b.terms[j++]);
            else {
                R c = a.terms[i].second + b.terms[j].second;
                if (!c.is_zero()) r.terms.emplace_back(a.terms[i].first, std::move(c));
                ++i; ++j;
            }
        }
        while (i < a.terms.size()) r.terms.push_back(a.terms[i++]);
        while (j < b.terms.size()) r.terms.push_back(b.terms[j++]);
        return r;
    }
    friend laurent operator-(const laurent &a, const laurent &b) { return a + (-b); }
    laurent &operator+=(const laurent &o) { *this = *this + o; return *this; }
    laurent &operator-=(const laurent &o) { *this = *this - o; return *this; }

    friend laurent operator*(const laurent &a, const laurent &b) {
        if (a.is_zero() || b.is_zero()) return laurent();
        if (a.terms.size() == 1) return b.shifted_scaled(a.terms[0].first, a.terms[0].second);
        if (b.terms.size() == 1) return a.shifted_scaled(b.terms[0].first, b.terms[0].second);
        std::map<int, R> acc;
        for (const auto &[ea, ca] : a.terms)
            for (const auto &[eb, cb] : b.terms) {
                auto it = acc.find(ea + eb);
                if (it == acc.end()) acc.emplace(ea + eb, ca * cb);
                else it->second += ca * cb;
            }
        laurent r;
        for (auto &[e, c] : acc)
            if (!c.is_zero()) r.terms.emplace_back(e, std::move(c));
        return r;
    }
    laurent &operator*=(const laurent &o) { *this = *this * o; return *this; }

    laurent shifted_scaled(int exp, const R &c) const {
        laurent r;
        if (c.is_zero()) return r;
        r.terms.reserve(terms.size());
        for (const auto &[e, a] : terms) {
            R v = a * c;
            if (!v.is_zero()) r.terms.emplace_back(e + exp, std::move(v));
        }
        return r;
    }
    laurent shifted(int exp) const { return shifted_scaled(exp, R(1)); }

    laurent pow(unsigned n) const {
        laurent r(1), b = *this;
        while (n) {
            if (n & 1) r *= b;
            b = (n >>= 1) ? b * b : b;
        }
        return r;
    }

    // q -> q^{-1}
    laurent bar() const {
        laurent r;
        r.terms.reserve(terms.size());
        for (auto it = terms.rbegin(); it != terms.rend(); ++it)
            r.terms.emplace_back(-it->first, it->second);
        return r;
    }

    // q -> q^d
    laurent substitute_power(int d) const {
        assert(d > 0);
        laurent r;
        for (const auto &[e, c] : terms) r.terms.emplace_back(e * d, c);
        return r;
    }

    // exact division; throws std::domain_error if not divisible
    laurent div_exact(const laurent &d) const {
        if (d.is_zero()) throw std::domain_error("laurent: division by zero");
        if (is_zero()) return laurent();
        laurent rem = *this, quot;
        int dd = d.degree();
        while (!rem.is_zero()) {
            if (rem.degree() - rem.valuation() < dd - d.valuation())
                throw std::domain_error("laurent: inexact division");
            R qc = rem.lead().div_exact(d.lead());
            int qe = rem.degree() - dd;
            quot.terms.emplace_back(qe, qc);
            rem -= d.shifted_scaled(qe, qc);
        }
        std::reverse(quot.terms.begin(), quot.terms.end());
        return quot;
    }

    std::string str() const {
        if (terms.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto &[e, c] : terms) {
            if (!first) os << " + ";
            first = false;
            if (e == 0) os << c.str();
            else os << c.str() << "*q^" << e;
        }
        return os.str();
    }
};

using zpoly = laurent<Zc>;
using fpoly = laurent<Fc>;

// ---- parsing of the canonical text form ---------------------------------

namespace detail {
inline long long parse_ll(const std::string &s, std::size_t &i) {
    std::size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
        throw std::invalid_argument("laurent: bad integer at '" + s.substr(start) + "'");
    return std::stoll(s.substr(start, i - start));
}
} // namespace detail

template <typename R>
laurent<R> parse_laurent(const std::string &s, std::int64_t prime = 0) {
    laurent<R> r;
    if (s == "0") return r;
    std::size_t i = 0;
    bool first = true;
    while (i < s.size()) {
        if (!first) {
            if (s.compare(i, 3, " + ") != 0)
                throw std::invalid_argument("laurent: expected ' + ' in '" + s + "'");
            i += 3;
        }
        first = false;
        // coefficient: possibly signed, possibly big
        std::size_t start = i;
        if (i < s.size() && s[i] == '-') ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        std::string coeff_str = s.substr(start, i - start);
        if (coeff_str.empty() || coeff_str == "-")
            throw std::invalid_argument("laurent: bad coefficient in '" + s + "'");
        int exp = 0;
        if (i + 3 <= s.size() && s.compare(i, 3, "*q^") == 0) {
            i += 3;
            exp = static_cast<int>(detail::parse_ll(s, i));
        }
        R c;
        if constexpr (std::is_same_v<R, Zc>) c = Zc(bigint(coeff_str));
        else c = Fc(std::stoll(coeff_str), prime);
        if (!c.is_zero()) r += laurent<R>::monomial(exp, c);
    }
    return r;
}

// ---- content / gcd -------------------------------------------------------

inline Zc content(const zpoly &a) {
    Zc g(0);
    for (const auto &[e, c] : a.terms) g = gcd(g, c);
    return g;
}

// gcd over Z[q, q^{-1}] by a primitive subresultant remainder sequence,
// normalized to valuation 0 and positive leading coefficient.
inline zpoly gcd(zpoly a, zpoly b) {
    auto normalize = [](zpoly x) {
        if (x.is_zero()) return x;
        x = x.shifted(-x.valuation());
        Zc c = content(x);
        if (sign(x.lead()) < 0) c = -c;
        for (auto &[e, cf] : x.terms) cf = cf.div_exact(c);
        return x;
    };
    a = normalize(a);
    b = normalize(b);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        // pseudo-remainder: repeatedly scale by lead(b) and cancel the top
        // term; the primitive normalization below undoes the scaling
        zpoly rem = a;
        while (!rem.is_zero() && rem.degree() >= b.degree()) {
            int sh = rem.degree() - b.degree();
            rem = rem.shifted_scaled(0, b.lead()) - b.shifted_scaled(sh, rem.lead());
        }
        a = b;
        b = normalize(rem);
    }
    return normalize(a);
}

// gcd over F_p[q, q^{-1}]: Euclid, normalized monic with valuation 0.
inline fpoly gcd(fpoly a, fpoly b) {
    auto normalize = [](fpoly x) {
        if (x.is_zero()) return x;
        x = x.shifted(-x.valuation());
        Fc inv = Fc(1).div_exact(x.lead());
        for (auto &[e, c] : x.terms) c = c * inv;
        return x;
    };
    a = normalize(a);
    b = normalize(b);
    while (!b.is_zero()) {
        // remainder of a by b
        while (!a.is_zero() && a.degree() >= b.degree()) {
            Fc qc = a.lead().div_exact(b.lead());
            a -= b.shifted_scaled(a.degree() - b.degree(), qc);
        }
        std::swap(a, b);
        b = normalize(b);
        a = normalize(a);
    }
    return normalize(a);
}

// ---- q-combinatorics ------------------------------------------------------

// [n]_d = (q^{dn} - q^{-dn}) / (q^d - q^{-d}); [−n] = −[n]
template <typename R = Zc>
laurent<R> qint(int n, int d = 1) {
    assert(d > 0);
    laurent<R> r;
    bool neg = n < 0;
    if (neg) n = -n;
    for (int k = 0; k < n; ++k)
        r += laurent<R>::monomial(d * (n - 1 - 2 * k));
    return neg ? -r : r;
}

template <typename R = Zc>
laurent<R> qfact(int m, int d = 1) {
    assert(m >= 0);
    laurent<R> r(1);
    for (int k = 2; k <= m; ++k) r *= qint<R>(k, d);
    return r;
}

// [n m]_d for any integer n and m >= 0, via the product formula
// [n][n-1]...[n-m+1] / [m]!; exact over Z[q,q^{-1}].
template <typename R = Zc>
laurent<R> qbinom(int n, int m, int d = 1) {
    assert(m >= 0);
    if (m == 0) return laurent<R>(1);
    laurent<R> num(1);
    for (int k = 0; k < m; ++k) num *= qint<R>(n - k, d);
    if (num.is_zero()) return num;
    return num.div_exact(qfact<R>(m, d));
}

// coefficientwise reduction Z[q,q^{-1}] -> F_p[q,q^{-1}]
inline fpoly reduce_mod_p(const zpoly &a, std::int64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("reduce_mod_p: modulus is not prime");
    fpoly r;
    for (const auto &[e, c] : a.terms) {
        bigint m = c.v % p;
        if (m < 0) m += p;
        std::int64_t v = m.convert_to<std::int64_t>();
        if (v) r.terms.emplace_back(e, Fc(v, p));
    }
    return r;
}

} // namespace qfold

#endif
