#ifndef QFOLD_ARITH_HPP
#define QFOLD_ARITH_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qfold {

// Coefficient rings for Laurent polynomials.  Zc wraps an arbitrary-precision
// integer; Fc is a prime-field element carrying its modulus.  An Fc with p == 0
// is an integer literal that has not met a modulus yet; it adopts the modulus
// of the other operand on first contact.  This lets generic code write Fc(1)
// without threading a modulus through every template.

using bigint = boost::multiprecision::cpp_int;

struct Zc {
    bigint v;

    Zc() : v(0) {}
    Zc(long x) : v(x) {}
    Zc(int x) : v(x) {}
    Zc(bigint x) : v(std::move(x)) {}

    bool is_zero() const { return v == 0; }
    Zc operator-() const { return Zc(-v); }
    Zc &operator+=(const Zc &o) { v += o.v; return *this; }
    Zc &operator-=(const Zc &o) { v -= o.v; return *this; }
    Zc &operator*=(const Zc &o) { v *= o.v; return *this; }
    friend Zc operator+(Zc a, const Zc &b) { a += b; return a; }
    friend Zc operator-(Zc a, const Zc &b) { a -= b; return a; }
    friend Zc operator*(Zc a, const Zc &b) { a *= b; return a; }
    friend bool operator==(const Zc &a, const Zc &b) { return a.v == b.v; }
    friend bool operator!=(const Zc &a, const Zc &b) { return a.v != b.v; }

    // exact division; throws if the quotient is not integral
    Zc div_exact(const Zc &o) const {
        if (o.v == 0) throw std::domain_error("Zc: division by zero");
        bigint q = v / o.v, r = v % o.v;
        if (r != 0) throw std::domain_error("Zc: inexact division");
        return Zc(q);
    }
    bool divides(const Zc &o) const { return v != 0 && o.v % v == 0; }
    bool is_unit() const { return v == 1 || v == -1; }

    std::string str() const { return v.str(); }
};

inline Zc gcd(const Zc &a, const Zc &b) { return Zc(boost::multiprecision::gcd(a.v, b.v)); }
inline int sign(const Zc &a) { return a.v == 0 ? 0 : (a.v > 0 ? 1 : -1); }

namespace detail {
inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t p) {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p);
}
inline std::int64_t invmod(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = a % p;
    if (nr < 0) nr += p;
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) throw std::domain_error("Fc: non-invertible element");
    return t < 0 ? t + p : t;
}
} // namespace detail

struct Fc {
    std::int64_t v = 0;
    std::int64_t p = 0; // 0: integer literal, not yet reduced

    Fc() = default;
    Fc(long x) : v(x), p(0) {}
    Fc(int x) : v(x), p(0) {}
    Fc(std::int64_t x, std::int64_t prime) : v(x), p(prime) { reduce(); }

    void reduce() {
        if (p) { v %= p; if (v < 0) v += p; }
    }
    static std::int64_t join(const Fc &a, const Fc &b) {
        if (a.p && b.p && a.p != b.p) throw std::domain_error("Fc: modulus mismatch");
        return a.p ? a.p : b.p;
    }

    bool is_zero() const { return p ? v == 0 : v == 0; }
    Fc operator-() const { return p ? Fc(p - v, p) : Fc(-v, 0); }
    friend Fc operator+(const Fc &a, const Fc &b) {
        std::int64_t m = join(a, b);
        Fc r(a.v + b.v, m); return r;
    }
    friend Fc operator-(const Fc &a, const Fc &b) {
        std::int64_t m = join(a, b);
        Fc r(a.v - b.v, m); return r;
    }
    friend Fc operator*(const Fc &a, const Fc &b) {
        std::int64_t m = join(a, b);
        if (!m) return Fc(a.v * b.v, 0);
        return Fc(detail::mulmod(a.v % m, b.v % m, m), m);
    }
    Fc &operator+=(const Fc &o) { *this = *this + o; return *this; }
    Fc &operator-=(const Fc &o) { *this = *this - o; return *this; }
    Fc &operator*=(const Fc &o) { *this = *this * o; return *this; }
    friend bool operator==(const Fc &a, const Fc &b) {
        std::int64_t m = join(a, b);
        if (!m) return a.v == b.v;
        Fc x(a.v, m), y(b.v, m); return x.v == y.v;
    }
    friend bool operator!=(const Fc &a, const Fc &b) { return !(a == b); }

    Fc div_exact(const Fc &o) const {
        std::int64_t m = join(*this, o);
        if (!m) {
            if (o.v == 0) throw std::domain_error("Fc: division by zero");
            if (v % o.v) throw std::domain_error("Fc: inexact division without modulus");
            return Fc(v / o.v, 0);
        }
        Fc num(v, m), den(o.v, m);
        if (den.v == 0) throw std::domain_error("Fc: division by zero");
        return Fc(detail::mulmod(num.v, detail::invmod(den.v, m), m), m);
    }
    bool is_unit() const { return !is_zero(); }

    std::string str() const { return std::to_string(p ? v : v); }
};

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace qfold

#endif
