#include <doctest.h>

#include <random>

#include "qfold/ratfunc.hpp"

using namespace qfold;

namespace {
qrat rf(const zpoly &n, const zpoly &d) { return qrat(n, d); }
zpoly q(int e) { return zpoly::monomial(e); }

qrat random_ratfunc(std::mt19937 &rng) {
    std::uniform_int_distribution<int> cf(-4, 4), ex(0, 3);
    auto poly = [&] {
        zpoly p;
        for (int t = 0; t < 3; ++t) p += zpoly::monomial(ex(rng), Zc(cf(rng)));
        return p;
    };
    zpoly den;
    while (den.is_zero()) den = poly();
    return qrat(poly(), den);
}
} // namespace

TEST_CASE("symmetric q-integers") {
    CHECK(qint(0, 1).is_zero());
    CHECK(qint(3, 1) == q(-2) + zpoly(1) + q(2));
    CHECK(qint(2, 2) == q(-2) + q(2));
    for (int n = -6; n <= 6; ++n) CHECK(qint(-n, 2) == -qint(n, 2));
}

TEST_CASE("q-binomials") {
    for (int n : {-5, -1, 0, 3, 7}) CHECK(qbinom(n, 0, 1) == zpoly(1));
    // [-1 t-1] = (-1)^{t-1}
    for (int t = 1; t <= 6; ++t) {
        zpoly v = qbinom(-1, t - 1, 1);
        CHECK(v == ((t - 1) % 2 ? -zpoly(1) : zpoly(1)));
    }
    CHECK(qbinom(4, 2, 1) == q(-4) + q(-2) + zpoly(2) + q(2) + q(4));
    // symmetry [n m] = [n n-m] for 0 <= m <= n
    for (int n = 0; n <= 7; ++n)
        for (int m = 0; m <= n; ++m) CHECK(qbinom(n, m, 1) == qbinom(n, n - m, 1));
    // [n m] [m]! = [n][n-1]...[n-m+1] for all tested n, m, d
    for (int d = 1; d <= 3; ++d)
        for (int n = -4; n <= 6; ++n)
            for (int m = 0; m <= 4; ++m) {
                zpoly prod(1);
                for (int k = 0; k < m; ++k) prod *= qint(n - k, d);
                CHECK(qbinom(n, m, d) * qfact(m, d) == prod);
            }
}

TEST_CASE("bar involution") {
    CHECK(qrat(q(1)).bar() == qrat(q(-1)));
    CHECK(qrat(qint(3, 1)).bar() == qrat(qint(3, 1)));
    qrat x = rf(zpoly(1), zpoly(1) - q(2));
    CHECK(x.bar() == rf(-q(2), zpoly(1) - q(2)));
    std::mt19937 rng(7);
    for (int t = 0; t < 50; ++t) {
        qrat a = random_ratfunc(rng), b = random_ratfunc(rng);
        CHECK(a.bar().bar() == a);
        CHECK((a * b).bar() == a.bar() * b.bar());
        CHECK((a + b).bar() == a.bar() + b.bar());
    }
}

TEST_CASE("ring membership") {
    qrat geom = rf(zpoly(1), zpoly(1) - q(2));
    CHECK(geom.is_member(ring_membership::one_plus_qz_series));
    CHECK(!qrat(q(-1)).is_member(ring_membership::a0));
    CHECK(rf(q(1), zpoly(1) - q(1)).is_member(ring_membership::qz_series));
    CHECK(!rf(zpoly(1), zpoly(2)).is_member(ring_membership::z_series)); // 1/2
    CHECK(rf(zpoly(1), zpoly(2)).is_member(ring_membership::a0));
    CHECK(qrat().is_member(ring_membership::a0));
    // closure of Z[[q]] cap Q(q) under products
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> cf(-3, 3), ex(1, 3);
    for (int t = 0; t < 60; ++t) {
        auto zser = [&] { // 1 + q*poly over a unit-constant denominator
            zpoly num(1), den(1);
            for (int k = 0; k < 2; ++k) num += zpoly::monomial(ex(rng), Zc(cf(rng)));
            for (int k = 0; k < 2; ++k) den += zpoly::monomial(ex(rng), Zc(cf(rng)));
            return qrat(num, den);
        };
        qrat a = zser(), b = zser();
        REQUIRE(a.is_member(ring_membership::z_series));
        REQUIRE(b.is_member(ring_membership::z_series));
        CHECK((a * b).is_member(ring_membership::z_series));
    }
}

TEST_CASE("mod-p reduction") {
    zpoly t = zpoly::monomial(1, Zc(2)) + zpoly(3);
    CHECK(reduce_mod_p(t, 2) == fpoly(Fc(1, 2)));
    CHECK(reduce_mod_p(zpoly::monomial(1, Zc(3)), 3).is_zero());
    {
        fpoly a = reduce_mod_p(qfact(2, 1), 2);
        CHECK(a * a == reduce_mod_p(qfact(2, 2), 2));
    }
    CHECK_THROWS(reduce_mod_p(t, 4));
    // ring homomorphism on random samples
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> cf(-9, 9), ex(-3, 3);
    auto poly = [&] {
        zpoly p;
        for (int t2 = 0; t2 < 4; ++t2) p += zpoly::monomial(ex(rng), Zc(cf(rng)));
        return p;
    };
    for (int t2 = 0; t2 < 60; ++t2) {
        zpoly a = poly(), b = poly();
        for (std::int64_t p : {2, 3, 5}) {
            CHECK(reduce_mod_p(a + b, p) == reduce_mod_p(a, p) + reduce_mod_p(b, p));
            CHECK(reduce_mod_p(a * b, p) == reduce_mod_p(a, p) * reduce_mod_p(b, p));
        }
    }
}

TEST_CASE("canonical text form round trip") {
    zpoly z = parse_laurent<Zc>("-1*q^-2 + 3 + 2*q^5");
    CHECK(z.str() == "-1*q^-2 + 3 + 2*q^5");
    CHECK(parse_laurent<Zc>("0").is_zero());
    std::mt19937 rng(17);
    for (int t = 0; t < 80; ++t) {
        qrat a = random_ratfunc(rng);
        CHECK(parse_ratfunc<Zc>(a.str()) == a);
    }
    // F_p round trip keeps the modulus
    fpoly f = reduce_mod_p(parse_laurent<Zc>("4 + 7*q^2"), 5);
    CHECK(parse_laurent<Fc>(f.str(), 5) == f);
}

TEST_CASE("rational function field axioms") {
    std::mt19937 rng(19);
    for (int t = 0; t < 40; ++t) {
        qrat a = random_ratfunc(rng), b = random_ratfunc(rng), c = random_ratfunc(rng);
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        if (!a.is_zero()) CHECK(a / a == qrat(1));
        CHECK(a - a == qrat());
    }
}
