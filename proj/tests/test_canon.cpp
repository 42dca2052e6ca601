#include <doctest.h>

#include "oracles.hpp"
#include "qfold/canon_checks.hpp"

using namespace qfold;

namespace {
const cartan_datum a1{{"1"}, {{2}}};
const cartan_datum a2{{"1", "2"}, {{2, -1}, {-1, 2}}};
const cartan_datum a3{{"1", "2", "3"}, {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}};

// the two monomial families f1^(a) f2^(b) f1^(c) and f2^(a) f1^(b) f2^(c)
// with b >= a+c, glued on the overlap b = a+c
std::vector<free_elem<Zc>> a2_monomial_model(uq_ctx<Zc> &U, int max_height) {
    std::vector<free_elem<Zc>> out;
    for (int a = 0; a <= max_height; ++a)
        for (int b = 0; b <= max_height; ++b)
            for (int c = 0; c <= max_height; ++c) {
                if (b < a + c || a + b + c == 0 || a + b + c > max_height) continue;
                for (int fam = 0; fam < 2; ++fam) {
                    if (fam == 1 && b == a + c) continue; // glued
                    int x = fam ? 1 : 0, y = fam ? 0 : 1;
                    std::vector<std::pair<int, int>> seq;
                    if (a) seq.push_back({x, a});
                    if (b) seq.push_back({y, b});
                    if (c) seq.push_back({x, c});
                    out.push_back(U.divided_monomial(seq));
                }
            }
    return out;
}
} // namespace

TEST_CASE("single-node bases are the divided powers") {
    uq_ctx<Zc> U(a1, 8);
    canonical_table T(U);
    T.build(6);
    for (int h = 1; h <= 6; ++h) {
        const auto &v = T.at(weight{h});
        REQUIRE(v.size() == 1);
        CHECK(U.eq_mod_radical(T.rep(weight{h}, 0), U.divided_power(0, h)));
    }
}

TEST_CASE("two-node basis equals the monomial model") {
    uq_ctx<Zc> U(a2, 8);
    canonical_table T(U);
    T.build(5);
    auto model = a2_monomial_model(U, 5);
    int total = 0;
    for (const auto &nu : T.weights())
        if (height(nu) >= 1) total += static_cast<int>(T.at(nu).size());
    CHECK(total == static_cast<int>(model.size()));
    for (const auto &m : model) {
        bool found = false;
        for (int k = 0; k < static_cast<int>(T.at(m.wt).size()); ++k)
            if (U.eq_mod_radical(T.rep(m.wt, k), m)) found = true;
        CHECK(found);
    }
}

TEST_CASE("axiom suite") {
    uq_ctx<Zc> U(a2, 8);
    canonical_table T(U);
    T.build(5);
    for (const auto &c : verify_axioms(T)) {
        INFO(c.name, " ", c.detail);
        CHECK(c.pass);
    }
    for (const auto &c : verify_kashiwara_congruence(T)) {
        INFO(c.name);
        CHECK(c.pass);
    }
    CHECK(verify_reachability(T).pass);
}

TEST_CASE("construction is schedule- and relabeling-independent") {
    uq_ctx<Zc> U(a2, 8);
    canonical_table T(U);
    T.build(4);
    for (unsigned seed : {1u, 99u}) {
        uq_ctx<Zc> U2(a2, 8);
        canonical_table T2(U2);
        T2.build(4, build_schedule{seed});
        for (const auto &nu : T.weights()) {
            const auto &a = T.at(nu);
            const auto &b = T2.at(nu);
            REQUIRE(a.size() == b.size());
            for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k].coords == b[k].coords);
        }
    }
    // nodes presented in the opposite order; canonicalized on load
    cartan_datum permuted{{"2", "1"}, {{2, -1}, {-1, 2}}};
    uq_ctx<Zc> U3(permuted.sorted_by_label(), 8);
    canonical_table T3(U3);
    T3.build(4);
    for (const auto &nu : T.weights()) {
        const auto &a = T.at(nu);
        const auto &b = T3.at(nu);
        REQUIRE(a.size() == b.size());
        for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k].coords == b[k].coords);
    }
}

TEST_CASE("signed-basis search finds exactly the signed basis") {
    uq_ctx<Zc> U(a2, 8);
    canonical_table T(U);
    T.build(4);
    for (const auto &nu : T.weights()) {
        if (height(nu) < 1) continue;
        auto c = signed_basis_scan(T, nu);
        INFO(c.detail);
        CHECK(c.pass);
    }
    uq_ctx<Zc> U1(a1, 8);
    canonical_table T1(U1);
    T1.build(3);
    CHECK(signed_basis_scan(T1, weight{2}).pass);
}

TEST_CASE("crystal graph") {
    uq_ctx<Zc> U(a2, 8);
    canonical_table T(U);
    T.build(4);
    auto g = build_crystal_graph(T, 4);
    CHECK(g.counts_match);
    int total = 0;
    for (const auto &nu : T.weights()) total += static_cast<int>(T.at(nu).size());
    CHECK(static_cast<int>(g.nodes.size()) == total);
    // chain shape on a single node
    uq_ctx<Zc> U1(a1, 8);
    canonical_table T1(U1);
    T1.build(5);
    auto g1 = build_crystal_graph(T1, 5);
    CHECK(g1.nodes.size() == 6);
    CHECK(g1.edges.size() == 5);
    CHECK(!crystal_dot(T1, g1).empty());
}

TEST_CASE("layer bijections commute for orthogonal nodes") {
    uq_ctx<Zc> U(a3, 8);
    canonical_table T(U);
    T.build(5);
    CHECK(verify_projection_commutation(T).pass);
}

TEST_CASE("automorphism and star act on the basis") {
    uq_ctx<Zc> U(a3, 8);
    canonical_table T(U);
    T.build(4);
    diagram_aut s{{2, 1, 0}};
    auto bm = basis_automorphism(T, s);
    // the height-3 invariant weight has a nonempty fixed set
    weight nu{1, 1, 1};
    const auto &perm = bm.perm.at(nu);
    int fixed = 0;
    for (int i = 0; i < static_cast<int>(perm.size()); ++i)
        if (perm[i] == i) ++fixed;
    CHECK(fixed > 0);
    // identity automorphism fixes everything
    auto bid = basis_automorphism(T, diagram_aut{{0, 1, 2}});
    for (const auto &[w, p] : bid.perm)
        for (int i = 0; i < static_cast<int>(p.size()); ++i) CHECK(p[i] == i);
    // star is an involutive permutation
    auto bs = basis_star(T);
    for (const auto &[w, p] : bs.perm)
        for (int i = 0; i < static_cast<int>(p.size()); ++i) CHECK(p[p[i]] == i);
}
