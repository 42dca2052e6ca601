#include <doctest.h>

#include "oracles.hpp"
#include "qfold/foldmodp.hpp"

using namespace qfold;

namespace {
const cartan_datum a1a1{{"1", "2"}, {{2, 0}, {0, 2}}};
const cartan_datum a3{{"1", "2", "3"}, {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}};
const cartan_datum a2a2{{"1", "2", "3", "4"},
                        {{2, -1, 0, 0}, {-1, 2, 0, 0}, {0, 0, 2, -1}, {0, 0, -1, 2}}};
} // namespace

TEST_CASE("orbit algebra for the doubled node") {
    fold_context F(a1a1, diagram_aut{{1, 0}}, 2, 4);
    F.build();
    // g_eta . pi(1) = g_eta
    auto g = F.g_eta(0, 1);
    weight zero{0, 0};
    vq_elem one;
    one.nu = zero;
    one.coords = {F.QX().reduce(qrat(1))};
    // multiply by hand: lift(g) * lift(one)
    auto prod = F.vq_multiply(g, one);
    CHECK(prod.coords == g.coords);
    // g^2 = [2]_{d_eta} g^(2) with d_eta = 2
    auto gg = F.vq_multiply(g, g);
    auto g2 = F.g_eta(0, 2);
    frat c = frat(F.QX().l_qint(2, 2));
    REQUIRE(gg.coords.size() == g2.coords.size());
    for (std::size_t k = 0; k < gg.coords.size(); ++k) CHECK(gg.coords[k] == c * g2.coords[k]);
    // star invariance of the orbit generators
    for (int a = 1; a <= 2; ++a) {
        auto fe = F.orbit_divided_power(0, a);
        CHECK(F.QX().eq_mod_radical(fe, star(fe)));
    }
    for (auto &c2 : F.verify_dimensions(4)) CHECK(c2.pass);
    for (auto &c2 : F.verify_xi(4)) CHECK(c2.pass);
}

TEST_CASE("orbit sums pair to zero against fixed elements mod p") {
    fold_context F(a3, diagram_aut{{2, 1, 0}}, 2, 4);
    F.build();
    auto &U = F.QX();
    std::mt19937 rng(61);
    int nontrivial = 0;
    for (const auto &nu : F.invariant_weights(4)) {
        for (const auto &orb : F.basis_orbits(nu)) {
            free_elem<Fc> osum = zero_elem<Fc>(a3, nu);
            for (int idx : orb) osum = add(osum, F.reduce_elem(F.BX().rep(nu, idx)));
            for (int fx : F.fixed_basis(nu)) {
                auto v = U.form_value(osum, F.reduce_elem(F.BX().rep(nu, fx)));
                CHECK(v.is_zero());
                ++nontrivial;
            }
        }
    }
    CHECK(nontrivial > 0);
}

TEST_CASE("ideal membership and projection") {
    fold_context F(a3, diagram_aut{{2, 1, 0}}, 2, 4);
    F.build();
    // B at (1,0,1) = {f1 f3}: sigma-fixed, so no J component
    weight nu{1, 0, 1};
    CHECK(F.basis_orbits(nu).empty());
    CHECK(F.fixed_basis(nu).size() == F.BX().at(nu).size());
    // a free orbit at (1,1,0)+(0,1,1): the orbit sum lies in J
    weight mixed{1, 1, 1};
    auto orbs = F.basis_orbits(mixed);
    for (const auto &orb : orbs) {
        free_elem<Fc> osum = zero_elem<Fc>(a3, mixed);
        for (int idx : orb) osum = add(osum, F.reduce_elem(F.BX().rep(mixed, idx)));
        CHECK(F.in_J(osum));
    }
    for (auto &c : F.verify_ideal_stability(3)) CHECK(c.pass);
    // a product landing entirely in J projects to zero
    weight offdiag{1, 1, 0};
    const auto &perm_elems = F.BX().at(offdiag);
    REQUIRE(!perm_elems.empty());
    diagram_aut s{{2, 1, 0}};
    free_elem<Fc> z = F.reduce_elem(F.BX().rep(offdiag, 0));
    free_elem<Fc> zs = F.reduce_elem(apply_aut(F.BX().rep(offdiag, 0), s));
    free_elem<Fc> osum = add(z, zs);
    weight target{1, 2, 1};
    // multiply by the fixed generator f2 and check the projection kills the
    // non-fixed part componentwise
    auto prod = qfold::multiply(F.reduce_elem(F.BX().rep(weight{0, 1, 0}, 0)), osum);
    CHECK(F.in_J(prod));
}

TEST_CASE("full verification suites pass on the shipped folds") {
    {
        fold_context F(a3, diagram_aut{{2, 1, 0}}, 2, 4);
        F.build();
        for (auto &c : F.verify_phi_relations()) CHECK(c.pass);
        for (const auto &nu : F.invariant_weights(4)) CHECK(F.verify_isometry(nu).pass);
        for (auto &c : F.verify_dimensions(4)) CHECK(c.pass);
        for (auto &c : F.verify_xi(4)) CHECK(c.pass);
        for (auto &c : F.verify_xi_star(4)) CHECK(c.pass);
        for (auto &c : F.verify_xi_equivariance(4)) CHECK(c.pass);
        for (auto &c : F.verify_decomposition(4)) CHECK(c.pass);
    }
    {
        fold_context F(a2a2, diagram_aut{{2, 3, 0, 1}}, 2, 4);
        F.build();
        for (auto &c : F.verify_phi_relations()) CHECK(c.pass);
        for (const auto &nu : F.invariant_weights(4)) CHECK(F.verify_isometry(nu).pass);
        for (auto &c : F.verify_dimensions(4)) CHECK(c.pass);
        for (auto &c : F.verify_xi(4)) CHECK(c.pass);
        for (auto &c : F.verify_xi_equivariance(4)) CHECK(c.pass);
    }
}

TEST_CASE("stage bijections compose along a factorization chain") {
    // six disjoint nodes cycled by an order-6 automorphism; the only
    // invariant weights are multiples of the all-ones vector
    cartan_datum six{{"a", "b", "c", "d", "e", "f"},
                     {{2, 0, 0, 0, 0, 0},
                      {0, 2, 0, 0, 0, 0},
                      {0, 0, 2, 0, 0, 0},
                      {0, 0, 0, 2, 0, 0},
                      {0, 0, 0, 0, 2, 0},
                      {0, 0, 0, 0, 0, 2}}};
    diagram_aut rot{{1, 2, 3, 4, 5, 0}};

    auto run_chain = [&](int first_power, std::int64_t p1, std::int64_t p2) {
        diagram_aut tau = rot.power(first_power);
        fold_context F1(six, tau, p1, 6);
        F1.build();
        auto r1 = F1.verify_xi(6);
        for (auto &c : r1) REQUIRE(c.pass);
        fold_result fr1 = fold(six, tau);
        diagram_aut sbar;
        sbar.perm.resize(fr1.orbits.size());
        for (std::size_t e = 0; e < fr1.orbits.size(); ++e)
            sbar.perm[e] = fr1.orbit_of[rot.perm[fr1.orbits[e][0]]];
        fold_context F2(F1.uX(), sbar, p2, 6 / static_cast<int>(fr1.orbits[0].size() ? fr1.orbits[0].size() : 1));
        // heights: stage-2 weights are the folded images, height 6 / |orbit|
        F2.build();
        weight nu(6, 1); // all-ones, the fundamental invariant weight
        auto fx1 = F1.fixed_basis(nu);
        REQUIRE(fx1.size() == 1);
        weight w1 = fold_weight(nu, F1.folding());
        int mid = F1.xi().at(nu)[0];
        auto r2 = F2.verify_xi(height(w1));
        for (auto &c : r2) REQUIRE(c.pass);
        auto fx2 = F2.fixed_basis(w1);
        auto pos = std::find(fx2.begin(), fx2.end(), mid);
        REQUIRE(pos != fx2.end());
        int final_idx = F2.xi().at(w1)[pos - fx2.begin()];
        weight w2 = fold_weight(w1, F2.folding());
        return std::tuple<weight, int, cartan_datum>{w2, final_idx, F2.uX()};
    };

    // 6 = 3 * 2: first tau = rot^2 (order 3), then order 2
    auto [wA, iA, XA] = run_chain(2, 3, 2);
    // 6 = 2 * 3: first tau = rot^3 (order 2), then order 3
    auto [wB, iB, XB] = run_chain(3, 2, 3);
    CHECK(XA.gram == XB.gram);
    CHECK(wA == wB);
    CHECK(iA == iB);
}
