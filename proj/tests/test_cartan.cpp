#include <doctest.h>

#include "qfold/cartan.hpp"

using namespace qfold;

namespace {
cartan_datum mk(std::vector<std::string> l, std::vector<std::vector<long>> g) { return {std::move(l), std::move(g)}; }
const cartan_datum a2 = mk({"1", "2"}, {{2, -1}, {-1, 2}});
const cartan_datum a3 = mk({"1", "2", "3"}, {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}});
const cartan_datum b2 = mk({"1", "2"}, {{4, -2}, {-2, 2}});
const cartan_datum g2 = mk({"1", "2"}, {{6, -3}, {-3, 2}});
const cartan_datum d4 = mk({"0", "1", "2", "3"},
                           {{2, -1, -1, -1}, {-1, 2, 0, 0}, {-1, 0, 2, 0}, {-1, 0, 0, 2}});
} // namespace

TEST_CASE("datum validation") {
    CHECK(a2.validate().ok);
    CHECK(mk({"1", "2"}, {{2, -3}, {-3, 2}}).validate().ok);
    auto bad = mk({"1", "2"}, {{1, 0}, {0, 2}}).validate();
    CHECK(!bad.ok);
    CHECK(!bad.diagnostic.empty());
    CHECK(!mk({"1", "2"}, {{2, -1}, {-2, 2}}).validate().ok); // asymmetric
    CHECK(!mk({"1", "2"}, {{2, 1}, {1, 2}}).validate().ok);   // positive off-diagonal
    CHECK(!mk({"1", "2"}, {{4, -1}, {-1, 2}}).validate().ok); // non-integral cartan entry
}

TEST_CASE("admissibility") {
    diagram_aut s13{{2, 1, 0}};
    CHECK(is_admissible(a3, s13));
    diagram_aut swp{{1, 0}};
    CHECK(!is_admissible(a2, swp));
    diagram_aut id3{{0, 1, 2}};
    CHECK(is_admissible(a3, id3));
    CHECK_THROWS(is_admissible(b2, swp)); // does not preserve the form
}

TEST_CASE("folding") {
    auto fr = fold(a3, diagram_aut{{2, 1, 0}});
    CHECK(fr.folded.gram == std::vector<std::vector<long>>{{4, -2}, {-2, 2}});
    CHECK(fr.folded.a(0, 1) == -1);
    CHECK(fr.folded.a(1, 0) == -2);
    auto fr2 = fold(mk({"1", "2"}, {{2, 0}, {0, 2}}), diagram_aut{{1, 0}});
    CHECK(fr2.folded.n() == 1);
    CHECK(fr2.folded.gram[0][0] == 4);
    auto fr3 = fold(a3, diagram_aut{{0, 1, 2}});
    CHECK(fr3.folded.gram == a3.gram);
    CHECK_THROWS(fold(a2, diagram_aut{{1, 0}}));
}

TEST_CASE("unfolding") {
    auto ub = unfold(b2);
    CHECK(isomorphic(ub.unfolded, a3));
    CHECK(ub.aut.order() == 2);
    CHECK(isomorphic(fold(ub.unfolded, ub.aut).folded, b2));
    auto ug = unfold(g2);
    CHECK(isomorphic(ug.unfolded, d4));
    CHECK(ug.aut.order() == 3);
    auto us = unfold(a3); // symmetric data unfold to themselves
    CHECK(isomorphic(us.unfolded, a3));
    CHECK(us.aut.is_identity());
}

TEST_CASE("fold-unfold round trip on small data") {
    // every valid rank-2 datum with diagonal in {2,4,6} and pairing >= -6
    int tested = 0;
    for (long d1 : {2L, 4L, 6L})
        for (long d2 : {2L, 4L, 6L})
            for (long off = -6; off <= 0; ++off) {
                cartan_datum X = mk({"1", "2"}, {{d1, off}, {off, d2}});
                if (!X.validate().ok) continue;
                auto ur = unfold(X);
                CHECK(isomorphic(fold(ur.unfolded, ur.aut).folded, X));
                ++tested;
            }
    CHECK(tested >= 10);
    // a few higher-rank data
    for (const auto &X : {a3, d4, mk({"1", "2", "3"}, {{2, -1, 0}, {-1, 2, -2}, {0, -2, 4}})}) {
        auto ur = unfold(X);
        CHECK(isomorphic(fold(ur.unfolded, ur.aut).folded, X));
    }
}

TEST_CASE("prime-power factorization chains") {
    cartan_datum six = mk({"a", "b", "c", "d", "e", "f"},
                          {{2, 0, 0, 0, 0, 0},
                           {0, 2, 0, 0, 0, 0},
                           {0, 0, 2, 0, 0, 0},
                           {0, 0, 0, 2, 0, 0},
                           {0, 0, 0, 0, 2, 0},
                           {0, 0, 0, 0, 0, 2}});
    diagram_aut rot{{1, 2, 3, 4, 5, 0}};
    auto chain = factor_automorphism(six, rot);
    REQUIRE(chain.stages.size() == 2);
    CHECK(chain.stages[0].s.order() == 3);
    CHECK(chain.stages[1].s.order() == 2);
    CHECK(chain_matches(six, rot, chain));

    auto single = factor_automorphism(a3, diagram_aut{{2, 1, 0}});
    CHECK(single.stages.size() == 1);
    CHECK(chain_matches(a3, diagram_aut{{2, 1, 0}}, single));

    CHECK(factor_automorphism(a3, diagram_aut{{0, 1, 2}}).stages.empty());

    // two-stage folding along an order-6 automorphism of an unfolded datum
    cartan_datum X12 = mk({"1", "2"}, {{12, -6}, {-6, 2}});
    REQUIRE(X12.validate().ok);
    auto ur = unfold(X12);
    CHECK(ur.aut.order() == 6);
    auto ch = factor_automorphism(ur.unfolded, ur.aut);
    CHECK(ch.stages.size() == 2);
    CHECK(chain_matches(ur.unfolded, ur.aut, ch));
}

TEST_CASE("weights across folds") {
    auto fr = fold(a3, diagram_aut{{2, 1, 0}});
    CHECK(fold_weight(weight{1, 1, 1}, fr) == weight{1, 1});
    CHECK(fold_weight(weight{0, 0, 0}, fr) == weight{0, 0});
    CHECK_THROWS(fold_weight(weight{1, 0, 0}, fr));
    // additive bijection on invariant weights of small height
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b) {
            weight nu{a, b, a};
            weight fw = fold_weight(nu, fr);
            CHECK(fw == weight{a, b});
            CHECK(unfold_weight(fw, fr, 3) == nu);
        }
    weight s = sigma_weight(weight{2, 0, 1}, diagram_aut{{2, 1, 0}});
    CHECK(s == weight{1, 0, 2});
}
