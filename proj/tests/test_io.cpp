#include <doctest.h>

#include <filesystem>

#include "qfold/io.hpp"

using namespace qfold;

TEST_CASE("datum files round trip and canonicalize") {
    cartan_datum X{{"2", "1"}, {{2, -1}, {-1, 2}}};
    json j = to_json(X);
    cartan_datum Y = datum_from_json(j);
    CHECK(Y.labels == X.labels);
    cartan_datum S = Y.sorted_by_label();
    CHECK(S.labels == std::vector<std::string>{"1", "2"});
    CHECK(S.gram == X.gram); // symmetric here, values preserved
    CHECK_THROWS(datum_from_json(json{{"labels", {"1"}}, {"gram", {{3}}}}));
}

TEST_CASE("automorphism and weight parsing") {
    auto a = aut_from_string("3,2,1", 3);
    CHECK(a.perm == std::vector<int>{2, 1, 0});
    CHECK(aut_from_json(to_json(a), 3).perm == a.perm);
    CHECK_THROWS(aut_from_string("1,2", 3));
    CHECK(weight_from_string("1,2,0", 3) == weight{1, 2, 0});
    CHECK_THROWS(weight_from_string("1,-1,0", 3));
}

TEST_CASE("cache round trips and rejects corruption") {
    auto tmp = std::filesystem::temp_directory_path() / "qfold_cache_test";
    std::filesystem::remove_all(tmp);
    cache_dir cd(tmp.string());
    REQUIRE(cd.enabled());
    json payload = {{"hello", "world"}, {"n", 42}};
    CHECK(cd.store_verified("sub/key", payload));
    auto back = cd.load("sub/key");
    REQUIRE(back.has_value());
    CHECK(*back == payload);
    // corrupt the file
    {
        std::ofstream f(cd.path_for("sub/key"));
        f << "{\"version\":\"qfold-cache-1\",\"payload\":{\"hello\":\"tampered\"},\"checksum\":\"0\"}";
    }
    CHECK(!cd.load("sub/key").has_value());
    // version bump invalidates
    {
        std::ofstream f(cd.path_for("sub/key"));
        json old = {{"version", "qfold-cache-0"}, {"payload", payload}, {"checksum", hex64(fnv1a(payload.dump()))}};
        f << old.dump();
    }
    CHECK(!cd.load("sub/key").has_value());
    std::filesystem::remove_all(tmp);
    cache_dir off("");
    CHECK(!off.load("x").has_value());
}

TEST_CASE("basis serialization is canonical") {
    cartan_datum a2{{"1", "2"}, {{2, -1}, {-1, 2}}};
    uq_ctx<Zc> U1(a2, 6), U2(a2, 6);
    canonical_table T1(U1), T2(U2);
    T1.build(3, {}, 1);
    T2.build(3, build_schedule{777}, 2);
    CHECK(table_to_json(T1).dump() == table_to_json(T2).dump());
    // a weight slice has the expected fields
    json j = basis_weight_to_json(T1, weight{1, 1});
    CHECK(j.contains("pivot_words"));
    CHECK(j["elements"].size() == 2);
    for (const auto &e : j["elements"]) {
        CHECK(e.contains("coords"));
        CHECK(e.contains("eps"));
        CHECK(e.contains("provenance"));
    }
}

TEST_CASE("free elements serialize with canonical coefficients") {
    cartan_datum a2{{"1", "2"}, {{2, -1}, {-1, 2}}};
    uq_ctx<Zc> U(a2, 6);
    auto x = U.divided_power(0, 2);
    json j = free_elem_to_json(a2, x);
    CHECK(j["terms"].size() == 1);
    std::string coeff = j["terms"][0]["coeff"];
    CHECK(parse_ratfunc<Zc>(coeff) == x.terms.begin()->second);
}

TEST_CASE("gram cache slice") {
    cartan_datum a2{{"1", "2"}, {{2, -1}, {-1, 2}}};
    uq_ctx<Zc> U(a2, 6);
    json j = gram_weight_to_json(U, weight{1, 1});
    CHECK(j["radical_rank"] == 0);
    CHECK(j["gram_scaled_pivot_block"].size() == 2);
    // scaled entries parse back as Laurent polynomials
    for (const auto &row : j["gram_scaled_pivot_block"])
        for (const auto &s : row) parse_laurent<Zc>(s.get<std::string>());
}
