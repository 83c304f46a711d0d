#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tight/generators.hpp"

using namespace tight;

TEST_CASE("boundary simplices") {
    CHECK(boundary_simplex(3).f_vector() == FVector({4, 6, 4}));
    CHECK(boundary_simplex(4).f_vector() == FVector({5, 10, 10, 5}));
    CHECK(boundary_simplex(5).f_vector() == FVector({6, 15, 20, 15, 6}));
    CHECK_THROWS_AS(boundary_simplex(1), std::invalid_argument);
}

TEST_CASE("cross polytopes") {
    CHECK(cross_polytope(2).f_vector() == FVector({6, 12, 8}));
    auto cp3 = cross_polytope(3);
    CHECK(cp3.vertex_count() == 8);
    CHECK(cp3.faces(1).size() == 24);
    CHECK(cp3.facets().size() == 16);
    auto cp4 = cross_polytope(4);
    CHECK(cp4.vertex_count() == 10);
    CHECK(cp4.dim() == 4);
}

TEST_CASE("icosahedron is a 5-regular 2-sphere") {
    auto ico = icosahedron();
    CHECK(ico.f_vector() == FVector({12, 30, 20}));
    CHECK(ico.closed_pseudomanifold());
    CHECK(ico.one_skeleton().is_regular(5));
}

TEST_CASE("moebius torus") {
    auto t = moebius_torus7();
    CHECK(t.f_vector() == FVector({7, 21, 14}));
    CHECK(t.euler_characteristic() == 0);
    CHECK(t.is_k_neighbourly(2));
}

TEST_CASE("rp2_6") {
    auto r = rp2_6();
    CHECK(r.f_vector() == FVector({6, 15, 10}));
    CHECK(r.euler_characteristic() == 1);
    CHECK(r.is_k_neighbourly(2));
}

TEST_CASE("connected sums") {
    auto s = connected_sum_with_trios(0, 2);
    CHECK(s.complex.f_vector() == FVector({5, 9, 6}));
    CHECK(s.gluing_trios.size() == 1);

    for (auto [k, l] : std::vector<std::pair<int, int>>{{0, 1}, {0, 3}, {1, 0}, {1, 1}}) {
        auto c = connected_sum(k, l);
        CHECK(c.vertex_count() == 9 * k + l + 3);
        CHECK(c.euler_characteristic() == 2);
    }
    CHECK_THROWS_AS(connected_sum(0, 0), std::invalid_argument);

    // the gluing trio spans an induced empty 3-cycle
    auto s2 = connected_sum_with_trios(1, 1);
    const auto& c = s2.complex;
    for (const auto& trio : s2.gluing_trios) {
        std::vector<int> ids;
        for (const auto& lab : trio) ids.push_back(c.id_of(lab));
        std::sort(ids.begin(), ids.end());
        Graph sk = c.one_skeleton();
        CHECK(sk.has_edge(ids[0], ids[1]));
        CHECK(sk.has_edge(ids[0], ids[2]));
        CHECK(sk.has_edge(ids[1], ids[2]));
        CHECK_FALSE(c.has_face({ids[0], ids[1], ids[2]}));
    }
}

TEST_CASE("gen dispatcher") {
    CHECK(gen("boundary_simplex", {3}).f_vector() == FVector({4, 6, 4}));
    CHECK(gen("moebius_torus7").vertex_count() == 7);
    CHECK(gen("connected_sum", {0, 2}).f_vector() == FVector({5, 9, 6}));
    CHECK_THROWS_AS(gen("nonsense"), std::invalid_argument);
    CHECK_THROWS_AS(gen("icosahedron", {3}), std::invalid_argument);
}
