#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tight/generators.hpp"
#include "tight/treewidth.hpp"

using namespace tight;

namespace {

Graph path_graph(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    g.finish();
    return g;
}

Graph cycle_graph(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    g.finish();
    return g;
}

Graph complete_graph(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    g.finish();
    return g;
}

Graph random_graph(std::mt19937& rng, int n, double density) {
    Graph g(n);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng) < density) g.add_edge(i, j);
    g.finish();
    return g;
}

}  // namespace

TEST_CASE("decompose widths on basic graphs") {
    CHECK(width(decompose(path_graph(4), Strategy::MinDegree)) == 1);
    CHECK(width(decompose(complete_graph(5), Strategy::MinFill)) == 4);
    CHECK(width(decompose(cycle_graph(6), Strategy::ExactSmall)) == 2);
    CHECK_THROWS_AS(decompose(Graph(0)), std::invalid_argument);
    CHECK_THROWS_AS(decompose(complete_graph(13), Strategy::ExactSmall),
                    std::invalid_argument);
}

TEST_CASE("validate finds planted violations") {
    Graph g = cycle_graph(4);
    TreeDecomposition t = decompose(g, Strategy::MinFill);
    CHECK(validate(t, g).ok);

    // drop the sole bag covering some edge -> edge coverage violation
    TreeDecomposition broken = t;
    for (auto& bag : broken.bags) {
        if (bag.size() >= 2) {
            bag.erase(bag.begin());
            break;
        }
    }
    auto r1 = validate(broken, g);
    CHECK_FALSE(r1.ok);
    CHECK((r1.violated == "edge coverage" || r1.violated == "vertex coverage" ||
           r1.violated == "subtree property"));

    // duplicate a vertex into two disconnected bags -> subtree violation
    TreeDecomposition split;
    split.bags = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
    split.edges = {{0, 1}, {1, 2}, {2, 3}};
    auto r2 = validate(split, g);
    CHECK_FALSE(r2.ok);
    CHECK(r2.violated == "subtree property");
    CHECK(r2.witness == "vertex 0");
}

TEST_CASE("make_nice preserves width and validates") {
    for (auto strategy : {Strategy::MinDegree, Strategy::MinFill}) {
        for (const Graph& g : {path_graph(4), complete_graph(5), cycle_graph(6),
                               icosahedron().one_skeleton()}) {
            TreeDecomposition t = decompose(g, strategy);
            NiceTreeDecomposition nt = make_nice(t, g);
            CHECK(nt.width == width(t));
            CHECK(validate_nice(nt).ok);
            CHECK(validate(to_tree_decomposition(nt), g).ok);
            int max_bag = 0;
            for (const auto& b : nt.bags) max_bag = std::max(max_bag, (int)b.bag.size());
            CHECK(max_bag - 1 == width(t));
        }
    }
}

TEST_CASE("nice bags have the five types structurally correct") {
    Graph g = icosahedron().one_skeleton();
    NiceTreeDecomposition nt = make_nice(decompose(g, Strategy::MinFill), g);
    for (size_t i = 0; i < nt.bags.size(); ++i) {
        const NiceBag& b = nt.bags[i];
        switch (b.type) {
            case NiceBag::Leaf:
                CHECK(b.bag.size() == 1);
                break;
            case NiceBag::Introduce:
                CHECK(b.bag.size() == nt.bags[b.child1].bag.size() + 1);
                break;
            case NiceBag::Forget:
                CHECK(b.bag.size() + 1 == nt.bags[b.child1].bag.size());
                break;
            case NiceBag::Join:
                CHECK(nt.bags[b.child1].bag == b.bag);
                CHECK(nt.bags[b.child2].bag == b.bag);
                break;
            case NiceBag::Root:
                CHECK(i + 1 == nt.bags.size());
                CHECK(b.bag.size() == 1);
                break;
        }
    }
}

TEST_CASE("random graphs: decompose -> make_nice -> validate, 200 rounds") {
    std::mt19937 rng(424242);
    std::uniform_int_distribution<int> nd(1, 20);
    std::uniform_real_distribution<double> dd(0.05, 0.95);
    for (int trial = 0; trial < 200; ++trial) {
        Graph g = random_graph(rng, nd(rng), dd(rng));
        Strategy s = trial % 2 ? Strategy::MinDegree : Strategy::MinFill;
        TreeDecomposition t = decompose(g, s);
        CHECK(validate(t, g).ok);
        NiceTreeDecomposition nt = make_nice(t, g);
        CHECK(validate_nice(nt).ok);
        CHECK(nt.width == width(t));
        CHECK(validate(to_tree_decomposition(nt), g).ok);
        // linear bag count
        CHECK(nt.bags.size() <= 4 * (g.n + (width(t) + 1) * t.bags.size() + 2));
    }
}

TEST_CASE("exact_small never beaten by heuristics") {
    std::mt19937 rng(7777);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + static_cast<int>(rng() % 9);
        Graph g = random_graph(rng, n, 0.15 + 0.07 * (trial % 10));
        int exact = width(decompose(g, Strategy::ExactSmall));
        CHECK(exact <= width(decompose(g, Strategy::MinDegree)));
        CHECK(exact <= width(decompose(g, Strategy::MinFill)));
    }
}

TEST_CASE("path decomposition is a valid join-free decomposition") {
    for (const Graph& g : {cycle_graph(6), icosahedron().one_skeleton(),
                           moebius_torus7().dual_graph()}) {
        TreeDecomposition t = path_decomposition(g);
        CHECK(validate(t, g).ok);
        NiceTreeDecomposition nt = make_nice(t, g);
        CHECK(validate_nice(nt).ok);
        for (const auto& b : nt.bags) CHECK(b.type != NiceBag::Join);
    }
}

TEST_CASE("disconnected graphs decompose cleanly") {
    Graph g(7);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(3, 4);  // second component; 5 and 6 isolated
    g.finish();
    for (auto s : {Strategy::MinDegree, Strategy::MinFill, Strategy::ExactSmall}) {
        TreeDecomposition t = decompose(g, s);
        CHECK(validate(t, g).ok);
        NiceTreeDecomposition nt = make_nice(t, g);
        CHECK(validate_nice(nt).ok);
    }
}
