#pragma once

// Tree decompositions: heuristic construction from elimination orderings
// (min-degree, min-fill), exact branch-and-bound widths for small graphs,
// structural validation, and conversion to nice decompositions
// with typed bags in bottom-up order.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tight/graph.hpp"

namespace tight {

struct TreeDecomposition {
    std::vector<std::vector<int>> bags;        // sorted vertex lists
    std::vector<std::pair<int, int>> edges;    // tree edges between bag indices
};

inline int width(const TreeDecomposition& t) {
    int w = -1;
    for (const auto& b : t.bags) w = std::max(w, static_cast<int>(b.size()) - 1);
    return w;
}

struct DecompositionValidation {
    bool ok = true;
    std::string violated;  // "tree shape" | "vertex coverage" | "edge coverage" | "subtree property"
    std::string witness;
};

// Checks the three decomposition conditions (after a tree-shape precheck)
// and names the first violated one with a witness vertex or edge.
inline DecompositionValidation validate(const TreeDecomposition& t, const Graph& g) {
    DecompositionValidation v;
    auto fail = [&](const std::string& what, const std::string& wit) {
        v.ok = false;
        v.violated = what;
        v.witness = wit;
        return v;
    };
    size_t nb = t.bags.size();
    if (nb == 0) return fail("tree shape", "no bags");
    if (t.edges.size() != nb - 1) return fail("tree shape", "edge count");
    Graph tree(static_cast<int>(nb));
    for (auto [a, b] : t.edges) {
        if (a < 0 || b < 0 || a >= static_cast<int>(nb) || b >= static_cast<int>(nb) || a == b)
            return fail("tree shape", "bad edge");
        tree.add_edge(a, b);
    }
    tree.finish();
    if (!tree.connected()) return fail("tree shape", "disconnected");

    std::vector<std::vector<int>> holding(g.n);
    for (size_t i = 0; i < nb; ++i)
        for (int x : t.bags[i]) {
            if (x < 0 || x >= g.n) return fail("vertex coverage", "unknown vertex in bag");
            holding[x].push_back(static_cast<int>(i));
        }
    for (int x = 0; x < g.n; ++x)
        if (holding[x].empty()) return fail("vertex coverage", "vertex " + std::to_string(x));

    for (auto [a, b] : g.edges()) {
        bool covered = false;
        for (size_t i = 0; i < nb && !covered; ++i)
            covered = std::binary_search(t.bags[i].begin(), t.bags[i].end(), a) &&
                      std::binary_search(t.bags[i].begin(), t.bags[i].end(), b);
        if (!covered)
            return fail("edge coverage",
                        "edge {" + std::to_string(a) + "," + std::to_string(b) + "}");
    }

    for (int x = 0; x < g.n; ++x) {
        // bags holding x must induce a connected subtree
        std::set<int> members(holding[x].begin(), holding[x].end());
        std::vector<int> stack{holding[x][0]};
        std::set<int> seen{holding[x][0]};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : tree.adj[u])
                if (members.count(w) && !seen.count(w)) {
                    seen.insert(w);
                    stack.push_back(w);
                }
        }
        if (seen.size() != members.size())
            return fail("subtree property", "vertex " + std::to_string(x));
    }
    return v;
}

enum class Strategy { MinDegree, MinFill, ExactSmall };

namespace tw_detail {

// tree decomposition from an elimination ordering: bag(v) = {v} + current
// neighbours at elimination time; parent = bag of the first-eliminated
// remaining neighbour. Forest roots of disconnected graphs are chained.
inline TreeDecomposition from_elimination_order(const Graph& g, const std::vector<int>& order) {
    int n = g.n;
    std::vector<std::set<int>> adj(n);
    for (int u = 0; u < n; ++u) adj[u] = std::set<int>(g.adj[u].begin(), g.adj[u].end());
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;

    TreeDecomposition t;
    t.bags.resize(n);
    std::vector<int> parent(n, -1);
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        std::vector<int> nb(adj[v].begin(), adj[v].end());
        t.bags[i] = nb;
        t.bags[i].push_back(v);
        std::sort(t.bags[i].begin(), t.bags[i].end());
        if (!nb.empty()) {
            int first = nb[0];
            for (int u : nb)
                if (pos[u] < pos[first]) first = u;
            parent[i] = pos[first];
        }
        // eliminate: clique the neighbours
        for (int a : nb) {
            adj[a].erase(v);
            for (int b : nb)
                if (a != b) adj[a].insert(b);
        }
    }
    int prev_root = -1;
    for (int i = 0; i < n; ++i) {
        if (parent[i] >= 0) {
            t.edges.emplace_back(i, parent[i]);
        } else {
            if (prev_root >= 0) t.edges.emplace_back(prev_root, i);
            prev_root = i;
        }
    }
    return t;
}

inline std::vector<int> greedy_order(const Graph& g, bool min_fill) {
    int n = g.n;
    std::vector<std::set<int>> adj(n);
    for (int u = 0; u < n; ++u) adj[u] = std::set<int>(g.adj[u].begin(), g.adj[u].end());
    std::vector<char> gone(n, 0);
    std::vector<int> order;
    for (int step = 0; step < n; ++step) {
        int best = -1;
        long best_score = -1;
        for (int v = 0; v < n; ++v) {
            if (gone[v]) continue;
            long score;
            if (min_fill) {
                score = 0;
                std::vector<int> nb(adj[v].begin(), adj[v].end());
                for (size_t i = 0; i < nb.size(); ++i)
                    for (size_t j = i + 1; j < nb.size(); ++j)
                        if (!adj[nb[i]].count(nb[j])) ++score;
            } else {
                score = static_cast<long>(adj[v].size());
            }
            if (best < 0 || score < best_score) {
                best = v;
                best_score = score;
            }
        }
        order.push_back(best);
        gone[best] = 1;
        std::vector<int> nb(adj[best].begin(), adj[best].end());
        for (int a : nb) {
            adj[a].erase(best);
            for (int b : nb)
                if (a != b) adj[a].insert(b);
        }
        adj[best].clear();
    }
    return order;
}

// back-degree of v after the prefix "through" has been eliminated: the
// number of surviving vertices adjacent to v directly or via the prefix
inline int back_degree(const Graph& g, int v, uint32_t through) {
    uint32_t seen = uint32_t(1) << v;
    uint32_t frontier = seen;
    uint32_t result = 0;
    while (frontier) {
        uint32_t next = 0;
        uint32_t f = frontier;
        while (f) {
            int u = __builtin_ctz(f);
            f &= f - 1;
            for (int w : g.adj[u]) {
                uint32_t bit = uint32_t(1) << w;
                if (seen & bit) continue;
                if (through & bit) {
                    next |= bit;
                    seen |= bit;
                } else {
                    result |= bit;
                }
            }
        }
        frontier = next;
    }
    return __builtin_popcount(result);
}

// exact treewidth by dynamic programming over eliminated prefixes
inline std::vector<int> exact_order(const Graph& g) {
    int n = g.n;
    uint32_t full = (n == 32) ? ~uint32_t(0) : ((uint32_t(1) << n) - 1);
    std::vector<int> f(full + 1, 0);
    std::vector<int8_t> choice(full + 1, -1);
    for (uint32_t s = 1; s <= full; ++s) {
        int best = -1;
        int8_t pick = -1;
        uint32_t it = s;
        while (it) {
            int v = __builtin_ctz(it);
            it &= it - 1;
            uint32_t rest = s & ~(uint32_t(1) << v);
            int cand = std::max(f[rest], back_degree(g, v, rest));
            if (best < 0 || cand < best) {
                best = cand;
                pick = static_cast<int8_t>(v);
            }
        }
        f[s] = best;
        choice[s] = pick;
    }
    std::vector<int> order(n);
    uint32_t s = full;
    for (int i = n - 1; i >= 0; --i) {
        int v = choice[s];
        order[i] = v;
        s &= ~(uint32_t(1) << v);
    }
    return order;
}

}  // namespace tw_detail

inline TreeDecomposition decompose(const Graph& g, Strategy strategy = Strategy::MinFill) {
    if (g.n == 0) throw std::invalid_argument("decompose: empty graph");
    std::vector<int> order;
    switch (strategy) {
        case Strategy::MinDegree:
            order = tw_detail::greedy_order(g, false);
            break;
        case Strategy::MinFill:
            order = tw_detail::greedy_order(g, true);
            break;
        case Strategy::ExactSmall:
            if (g.n > 12)
                throw std::invalid_argument("decompose: exact_small limited to 12 vertices");
            order = tw_detail::exact_order(g);
            break;
    }
    return tw_detail::from_elimination_order(g, order);
}

// Path decomposition from a BFS vertex order: bag i holds order[i] plus all
// earlier vertices with a neighbour still ahead. Nicifies without join bags.
inline TreeDecomposition path_decomposition(const Graph& g) {
    if (g.n == 0) throw std::invalid_argument("path_decomposition: empty graph");
    std::vector<int> order;
    std::vector<char> seen(g.n, 0);
    for (int s = 0; s < g.n; ++s) {
        if (seen[s]) continue;
        std::vector<int> q{s};
        seen[s] = 1;
        for (size_t h = 0; h < q.size(); ++h) {
            order.push_back(q[h]);
            for (int w : g.adj[q[h]])
                if (!seen[w]) {
                    seen[w] = 1;
                    q.push_back(w);
                }
        }
    }
    std::vector<int> pos(g.n);
    for (int i = 0; i < g.n; ++i) pos[order[i]] = i;
    TreeDecomposition t;
    t.bags.resize(g.n);
    for (int i = 0; i < g.n; ++i) {
        std::vector<int> bag{order[i]};
        for (int j = 0; j < i; ++j) {
            int u = order[j];
            for (int w : g.adj[u])
                if (pos[w] >= i) {
                    bag.push_back(u);
                    break;
                }
        }
        std::sort(bag.begin(), bag.end());
        t.bags[i] = bag;
        if (i > 0) t.edges.emplace_back(i - 1, i);
    }
    return t;
}

// ---------------------------------------------------------------------------
// nice tree decompositions
// ---------------------------------------------------------------------------

struct NiceBag {
    enum Type { Leaf, Introduce, Forget, Join, Root } type = Leaf;
    int vertex = -1;  // introduced/forgotten vertex
    std::vector<int> bag;
    int child1 = -1, child2 = -1;
};

struct NiceTreeDecomposition {
    std::vector<NiceBag> bags;  // bottom-up: children precede parents
    int width = 0;
    int root() const { return static_cast<int>(bags.size()) - 1; }
};

inline TreeDecomposition to_tree_decomposition(const NiceTreeDecomposition& nt) {
    TreeDecomposition t;
    for (const auto& b : nt.bags) {
        t.bags.push_back(b.bag);
        int idx = static_cast<int>(t.bags.size()) - 1;
        if (b.child1 >= 0) t.edges.emplace_back(b.child1, idx);
        if (b.child2 >= 0) t.edges.emplace_back(b.child2, idx);
    }
    return t;
}

struct NiceValidation {
    bool ok = true;
    std::string what;
};

inline NiceValidation validate_nice(const NiceTreeDecomposition& nt) {
    auto fail = [](const std::string& w) { return NiceValidation{false, w}; };
    if (nt.bags.empty()) return fail("empty");
    for (size_t i = 0; i < nt.bags.size(); ++i) {
        const NiceBag& b = nt.bags[i];
        if (b.child1 >= static_cast<int>(i) || b.child2 >= static_cast<int>(i))
            return fail("not bottom-up");
        if (!std::is_sorted(b.bag.begin(), b.bag.end())) return fail("unsorted bag");
        auto diff_one = [&](const std::vector<int>& small, const std::vector<int>& big) {
            return big.size() == small.size() + 1 &&
                   std::includes(big.begin(), big.end(), small.begin(), small.end());
        };
        switch (b.type) {
            case NiceBag::Leaf:
                if (b.child1 >= 0 || b.child2 >= 0 || b.bag.size() != 1)
                    return fail("leaf shape");
                break;
            case NiceBag::Introduce: {
                if (b.child1 < 0 || b.child2 >= 0) return fail("introduce children");
                const auto& cb = nt.bags[b.child1].bag;
                if (!diff_one(cb, b.bag) ||
                    !std::binary_search(b.bag.begin(), b.bag.end(), b.vertex) ||
                    std::binary_search(cb.begin(), cb.end(), b.vertex))
                    return fail("introduce shape");
                break;
            }
            case NiceBag::Forget: {
                if (b.child1 < 0 || b.child2 >= 0) return fail("forget children");
                const auto& cb = nt.bags[b.child1].bag;
                if (!diff_one(b.bag, cb) ||
                    std::binary_search(b.bag.begin(), b.bag.end(), b.vertex) ||
                    !std::binary_search(cb.begin(), cb.end(), b.vertex))
                    return fail("forget shape");
                break;
            }
            case NiceBag::Join:
                if (b.child1 < 0 || b.child2 < 0) return fail("join children");
                if (nt.bags[b.child1].bag != b.bag || nt.bags[b.child2].bag != b.bag)
                    return fail("join shape");
                break;
            case NiceBag::Root:
                if (i + 1 != nt.bags.size() || b.bag.size() != 1) return fail("root shape");
                if (b.child1 >= 0 && nt.bags[b.child1].bag != b.bag) return fail("root child");
                break;
        }
    }
    if (nt.bags.back().type != NiceBag::Root) return fail("missing root");
    return NiceValidation{};
}

// Nice-form conversion: leaf ascents, forget-then-introduce chains between
// differing adjacent bags, joins duplicated to equality, and a forget chain
// above the old root down to a size-1 root bag. Width is preserved.
inline NiceTreeDecomposition make_nice(const TreeDecomposition& t, const Graph& g) {
    auto check = validate(t, g);
    if (!check.ok)
        throw std::invalid_argument("make_nice: invalid decomposition (" + check.violated +
                                    ": " + check.witness + ")");
    NiceTreeDecomposition nt;
    nt.width = width(t);

    std::vector<std::vector<int>> nbr(t.bags.size());
    for (auto [a, b] : t.edges) {
        nbr[a].push_back(b);
        nbr[b].push_back(a);
    }

    // root at a tree endpoint with a non-empty bag, so path-shaped inputs
    // nicify without join bags and leaf chains never start from nothing
    int root = -1;
    for (size_t i = 0; i < t.bags.size(); ++i) {
        if (t.bags[i].empty()) continue;
        if (nbr[i].size() <= 1 && (root < 0 || t.bags[i].size() > t.bags[root].size()))
            root = static_cast<int>(i);
    }
    if (root < 0)
        for (size_t i = 0; i < t.bags.size(); ++i)
            if (!t.bags[i].empty()) {
                root = static_cast<int>(i);
                break;
            }
    if (root < 0) throw std::invalid_argument("make_nice: all bags empty");

    auto add_bag = [&](NiceBag b) {
        nt.bags.push_back(std::move(b));
        return static_cast<int>(nt.bags.size()) - 1;
    };

    // ascend from a single vertex to the full content of `bag`
    auto emit_leaf_chain = [&](const std::vector<int>& bag) {
        NiceBag leaf;
        leaf.type = NiceBag::Leaf;
        leaf.bag = {bag[0]};
        int top = add_bag(leaf);
        for (size_t i = 1; i < bag.size(); ++i) {
            NiceBag intro;
            intro.type = NiceBag::Introduce;
            intro.vertex = bag[i];
            intro.bag = std::vector<int>(bag.begin(), bag.begin() + i + 1);
            intro.child1 = top;
            top = add_bag(intro);
        }
        return top;
    };

    // transition chain child content -> parent content (forgets then introduces)
    auto emit_transition = [&](int top, std::vector<int> cur, const std::vector<int>& target) {
        for (int v : std::vector<int>(cur)) {
            if (std::binary_search(target.begin(), target.end(), v)) continue;
            NiceBag fb;
            fb.type = NiceBag::Forget;
            fb.vertex = v;
            cur.erase(std::find(cur.begin(), cur.end(), v));
            fb.bag = cur;
            fb.child1 = top;
            top = add_bag(fb);
        }
        for (int v : target) {
            if (std::binary_search(cur.begin(), cur.end(), v)) continue;
            NiceBag ib;
            ib.type = NiceBag::Introduce;
            ib.vertex = v;
            cur.insert(std::upper_bound(cur.begin(), cur.end(), v), v);
            ib.bag = cur;
            ib.child1 = top;
            top = add_bag(ib);
        }
        return top;
    };

    std::function<int(int, int)> emit = [&](int node, int parent) -> int {
        std::vector<int> child_tops;
        for (int c : nbr[node])
            if (c != parent) {
                int ct = emit(c, node);
                child_tops.push_back(emit_transition(ct, t.bags[c], t.bags[node]));
            }
        if (child_tops.empty()) {
            if (t.bags[node].empty())
                throw std::logic_error("make_nice: empty leaf bag after rooting");
            return emit_leaf_chain(t.bags[node]);
        }
        int acc = child_tops[0];
        for (size_t i = 1; i < child_tops.size(); ++i) {
            NiceBag jb;
            jb.type = NiceBag::Join;
            jb.bag = t.bags[node];
            jb.child1 = acc;
            jb.child2 = child_tops[i];
            acc = add_bag(jb);
        }
        return acc;
    };

    int top = emit(root, -1);
    // forget down to a single vertex
    std::vector<int> cur = t.bags[root];
    while (cur.size() > 1) {
        NiceBag fb;
        fb.type = NiceBag::Forget;
        fb.vertex = cur.front();
        cur.erase(cur.begin());
        fb.bag = cur;
        fb.child1 = top;
        top = add_bag(fb);
    }
    NiceBag rb;
    rb.type = NiceBag::Root;
    rb.bag = cur;
    rb.child1 = top;
    add_bag(rb);

    auto nv = validate_nice(nt);
    if (!nv.ok) throw std::logic_error("make_nice: produced invalid decomposition: " + nv.what);
    return nt;
}

}  // namespace tight
