#pragma once

// Simple undirected graph on dense vertex ids with sorted adjacency lists.
// Shared by the skeleton/dual-graph queries, the treewidth machinery and
// the small-graph isomorphism test used for link classification.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tight {

struct Graph {
    int n = 0;
    std::vector<std::vector<int>> adj;  // sorted, no self-loops, no multi-edges

    Graph() = default;
    explicit Graph(int vertices) : n(vertices), adj(vertices) {}

    void add_edge(int u, int v) {
        if (u == v) throw std::invalid_argument("Graph: self-loop");
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw std::out_of_range("Graph: vertex out of range");
        adj[u].push_back(v);
        adj[v].push_back(u);
    }

    void finish() {
        for (auto& a : adj) {
            std::sort(a.begin(), a.end());
            a.erase(std::unique(a.begin(), a.end()), a.end());
        }
    }

    bool has_edge(int u, int v) const {
        return std::binary_search(adj[u].begin(), adj[u].end(), v);
    }

    int degree(int v) const { return static_cast<int>(adj[v].size()); }

    long edge_count() const {
        long s = 0;
        for (const auto& a : adj) s += static_cast<long>(a.size());
        return s / 2;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> e;
        for (int u = 0; u < n; ++u)
            for (int v : adj[u])
                if (u < v) e.emplace_back(u, v);
        return e;
    }

    bool is_regular(int k) const {
        for (int v = 0; v < n; ++v)
            if (degree(v) != k) return false;
        return true;
    }

    // Component id per vertex, ids in order of first discovery.
    std::vector<int> components() const {
        std::vector<int> comp(n, -1);
        int c = 0;
        std::vector<int> stack;
        for (int s = 0; s < n; ++s) {
            if (comp[s] >= 0) continue;
            stack.push_back(s);
            comp[s] = c;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (int v : adj[u])
                    if (comp[v] < 0) {
                        comp[v] = c;
                        stack.push_back(v);
                    }
            }
            ++c;
        }
        return comp;
    }

    int component_count() const {
        auto c = components();
        return c.empty() ? 0 : 1 + *std::max_element(c.begin(), c.end());
    }

    bool connected() const { return n <= 1 || component_count() == 1; }

    std::vector<int> bfs_distances(int src) const {
        std::vector<int> dist(n, -1);
        std::vector<int> queue{src};
        dist[src] = 0;
        for (size_t h = 0; h < queue.size(); ++h) {
            int u = queue[h];
            for (int v : adj[u])
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
        }
        return dist;
    }
};

// Backtracking isomorphism test for small graphs. Vertices of g are matched
// in BFS order with degree pruning; adequate for the 12-vertex link
// skeletons this project classifies.
inline bool graphs_isomorphic(const Graph& g, const Graph& h) {
    if (g.n != h.n || g.edge_count() != h.edge_count()) return false;
    std::vector<int> dg(g.n), dh(h.n);
    for (int v = 0; v < g.n; ++v) dg[v] = g.degree(v);
    for (int v = 0; v < h.n; ++v) dh[v] = h.degree(v);
    {
        auto a = dg, b = dh;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return false;
    }

    // Match order: BFS from vertex 0 with unreached vertices appended.
    std::vector<int> order;
    {
        std::vector<char> seen(g.n, 0);
        for (int s = 0; s < g.n; ++s) {
            if (seen[s]) continue;
            std::vector<int> q{s};
            seen[s] = 1;
            for (size_t hh = 0; hh < q.size(); ++hh) {
                order.push_back(q[hh]);
                for (int v : g.adj[q[hh]])
                    if (!seen[v]) {
                        seen[v] = 1;
                        q.push_back(v);
                    }
            }
        }
    }

    std::vector<int> map_gh(g.n, -1), used(h.n, 0);
    std::function<bool(size_t)> extend = [&](size_t idx) -> bool {
        if (idx == order.size()) return true;
        int u = order[idx];
        for (int w = 0; w < h.n; ++w) {
            if (used[w] || dh[w] != dg[u]) continue;
            bool ok = true;
            for (int x : g.adj[u]) {
                if (map_gh[x] >= 0 && !h.has_edge(w, map_gh[x])) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                // mapped non-neighbours of u must stay non-neighbours
                for (size_t k = 0; k < idx && ok; ++k) {
                    int x = order[k];
                    if (!g.has_edge(u, x) && h.has_edge(w, map_gh[x])) ok = false;
                }
            }
            if (!ok) continue;
            map_gh[u] = w;
            used[w] = 1;
            if (extend(idx + 1)) return true;
            map_gh[u] = -1;
            used[w] = 0;
        }
        return false;
    };
    return extend(0);
}

}  // namespace tight
