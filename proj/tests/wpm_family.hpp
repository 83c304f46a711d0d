#pragma once

// Test-side enumeration of all connected closed 2-dimensional weak
// pseudomanifolds with at most `max_facets` triangles, up to isomorphism.
// Dual-connected complexes are grown by attaching triangles along open
// edges; the vertex-pinched sphere (two tetrahedron boundaries sharing one
// vertex) is the single member whose dual graph is disconnected, appended
// explicitly. Independent of the library's generators.

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <vector>

#include "tight/complex.hpp"

namespace wpm_family {

using Triangle = std::array<int, 3>;

inline std::vector<std::vector<int>> canonical_form(std::vector<Triangle> tris, int n) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::vector<std::vector<int>> best;
    do {
        std::vector<std::vector<int>> image;
        for (const auto& t : tris) {
            std::vector<int> m = {perm[t[0]], perm[t[1]], perm[t[2]]};
            std::sort(m.begin(), m.end());
            image.push_back(m);
        }
        std::sort(image.begin(), image.end());
        if (best.empty() || image < best) best = image;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

struct Enumerator {
    int max_facets;
    int max_vertices = 8;  // 3t <= 24 and every vertex lies in >= 3 triangles
    std::set<std::vector<std::vector<int>>> found;

    explicit Enumerator(int mf) : max_facets(mf) {}

    void run() {
        std::vector<Triangle> tris = {{0, 1, 2}};
        grow(tris, 3);
        // vertex-pinched sphere: dual graph disconnected, unreachable by
        // edge growth; exists only from two tetrahedron boundaries (8 facets)
        if (max_facets >= 8) {
            std::vector<Triangle> pinched;
            for (int drop = 0; drop < 4; ++drop) {
                Triangle t;
                int idx = 0;
                for (int v : {0, 1, 2, 3})
                    if (v != drop) t[idx++] = v;
                pinched.push_back(t);
            }
            for (int drop = 0; drop < 4; ++drop) {
                static const int verts[4] = {0, 4, 5, 6};
                Triangle t;
                int idx = 0;
                for (int i = 0; i < 4; ++i)
                    if (i != drop) t[idx++] = verts[i];
                pinched.push_back(t);
            }
            found.insert(canonical_form(pinched, 7));
        }
    }

    std::vector<tight::SimplicialComplex> complexes() const {
        std::vector<tight::SimplicialComplex> out;
        for (const auto& facets : found) {
            std::vector<std::vector<long>> fl;
            for (const auto& t : facets) fl.push_back({t[0], t[1], t[2]});
            out.push_back(tight::SimplicialComplex::build_ints(fl));
        }
        return out;
    }

  private:
    static std::map<std::pair<int, int>, int> edge_degrees(const std::vector<Triangle>& tris) {
        std::map<std::pair<int, int>, int> deg;
        for (const auto& t : tris) {
            ++deg[{t[0], t[1]}];
            ++deg[{t[0], t[2]}];
            ++deg[{t[1], t[2]}];
        }
        return deg;
    }

    void grow(std::vector<Triangle>& tris, int used_vertices) {
        auto deg = edge_degrees(tris);
        std::pair<int, int> open{-1, -1};
        for (const auto& [e, d] : deg) {
            if (d > 2) return;  // not a weak pseudomanifold
            if (d == 1 && open.first < 0) open = e;
        }
        if (open.first < 0) {
            // closed; every edge has degree exactly 2
            found.insert(canonical_form(tris, used_vertices));
            return;
        }
        if (static_cast<int>(tris.size()) == max_facets) return;
        int limit = std::min(max_vertices, used_vertices + 1);
        for (int v = 0; v < limit; ++v) {
            if (v == open.first || v == open.second) continue;
            Triangle cand = {open.first, open.second, v};
            std::sort(cand.begin(), cand.end());
            if (std::find(tris.begin(), tris.end(), cand) != tris.end()) continue;
            // new edges must stay within degree 2
            auto d1 = deg.count({std::min(cand[0], cand[1]), std::max(cand[0], cand[1])})
                          ? deg.at({std::min(cand[0], cand[1]), std::max(cand[0], cand[1])})
                          : 0;
            auto d2 = deg.count({std::min(cand[0], cand[2]), std::max(cand[0], cand[2])})
                          ? deg.at({std::min(cand[0], cand[2]), std::max(cand[0], cand[2])})
                          : 0;
            auto d3 = deg.count({std::min(cand[1], cand[2]), std::max(cand[1], cand[2])})
                          ? deg.at({std::min(cand[1], cand[2]), std::max(cand[1], cand[2])})
                          : 0;
            if (d1 >= 2 || d2 >= 2 || d3 >= 2) continue;
            tris.push_back(cand);
            grow(tris, std::max(used_vertices, v + 1));
            tris.pop_back();
        }
    }
};

inline std::vector<tight::SimplicialComplex> closed_wpm_up_to(int max_facets) {
    Enumerator e(max_facets);
    e.run();
    return e.complexes();
}

}  // namespace wpm_family
