#pragma once

// Generators for the fixture complexes. Every generated complex is
// self-validated (f-vector, link structure, Euler characteristic) before it
// is returned; a validation failure signals a construction bug and throws
// logic_error rather than a user-facing error.

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "tight/complex.hpp"

namespace tight {

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw std::logic_error("generator validation failed: " + what);
}

// Links of a closed surface must all be single cycles of the given lengths
// (0 meaning "any length").
inline void require_surface_links(const SimplicialComplex& c, int cycle_len,
                                  const std::string& name) {
    for (int v = 0; v < c.vertex_count(); ++v) {
        SimplicialComplex lk = c.link(v);
        require(lk.dim() == 1, name + ": link not 1-dimensional");
        Graph g = lk.one_skeleton();
        require(g.connected() && g.is_regular(2), name + ": link not a single cycle");
        if (cycle_len > 0)
            require(g.n == cycle_len, name + ": link cycle length");
    }
}

}  // namespace detail

// Boundary of the p-simplex: all p-subsets of p+1 vertices. A (p-1)-sphere.
inline SimplicialComplex boundary_simplex(int p) {
    if (p < 2) throw std::invalid_argument("boundary_simplex: p must be >= 2");
    std::vector<std::vector<long>> facets;
    for (long drop = 1; drop <= p + 1; ++drop) {
        std::vector<long> f;
        for (long v = 1; v <= p + 1; ++v)
            if (v != drop) f.push_back(v);
        facets.push_back(std::move(f));
    }
    SimplicialComplex c = SimplicialComplex::build_ints(facets);
    detail::require(c.vertex_count() == p + 1, "boundary_simplex: vertex count");
    detail::require(c.dim() == p - 1, "boundary_simplex: dimension");
    detail::require(c.euler_characteristic() == (p % 2 == 0 ? 0 : 2),
                    "boundary_simplex: Euler characteristic");
    return c;
}

// Boundary of the (d+1)-dimensional cross-polytope: vertices +-1 .. +-(d+1),
// facets pick one sign per coordinate. A d-sphere on 2d+2 vertices.
inline SimplicialComplex cross_polytope(int d) {
    if (d < 1) throw std::invalid_argument("cross_polytope: d must be >= 1");
    int m = d + 1;
    std::vector<std::vector<std::string>> facets;
    for (int mask = 0; mask < (1 << m); ++mask) {
        std::vector<std::string> f;
        for (int i = 0; i < m; ++i) {
            int v = i + 1;
            f.push_back((mask >> i) & 1 ? std::to_string(-v) : std::to_string(v));
        }
        facets.push_back(std::move(f));
    }
    SimplicialComplex c = SimplicialComplex::build(facets);
    detail::require(c.vertex_count() == 2 * m, "cross_polytope: vertex count");
    detail::require(c.dim() == d, "cross_polytope: dimension");
    detail::require(c.euler_characteristic() == (d % 2 == 0 ? 2 : 0),
                    "cross_polytope: Euler characteristic");
    return c;
}

// 12-vertex boundary of the icosahedron, assembled as a gyroelongated
// pentagonal bipyramid: north apex 1, upper pentagon 2..6, lower pentagon
// 7..11, south apex 12.
inline SimplicialComplex icosahedron() {
    auto up = [](int i) { return 2 + (i % 5); };
    auto lo = [](int i) { return 7 + (i % 5); };
    std::vector<std::vector<long>> facets;
    for (int i = 0; i < 5; ++i) {
        facets.push_back({1, up(i), up(i + 1)});
        facets.push_back({up(i), up(i + 1), lo(i)});
        facets.push_back({lo(i), lo(i + 1), up(i + 1)});
        facets.push_back({12, lo(i), lo(i + 1)});
    }
    SimplicialComplex c = SimplicialComplex::build_ints(facets);
    FVector fv = c.f_vector();
    detail::require(fv == FVector({12, 30, 20}), "icosahedron: f-vector");
    detail::require(c.euler_characteristic() == 2, "icosahedron: Euler characteristic");
    detail::require(c.one_skeleton().is_regular(5), "icosahedron: 5-regularity");
    detail::require_surface_links(c, 5, "icosahedron");
    detail::require(c.closed_pseudomanifold(), "icosahedron: not closed");
    return c;
}

// 7-vertex torus: vertices Z_7, facet orbits {i,i+1,i+3}
// and {i,i+2,i+3} mod 7.
inline SimplicialComplex moebius_torus7() {
    std::vector<std::vector<long>> facets;
    for (long i = 0; i < 7; ++i) {
        facets.push_back({i, (i + 1) % 7, (i + 3) % 7});
        facets.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    SimplicialComplex c = SimplicialComplex::build_ints(facets);
    detail::require(c.f_vector() == FVector({7, 21, 14}), "moebius_torus7: f-vector");
    detail::require(c.euler_characteristic() == 0, "moebius_torus7: Euler characteristic");
    detail::require(c.is_k_neighbourly(2), "moebius_torus7: 2-neighbourliness");
    detail::require_surface_links(c, 6, "moebius_torus7");
    detail::require(c.closed_pseudomanifold(), "moebius_torus7: not closed");
    return c;
}

// 6-vertex real projective plane: antipodal vertex-identification quotient
// of the icosahedron. The antipode of a vertex is the unique vertex at
// graph distance 3 in the icosahedral skeleton.
inline SimplicialComplex rp2_6() {
    SimplicialComplex ico = icosahedron();
    Graph g = ico.one_skeleton();
    std::vector<int> antipode(12, -1);
    for (int v = 0; v < 12; ++v) {
        auto dist = g.bfs_distances(v);
        int found = -1;
        for (int u = 0; u < 12; ++u)
            if (dist[u] == 3) {
                detail::require(found < 0, "rp2_6: antipode not unique");
                found = u;
            }
        detail::require(found >= 0, "rp2_6: antipode missing");
        antipode[v] = found;
    }
    // class representative: smaller id of the pair, labelled 1..6
    std::vector<int> cls(12, -1);
    int next = 0;
    for (int v = 0; v < 12; ++v) {
        if (cls[v] >= 0) continue;
        detail::require(antipode[antipode[v]] == v, "rp2_6: antipodal map not involutive");
        cls[v] = cls[antipode[v]] = next++;
    }
    detail::require(next == 6, "rp2_6: class count");
    std::vector<std::vector<long>> facets;
    for (const auto& f : ico.facets()) {
        std::vector<long> q;
        for (int v : f) q.push_back(cls[v] + 1);
        std::sort(q.begin(), q.end());
        detail::require(std::adjacent_find(q.begin(), q.end()) == q.end(),
                        "rp2_6: facet contains an antipodal pair");
        facets.push_back(std::move(q));
    }
    SimplicialComplex c = SimplicialComplex::build_ints(facets);
    detail::require(c.f_vector() == FVector({6, 15, 10}), "rp2_6: f-vector");
    detail::require(c.euler_characteristic() == 1, "rp2_6: Euler characteristic");
    detail::require_surface_links(c, 5, "rp2_6");
    detail::require(c.closed_pseudomanifold(), "rp2_6: not closed");
    return c;
}

// Gluing bijections for connected sums. The sigma_0 value is independent of
// the choice; a property test compares the two.
enum class GluingOrder { LabelOrder, Reversed };

struct ConnectedSumResult {
    SimplicialComplex complex;
    // vertex labels of each gluing trio (an induced empty 3-cycle)
    std::vector<std::vector<std::string>> gluing_trios;
};

// Connected sum of k copies of the icosahedron boundary and l copies of the
// tetrahedron boundary: repeatedly remove one 2-face from each of two
// summands and identify the boundary 3-cycles.
inline ConnectedSumResult connected_sum_with_trios(int k, int l,
                                                   GluingOrder order = GluingOrder::LabelOrder) {
    if (k < 0 || l < 0 || (k == 0 && l == 0))
        throw std::invalid_argument("connected_sum: need k + l >= 1");

    long offset = 0;
    auto next_summand = [&](bool ico_piece) {
        SimplicialComplex s = ico_piece ? icosahedron() : boundary_simplex(3);
        std::vector<std::vector<long>> relabeled;
        for (const auto& f : s.facets()) {
            std::vector<long> g;
            for (int v : f) g.push_back(offset + std::stol(s.label(v)));
            relabeled.push_back(std::move(g));
        }
        offset += s.vertex_count();
        return relabeled;
    };

    std::vector<std::vector<long>> acc;
    std::vector<std::vector<long>> trios;
    int placed = 0;
    for (int piece = 0; piece < k + l; ++piece) {
        auto facets = next_summand(piece < k);
        for (auto& f : facets) std::sort(f.begin(), f.end());
        std::sort(facets.begin(), facets.end());
        if (placed == 0) {
            acc = facets;
        } else {
            std::sort(acc.begin(), acc.end());
            std::vector<long> t1 = acc.front();     // removed from the running sum
            std::vector<long> t2 = facets.front();  // removed from the new summand
            acc.erase(acc.begin());
            facets.erase(facets.begin());
            std::vector<long> image = t1;
            if (order == GluingOrder::Reversed)
                std::reverse(image.begin(), image.end());
            std::map<long, long> glue;
            for (size_t i = 0; i < 3; ++i) glue[t2[i]] = image[i];
            for (auto& f : facets) {
                for (auto& v : f) {
                    auto it = glue.find(v);
                    if (it != glue.end()) v = it->second;
                }
                std::sort(f.begin(), f.end());
                acc.push_back(f);
            }
            trios.push_back(t1);
        }
        ++placed;
    }

    SimplicialComplex c = SimplicialComplex::build_ints(acc);
    detail::require(c.vertex_count() == 9 * k + l + 3, "connected_sum: vertex count");
    detail::require(c.euler_characteristic() == 2, "connected_sum: Euler characteristic");
    detail::require(c.closed_pseudomanifold(), "connected_sum: not closed");
    detail::require_surface_links(c, 0, "connected_sum");

    ConnectedSumResult out;
    out.complex = c;
    Graph skel = c.one_skeleton();
    for (const auto& t : trios) {
        std::vector<std::string> labs;
        for (long v : t) labs.push_back(std::to_string(v));
        std::vector<int> ids;
        for (const auto& lab : labs) ids.push_back(c.id_of(lab));
        std::sort(ids.begin(), ids.end());
        detail::require(skel.has_edge(ids[0], ids[1]) && skel.has_edge(ids[0], ids[2]) &&
                            skel.has_edge(ids[1], ids[2]),
                        "connected_sum: gluing trio not mutually adjacent");
        detail::require(!c.has_face({ids[0], ids[1], ids[2]}),
                        "connected_sum: gluing trio spans a 2-face");
        out.gluing_trios.push_back(labs);
    }
    return out;
}

inline SimplicialComplex connected_sum(int k, int l,
                                       GluingOrder order = GluingOrder::LabelOrder) {
    return connected_sum_with_trios(k, l, order).complex;
}

// Name-based dispatcher used by the CLI.
inline SimplicialComplex gen(const std::string& name, const std::vector<long>& params = {}) {
    auto want = [&](size_t count) {
        if (params.size() != count)
            throw std::invalid_argument("gen " + name + ": expected " +
                                        std::to_string(count) + " parameter(s)");
    };
    if (name == "boundary_simplex") {
        want(1);
        return boundary_simplex(static_cast<int>(params[0]));
    }
    if (name == "cross_polytope") {
        want(1);
        return cross_polytope(static_cast<int>(params[0]));
    }
    if (name == "icosahedron") {
        want(0);
        return icosahedron();
    }
    if (name == "moebius_torus7") {
        want(0);
        return moebius_torus7();
    }
    if (name == "rp2_6") {
        want(0);
        return rp2_6();
    }
    if (name == "connected_sum") {
        want(2);
        return connected_sum(static_cast<int>(params[0]), static_cast<int>(params[1]));
    }
    throw std::invalid_argument("gen: unknown generator '" + name + "'");
}

}  // namespace tight
