#pragma once

// Treewidth dynamic program for sigma_0: over a nice tree decomposition of
// the 1-skeleton, count induced subgraphs by vertex count and component
// count, keyed by the subset of bag vertices they meet and the partition of
// that subset induced by their components. Counts are exact integers; the
// final assembly divides by binomials, so everything stays rational.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "tight/graph.hpp"
#include "tight/rational.hpp"
#include "tight/treewidth.hpp"

namespace tight {

// Subset S of bag vertices plus a partition of S into blocks; blocks are
// vertex masks sorted by least element, which is the canonical form.
struct PartitionKey {
    uint64_t S = 0;
    std::vector<uint64_t> blocks;

    bool operator==(const PartitionKey& o) const { return S == o.S && blocks == o.blocks; }
    bool operator<(const PartitionKey& o) const {
        if (S != o.S) return S < o.S;
        return blocks < o.blocks;
    }
};

struct PartitionKeyHash {
    size_t operator()(const PartitionKey& k) const {
        uint64_t h = k.S * 0x9e3779b97f4a7c15ull;
        for (uint64_t b : k.blocks) h = (h ^ b) * 0x9e3779b97f4a7c15ull;
        return static_cast<size_t>(h ^ (h >> 32));
    }
};

// (component count, vertex count) -> number of induced subgraphs
using CellMap = std::map<std::pair<int, int>, Integer>;
using CountTable = std::unordered_map<PartitionKey, CellMap, PartitionKeyHash>;

namespace sigma_detail {

inline PartitionKey canonical(uint64_t S, std::vector<uint64_t> blocks) {
    std::sort(blocks.begin(), blocks.end(), [](uint64_t a, uint64_t b) {
        return (a & (~a + 1)) < (b & (~b + 1));  // by least element
    });
    return PartitionKey{S, std::move(blocks)};
}

inline void accumulate(CountTable& t, const PartitionKey& key, int c, int m, const Integer& add) {
    t[key][{c, m}] += add;
}

}  // namespace sigma_detail

// Table for a one-vertex leaf bag {v}: the empty subset and the singleton.
inline CountTable leaf_table(int v) {
    CountTable t;
    sigma_detail::accumulate(t, PartitionKey{}, 0, 0, 1);
    sigma_detail::accumulate(t, sigma_detail::canonical(uint64_t(1) << v, {uint64_t(1) << v}),
                             1, 1, 1);
    return t;
}

// Introduce vertex v; adj_in_bag is the mask of v's graph neighbours inside
// the new bag. Every entry contributes once without v and once with v, where
// the blocks touching a neighbour of v merge (their components connect).
inline CountTable introduce_step(const CountTable& table, int v, uint64_t adj_in_bag) {
    CountTable out;
    uint64_t vbit = uint64_t(1) << v;
    for (const auto& [key, cells] : table) {
        for (const auto& [cm, count] : cells)
            sigma_detail::accumulate(out, key, cm.first, cm.second, count);
        std::vector<uint64_t> merged_blocks;
        uint64_t newblock = vbit;
        int touched = 0;
        for (uint64_t b : key.blocks) {
            if (b & adj_in_bag) {
                newblock |= b;
                ++touched;
            } else {
                merged_blocks.push_back(b);
            }
        }
        merged_blocks.push_back(newblock);
        PartitionKey nk = sigma_detail::canonical(key.S | vbit, std::move(merged_blocks));
        for (const auto& [cm, count] : cells)
            sigma_detail::accumulate(out, nk, cm.first - touched + 1, cm.second + 1, count);
    }
    return out;
}

// Forget vertex v: remove it from S and from its block; an emptied block
// becomes a counted-but-untracked component (c and m unchanged). Entries
// with equal keys and cells aggregate.
inline CountTable forget_step(const CountTable& table, int v) {
    CountTable out;
    uint64_t vbit = uint64_t(1) << v;
    for (const auto& [key, cells] : table) {
        if (!(key.S & vbit)) {
            for (const auto& [cm, count] : cells)
                sigma_detail::accumulate(out, key, cm.first, cm.second, count);
            continue;
        }
        std::vector<uint64_t> blocks;
        for (uint64_t b : key.blocks) {
            uint64_t nb = b & ~vbit;
            if (nb) blocks.push_back(nb);
        }
        PartitionKey nk = sigma_detail::canonical(key.S & ~vbit, std::move(blocks));
        for (const auto& [cm, count] : cells)
            sigma_detail::accumulate(out, nk, cm.first, cm.second, count);
    }
    return out;
}

// Join two tables over the identical bag: entries with equal S combine;
// partitions join in the partition lattice, forgotten components add, and
// the shared subset S is counted once.
inline CountTable join_step(const CountTable& left, const CountTable& right) {
    CountTable out;
    for (const auto& [lk, lcells] : left) {
        for (const auto& [rk, rcells] : right) {
            if (lk.S != rk.S) continue;
            // partition lattice join via union-find over blocks
            std::vector<uint64_t> blocks = lk.blocks;
            for (uint64_t rb : rk.blocks) {
                uint64_t acc = rb;
                std::vector<uint64_t> rest;
                for (uint64_t b : blocks) {
                    if (b & acc)
                        acc |= b;
                    else
                        rest.push_back(b);
                }
                // merging with acc may connect previously separate blocks
                bool changed = true;
                while (changed) {
                    changed = false;
                    std::vector<uint64_t> rest2;
                    for (uint64_t b : rest) {
                        if (b & acc) {
                            acc |= b;
                            changed = true;
                        } else {
                            rest2.push_back(b);
                        }
                    }
                    rest = std::move(rest2);
                }
                rest.push_back(acc);
                blocks = std::move(rest);
            }
            PartitionKey nk = sigma_detail::canonical(lk.S, blocks);
            int joined = static_cast<int>(nk.blocks.size());
            int lsz = static_cast<int>(lk.blocks.size());
            int rsz = static_cast<int>(rk.blocks.size());
            int s_size = __builtin_popcountll(lk.S);
            for (const auto& [lcm, lcount] : lcells)
                for (const auto& [rcm, rcount] : rcells) {
                    int c = (lcm.first - lsz) + (rcm.first - rsz) + joined;
                    int m = lcm.second + rcm.second - s_size;
                    sigma_detail::accumulate(out, nk, c, m, lcount * rcount);
                }
        }
    }
    return out;
}

// sigma_0 from the fully forgotten table: the only key left is the empty
// one; each cell contributes count * (c-1) / binom(n, m). The (0,0) cell is
// the empty-subset term and contributes exactly -1.
inline Rational sigma0_from_counts(const CountTable& table, int n) {
    for (const auto& [key, cells] : table)
        if (key.S != 0 || !key.blocks.empty())
            throw std::logic_error("sigma0_from_counts: residual non-empty keys");
    Rational sigma(0);
    auto it = table.find(PartitionKey{});
    if (it == table.end()) throw std::logic_error("sigma0_from_counts: missing empty key");
    for (const auto& [cm, count] : it->second)
        sigma += Rational(count * Integer(cm.first - 1), binomial(n, cm.second));
    return sigma;
}

struct SigmaStats {
    size_t max_table_keys = 0;
    size_t max_cells_per_key = 0;
    bool conservation_checked = false;
};

// sigma_0 of any complex with the given 1-skeleton, by the bottom-up DP
// over a nice tree decomposition. Exact under the oracle's empty-set
// convention; the count-conservation invariant (sum of counts = 2^#visited)
// is asserted at every bag.
inline Rational sigma0_treewidth(const Graph& g, const NiceTreeDecomposition& nt,
                                 SigmaStats* stats = nullptr) {
    if (g.n == 0) throw std::invalid_argument("sigma0_treewidth: empty graph");
    if (g.n > 62) throw std::invalid_argument("sigma0_treewidth: more than 62 vertices");
    auto nice_ok = validate_nice(nt);
    if (!nice_ok.ok)
        throw std::invalid_argument("sigma0_treewidth: invalid nice decomposition: " +
                                    nice_ok.what);
    auto tree_ok = validate(to_tree_decomposition(nt), g);
    if (!tree_ok.ok)
        throw std::invalid_argument("sigma0_treewidth: decomposition does not cover graph (" +
                                    tree_ok.violated + ": " + tree_ok.witness + ")");

    std::vector<CountTable> tables(nt.bags.size());
    std::vector<uint64_t> visited(nt.bags.size(), 0);
    SigmaStats st;

    auto verify = [&](size_t idx) {
        const CountTable& t = tables[idx];
        st.max_table_keys = std::max(st.max_table_keys, t.size());
        Integer total(0);
        for (const auto& [key, cells] : t) {
            st.max_cells_per_key = std::max(st.max_cells_per_key, cells.size());
            if (cells.size() > static_cast<size_t>(g.n + 1) * (g.n + 1))
                throw std::logic_error("sigma0_treewidth: per-key cell bound exceeded");
            for (const auto& [cm, count] : cells) {
                if (cm.first > cm.second || cm.first < static_cast<int>(key.blocks.size()))
                    throw std::logic_error("sigma0_treewidth: cell outside |pi| <= c <= m");
                total += count;
            }
        }
        if (total != pow2(__builtin_popcountll(visited[idx])))
            throw std::logic_error("sigma0_treewidth: count conservation violated");
    };

    for (size_t i = 0; i < nt.bags.size(); ++i) {
        const NiceBag& b = nt.bags[i];
        switch (b.type) {
            case NiceBag::Leaf:
                tables[i] = leaf_table(b.bag[0]);
                visited[i] = uint64_t(1) << b.bag[0];
                break;
            case NiceBag::Introduce: {
                uint64_t adj = 0;
                for (int u : g.adj[b.vertex])
                    if (std::binary_search(b.bag.begin(), b.bag.end(), u))
                        adj |= uint64_t(1) << u;
                tables[i] = introduce_step(tables[b.child1], b.vertex, adj);
                visited[i] = visited[b.child1] | (uint64_t(1) << b.vertex);
                tables[b.child1].clear();
                break;
            }
            case NiceBag::Forget:
                tables[i] = forget_step(tables[b.child1], b.vertex);
                visited[i] = visited[b.child1];
                tables[b.child1].clear();
                break;
            case NiceBag::Join:
                tables[i] = join_step(tables[b.child1], tables[b.child2]);
                visited[i] = visited[b.child1] | visited[b.child2];
                tables[b.child1].clear();
                tables[b.child2].clear();
                break;
            case NiceBag::Root:
                tables[i] = std::move(tables[b.child1]);
                visited[i] = visited[b.child1];
                break;
        }
        verify(i);
    }

    // final forget chain above the size-1 root
    CountTable final_table = std::move(tables[nt.root()]);
    for (int v : nt.bags[nt.root()].bag) final_table = forget_step(final_table, v);

    st.conservation_checked = true;
    if (stats) *stats = st;
    return sigma0_from_counts(final_table, g.n);
}

inline Rational sigma0_treewidth(const Graph& g, Strategy strategy = Strategy::MinFill,
                                 SigmaStats* stats = nullptr) {
    return sigma0_treewidth(g, make_nice(decompose(g, strategy), g), stats);
}

}  // namespace tight
