#pragma once

// Ground-truth implementations by definition: exact sigma- and mu-vectors
// by summation over all induced subcomplexes, homology-injectivity per
// vertex subset, and the exponential brute-force tightness decision. Every
// fast algorithm in this project is validated against this module.

#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tight/complex.hpp"
#include "tight/homology.hpp"
#include "tight/report.hpp"

namespace tight {

// Definition of the sigma-vector sums over ALL vertex subsets including the
// empty one. The printed definition leaves the empty-subcomplex term open;
// this project pins reduced beta_0(empty) = -1 (and 0 in higher degrees),
// so the A = emptyset term contributes exactly -1 to sigma_0.
inline constexpr long kReducedBetti0OfEmpty = -1;

inline int brute_force_bound() {
    static int bound = [] {
        if (const char* env = std::getenv("TIGHT_BRUTEFORCE_MAX")) {
            int v = std::atoi(env);
            if (v > 0 && v <= 30) return v;
        }
        return 16;
    }();
    return bound;
}

struct SigmaMuReport {
    std::vector<Rational> sigma;
    std::vector<Rational> mu;
    FieldSpec field = FieldSpec::rationals();
    long empty_set_convention = kReducedBetti0OfEmpty;
};

namespace oracle_detail {

inline void check_bound(int n, const char* what) {
    if (n > brute_force_bound())
        throw std::invalid_argument(std::string(what) + ": vertex count " + std::to_string(n) +
                                    " exceeds brute-force bound " +
                                    std::to_string(brute_force_bound()));
}

// adjacency of the 1-skeleton as vertex masks
inline std::vector<uint64_t> adjacency_masks(const SimplicialComplex& c) {
    std::vector<uint64_t> adj(c.vertex_count(), 0);
    if (c.dim() >= 1)
        for (const auto& e : c.faces(1)) {
            adj[e[0]] |= uint64_t(1) << e[1];
            adj[e[1]] |= uint64_t(1) << e[0];
        }
    return adj;
}

inline int component_count_masked(const std::vector<uint64_t>& adj, uint64_t subset) {
    int comps = 0;
    uint64_t left = subset;
    while (left) {
        ++comps;
        uint64_t frontier = left & (~left + 1);  // lowest set bit
        uint64_t seen = 0;
        while (frontier) {
            seen |= frontier;
            uint64_t next = 0;
            uint64_t f = frontier;
            while (f) {
                int v = __builtin_ctzll(f);
                f &= f - 1;
                next |= adj[v] & subset & ~seen;
            }
            frontier = next;
        }
        left &= ~seen;
    }
    return comps;
}

inline uint64_t face_mask(const Face& f) {
    uint64_t m = 0;
    for (int v : f) m |= uint64_t(1) << v;
    return m;
}

// rank of the boundary matrix restricted to columns whose face lies in the
// vertex subset (rows of faces outside the subset are zero for those columns)
template <class Ops>
int masked_boundary_rank(const BoundaryMatrix& b, const std::vector<uint64_t>& col_masks,
                         uint64_t subset, const Ops& ops) {
    std::vector<int> cols;
    for (size_t c = 0; c < b.cols.size(); ++c)
        if ((col_masks[c] & ~subset) == 0) cols.push_back(static_cast<int>(c));
    if (cols.empty()) return 0;
    FieldMatrix<Ops> m(static_cast<int>(b.rows.size()), static_cast<int>(cols.size()), ops);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) m.at(r, c) = ops.from_int(b.at(r, cols[c]));
    return field_rank(std::move(m), ops);
}

template <class Ops>
std::vector<Rational> sigma_vector_impl(const SimplicialComplex& c, const Ops& ops) {
    int n = c.vertex_count();
    int d = c.dim();
    if (c.empty()) return {Rational(kReducedBetti0OfEmpty)};

    std::vector<BoundaryMatrix> bnd(d + 1);
    std::vector<std::vector<uint64_t>> col_masks(d + 1);
    for (int k = 1; k <= d; ++k) {
        bnd[k] = boundary_matrix(c, k);
        col_masks[k].reserve(bnd[k].cols.size());
        for (const auto& f : bnd[k].cols) col_masks[k].push_back(face_mask(f));
    }
    std::vector<std::vector<uint64_t>> kface_masks(d + 1);
    for (int k = 0; k <= d; ++k)
        for (const auto& f : c.faces(k)) kface_masks[k].push_back(face_mask(f));

    auto adj = adjacency_masks(c);

    // integer-weighted tallies: sums[i][m] = sum of reduced betti_i over
    // subsets of size m
    std::vector<std::vector<long>> sums(d + 1, std::vector<long>(n + 1, 0));
    for (uint64_t subset = 1; subset < (uint64_t(1) << n); ++subset) {
        int m = __builtin_popcountll(subset);
        sums[0][m] += component_count_masked(adj, subset) - 1;
        for (int i = 1; i <= d; ++i) {
            long fi = 0;
            for (uint64_t fm : kface_masks[i])
                if ((fm & ~subset) == 0) ++fi;
            if (fi == 0) continue;
            long rank_i = masked_boundary_rank(bnd[i], col_masks[i], subset, ops);
            long rank_i1 = i + 1 <= d
                               ? masked_boundary_rank(bnd[i + 1], col_masks[i + 1], subset, ops)
                               : 0;
            sums[i][m] += fi - rank_i - rank_i1;
        }
    }

    std::vector<Rational> sigma(d + 1, Rational(0));
    for (int i = 0; i <= d; ++i) {
        Rational s(0);
        for (int m = 1; m <= n; ++m)
            s += Rational(Integer(sums[i][m]), binomial(n, m));
        if (i == 0) s += Rational(kReducedBetti0OfEmpty);
        sigma[i] = s;
    }
    return sigma;
}

}  // namespace oracle_detail

// Exact sigma-vector by direct summation over all 2^n induced subcomplexes.
inline std::vector<Rational> sigma_vector_bruteforce(const SimplicialComplex& c,
                                                     const FieldSpec& field) {
    oracle_detail::check_bound(c.vertex_count(), "sigma_vector_bruteforce");
    if (field.is_rationals())
        return oracle_detail::sigma_vector_impl(c, RationalFieldOps{});
    return oracle_detail::sigma_vector_impl(c, PrimeFieldOps{field.characteristic});
}

// sigma_0 only: depends on the 1-skeleton alone, so only connected-component
// counts are needed. Fast path used for larger fixtures and random graphs.
inline Rational sigma0_bruteforce(const SimplicialComplex& c) {
    int n = c.vertex_count();
    oracle_detail::check_bound(n, "sigma0_bruteforce");
    if (c.empty()) return Rational(kReducedBetti0OfEmpty);
    auto adj = oracle_detail::adjacency_masks(c);
    std::vector<long> sums(n + 1, 0);
    for (uint64_t subset = 1; subset < (uint64_t(1) << n); ++subset)
        sums[__builtin_popcountll(subset)] +=
            oracle_detail::component_count_masked(adj, subset) - 1;
    Rational s(kReducedBetti0OfEmpty);
    for (int m = 1; m <= n; ++m) s += Rational(Integer(sums[m]), binomial(n, m));
    return s;
}

inline Rational sigma0_bruteforce_graph(const Graph& g) {
    oracle_detail::check_bound(g.n, "sigma0_bruteforce");
    if (g.n == 0) return Rational(kReducedBetti0OfEmpty);
    std::vector<uint64_t> adj(g.n, 0);
    for (int u = 0; u < g.n; ++u)
        for (int v : g.adj[u]) adj[u] |= uint64_t(1) << v;
    std::vector<long> sums(g.n + 1, 0);
    for (uint64_t subset = 1; subset < (uint64_t(1) << g.n); ++subset)
        sums[__builtin_popcountll(subset)] +=
            oracle_detail::component_count_masked(adj, subset) - 1;
    Rational s(kReducedBetti0OfEmpty);
    for (int m = 1; m <= g.n; ++m) s += Rational(Integer(sums[m]), binomial(g.n, m));
    return s;
}

inline Rational mu0(const SimplicialComplex& c) {
    Rational s(0);
    for (int v = 0; v < c.vertex_count(); ++v)
        s += Rational(Integer(1), Integer(1 + c.link(v).vertex_count()));
    return s;
}

// mu_i = delta_{i1} mu_0 + sum_v sigma_{i-1}(lk v) / (1 + f_0(lk v))
inline std::vector<Rational> mu_vector(const SimplicialComplex& c, const FieldSpec& field) {
    int d = c.dim();
    std::vector<Rational> mu(d + 1, Rational(0));
    mu[0] = mu0(c);
    std::vector<std::vector<Rational>> link_sigma;
    std::vector<long> link_f0;
    for (int v = 0; v < c.vertex_count(); ++v) {
        SimplicialComplex lk = c.link(v);
        link_sigma.push_back(sigma_vector_bruteforce(lk, field));
        link_f0.push_back(lk.vertex_count());
    }
    for (int i = 1; i <= d; ++i) {
        Rational s = (i == 1) ? mu[0] : Rational(0);
        for (int v = 0; v < c.vertex_count(); ++v) {
            const auto& ls = link_sigma[v];
            Rational sig = (i - 1 < static_cast<int>(ls.size())) ? ls[i - 1] : Rational(0);
            s += sig / Rational(Integer(1 + link_f0[v]));
        }
        mu[i] = s;
    }
    return mu;
}

// mu_1 with an injected sigma_0 engine (the FPT pipelines route the
// per-link sigma_0 computation through the tree-decomposition DP).
using Sigma0Engine = std::function<Rational(const SimplicialComplex&)>;

inline Rational mu1_via_engine(const SimplicialComplex& c, const Sigma0Engine& engine) {
    Rational s = mu0(c);
    for (int v = 0; v < c.vertex_count(); ++v) {
        SimplicialComplex lk = c.link(v);
        s += engine(lk) / Rational(Integer(1 + lk.vertex_count()));
    }
    return s;
}

inline SigmaMuReport sigma_mu_report(const SimplicialComplex& c, const FieldSpec& field) {
    SigmaMuReport r;
    r.sigma = sigma_vector_bruteforce(c, field);
    r.mu = mu_vector(c, field);
    r.field = field;
    return r;
}

// ---------------------------------------------------------------------------
// injectivity of H_k(C[W]) -> H_k(C) and the brute-force tightness decision
// ---------------------------------------------------------------------------

namespace oracle_detail {

template <class Ops>
struct InjectivityContext {
    const SimplicialComplex& c;
    Ops ops;
    std::vector<BoundaryMatrix> bnd;               // index k = boundary_matrix(c,k)
    std::vector<std::vector<uint64_t>> col_masks;  // per k, per k-face

    explicit InjectivityContext(const SimplicialComplex& cc, Ops o) : c(cc), ops(o) {
        int d = c.dim();
        bnd.resize(d + 2);
        col_masks.resize(d + 2);
        for (int k = 1; k <= d; ++k) {
            bnd[k] = boundary_matrix(c, k);
            for (const auto& f : bnd[k].cols) col_masks[k].push_back(face_mask(f));
        }
    }

    // columns of d_{k+1} restricted to faces inside the subset, as field vectors
    // of length f_k(C)
    std::vector<std::vector<typename Ops::Elem>> boundary_columns(int k, uint64_t subset) const {
        std::vector<std::vector<typename Ops::Elem>> out;
        int d = c.dim();
        if (k + 1 > d) return out;
        const BoundaryMatrix& b = bnd[k + 1];
        for (size_t cidx = 0; cidx < b.cols.size(); ++cidx) {
            if ((col_masks[k + 1][cidx] & ~subset) != 0) continue;
            std::vector<typename Ops::Elem> v(b.rows.size(), ops.from_int(0));
            for (size_t r = 0; r < b.rows.size(); ++r)
                v[r] = ops.from_int(b.at(static_cast<int>(r), static_cast<int>(cidx)));
            out.push_back(std::move(v));
        }
        return out;
    }

    // basis of Z_k(C[W]) as vectors of length f_k(C)
    std::vector<std::vector<typename Ops::Elem>> cycle_basis(int k, uint64_t subset) const {
        std::vector<std::vector<typename Ops::Elem>> out;
        int d = c.dim();
        if (k > d) return out;
        const auto& kfaces = c.faces(k);
        std::vector<int> cols;
        if (k == 0) {
            for (size_t i = 0; i < kfaces.size(); ++i)
                if ((face_mask(kfaces[i]) & ~subset) == 0) cols.push_back(static_cast<int>(i));
            for (int i : cols) {
                std::vector<typename Ops::Elem> v(kfaces.size(), ops.from_int(0));
                v[i] = ops.from_int(1);
                out.push_back(std::move(v));
            }
            return out;
        }
        const BoundaryMatrix& b = bnd[k];
        for (size_t i = 0; i < b.cols.size(); ++i)
            if ((col_masks[k][i] & ~subset) == 0) cols.push_back(static_cast<int>(i));
        if (cols.empty()) return out;
        FieldMatrix<Ops> m(static_cast<int>(b.rows.size()), static_cast<int>(cols.size()), ops);
        for (int r = 0; r < m.rows; ++r)
            for (size_t ci = 0; ci < cols.size(); ++ci)
                m.at(r, static_cast<int>(ci)) = ops.from_int(b.at(r, cols[ci]));
        auto ker = kernel_basis(std::move(m), ops);
        for (const auto& kv : ker) {
            std::vector<typename Ops::Elem> v(b.cols.size(), ops.from_int(0));
            for (size_t ci = 0; ci < cols.size(); ++ci) v[cols[ci]] = kv[ci];
            out.push_back(std::move(v));
        }
        return out;
    }

    int rank_of_vectors(const std::vector<std::vector<typename Ops::Elem>>& vecs) const {
        if (vecs.empty()) return 0;
        FieldMatrix<Ops> m(static_cast<int>(vecs.size()), static_cast<int>(vecs[0].size()), ops);
        for (size_t r = 0; r < vecs.size(); ++r)
            for (size_t cc = 0; cc < vecs[r].size(); ++cc)
                m.at(static_cast<int>(r), static_cast<int>(cc)) = vecs[r][cc];
        return field_rank(std::move(m), ops);
    }

    bool in_span(const std::vector<std::vector<typename Ops::Elem>>& span,
                 const std::vector<typename Ops::Elem>& v) const {
        auto with = span;
        with.push_back(v);
        return rank_of_vectors(with) == rank_of_vectors(span);
    }

    // true iff H_k(C[W]) -> H_k(C) is injective; optionally extracts a
    // witness cycle (in C-face coordinates) when not.
    bool injective(int k, uint64_t subset, std::vector<int>* witness_faces) const {
        if (subset == 0) return true;
        auto Z = cycle_basis(k, subset);
        if (Z.empty()) return true;
        auto B_C = boundary_columns(k, ~uint64_t(0));
        auto B_W = boundary_columns(k, subset);
        int dim_Z = rank_of_vectors(Z);
        int dim_BC = rank_of_vectors(B_C);
        auto ZB = Z;
        for (const auto& v : B_C) ZB.push_back(v);
        int dim_sum = rank_of_vectors(ZB);
        int dim_int = dim_Z + dim_BC - dim_sum;
        int dim_BW = rank_of_vectors(B_W);
        if (dim_int == dim_BW) return true;
        if (witness_faces) {
            // kernel of [Z | B_C] gives elements of the intersection
            size_t len = Z[0].size();
            FieldMatrix<Ops> stacked(static_cast<int>(len),
                                     static_cast<int>(Z.size() + B_C.size()), ops);
            for (size_t r = 0; r < len; ++r) {
                for (size_t j = 0; j < Z.size(); ++j)
                    stacked.at(static_cast<int>(r), static_cast<int>(j)) = Z[j][r];
                for (size_t j = 0; j < B_C.size(); ++j)
                    stacked.at(static_cast<int>(r), static_cast<int>(Z.size() + j)) = B_C[j][r];
            }
            auto ker = kernel_basis(std::move(stacked), ops);
            for (const auto& kv : ker) {
                std::vector<typename Ops::Elem> z(len, ops.from_int(0));
                bool nonzero = false;
                for (size_t j = 0; j < Z.size(); ++j) {
                    if (ops.is_zero(kv[j])) continue;
                    for (size_t r = 0; r < len; ++r)
                        z[r] = ops.add(z[r], ops.mul(kv[j], Z[j][r]));
                }
                for (const auto& e : z)
                    if (!ops.is_zero(e)) {
                        nonzero = true;
                        break;
                    }
                if (!nonzero) continue;
                if (!in_span(B_W, z)) {
                    for (size_t r = 0; r < len; ++r)
                        if (!ops.is_zero(z[r])) witness_faces->push_back(static_cast<int>(r));
                    break;
                }
            }
        }
        return false;
    }
};

template <class Ops>
bool injectivity_query(const SimplicialComplex& c, uint64_t subset, int k, Ops ops) {
    InjectivityContext<Ops> ctx(c, ops);
    return ctx.injective(k, subset, nullptr);
}

}  // namespace oracle_detail

inline bool is_injective_on_homology(const SimplicialComplex& c, const std::vector<int>& W,
                                     int k, const FieldSpec& field) {
    if (c.vertex_count() > 64)
        throw std::invalid_argument("is_injective_on_homology: more than 64 vertices");
    uint64_t subset = 0;
    for (int v : W) {
        if (v < 0 || v >= c.vertex_count())
            throw std::invalid_argument("is_injective_on_homology: vertex not in complex");
        subset |= uint64_t(1) << v;
    }
    if (k > c.dim()) return true;
    if (field.is_rationals())
        return oracle_detail::injectivity_query(c, subset, k, RationalFieldOps{});
    return oracle_detail::injectivity_query(c, subset, k, PrimeFieldOps{field.characteristic});
}

namespace oracle_detail {

template <class Ops>
TightnessReport tight_bruteforce_impl(const SimplicialComplex& c, const FieldSpec& field,
                                      Ops ops) {
    TightnessReport rep;
    rep.algorithm = "brute";
    rep.field = field.str();
    if (!c.connected()) {
        rep.verdict = Verdict::NotTight;
        rep.reason = Reason::NotConnected;
        return rep;
    }
    int n = c.vertex_count();
    int d = c.dim();
    InjectivityContext<Ops> ctx(c, ops);
    // lexicographically least (|W|, W, k) failure
    for (int m = 1; m < n; ++m) {
        std::vector<int> comb(m);
        for (int i = 0; i < m; ++i) comb[i] = i;
        while (true) {
            uint64_t subset = 0;
            for (int v : comb) subset |= uint64_t(1) << v;
            for (int k = 0; k <= d; ++k) {
                std::vector<int> witness_faces;
                if (!ctx.injective(k, subset, &witness_faces)) {
                    rep.verdict = Verdict::NotTight;
                    rep.reason = Reason::WitnessFound;
                    TightnessWitness w;
                    for (int v : comb) w.W.push_back(c.label(v));
                    w.k = k;
                    for (int fi : witness_faces) {
                        std::vector<std::string> labs;
                        for (int v : c.faces(k)[fi]) labs.push_back(c.label(v));
                        w.cycle.push_back(labs);
                    }
                    rep.witness = w;
                    return rep;
                }
            }
            // next combination
            int i = m - 1;
            while (i >= 0 && comb[i] == n - m + i) --i;
            if (i < 0) break;
            ++comb[i];
            for (int j = i + 1; j < m; ++j) comb[j] = comb[j - 1] + 1;
        }
    }
    rep.verdict = Verdict::Tight;
    return rep;
}

}  // namespace oracle_detail

// Decides F-tightness by checking injectivity for every vertex subset and
// every degree. Witness choice is deterministic: the lexicographically
// least (|W|, W, k) failure.
inline TightnessReport is_tight_bruteforce(const SimplicialComplex& c, const FieldSpec& field) {
    oracle_detail::check_bound(c.vertex_count(), "is_tight_bruteforce");
    if (field.is_rationals())
        return oracle_detail::tight_bruteforce_impl(c, field, RationalFieldOps{});
    return oracle_detail::tight_bruteforce_impl(c, field, PrimeFieldOps{field.characteristic});
}

}  // namespace tight
