#pragma once

// Exact homology kernel: signed boundary matrices, Betti numbers over the
// rationals or a prime field (direct elimination), integral homology via
// Smith normal form with arbitrary-precision integers, orientability by
// sign propagation over the dual graph, and the field-maximised beta_1.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tight/complex.hpp"
#include "tight/rational.hpp"

namespace tight {

inline bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Coefficient field selector: rationals (characteristic 0) or F_p.
struct FieldSpec {
    long characteristic = 0;  // 0 = rationals, otherwise a prime

    static FieldSpec rationals() { return FieldSpec{0}; }
    static FieldSpec prime(long p) {
        if (!is_prime(p) || p >= (1L << 31))
            throw std::invalid_argument("FieldSpec: characteristic must be a prime < 2^31");
        return FieldSpec{p};
    }
    bool is_rationals() const { return characteristic == 0; }
    std::string str() const {
        return is_rationals() ? "Q" : "F" + std::to_string(characteristic);
    }
    friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
        return a.characteristic == b.characteristic;
    }
};

// ---------------------------------------------------------------------------
// small dense linear algebra over an abstract field
// ---------------------------------------------------------------------------

struct PrimeFieldOps {
    long p;
    using Elem = long;
    Elem from_int(long v) const {
        long r = v % p;
        return r < 0 ? r + p : r;
    }
    bool is_zero(Elem a) const { return a == 0; }
    Elem add(Elem a, Elem b) const { return (a + b) % p; }
    Elem sub(Elem a, Elem b) const { return (a - b % p + p) % p; }
    Elem mul(Elem a, Elem b) const { return static_cast<long>((__int128)a * b % p); }
    Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
    Elem inv(Elem a) const {
        // extended Euclid
        long t = 0, nt = 1, r = p, nr = a % p;
        while (nr != 0) {
            long q = r / nr;
            t -= q * nt;
            std::swap(t, nt);
            r -= q * nr;
            std::swap(r, nr);
        }
        if (r != 1) throw std::logic_error("inv: not invertible");
        return t < 0 ? t + p : t;
    }
};

struct RationalFieldOps {
    using Elem = Rational;
    Elem from_int(long v) const { return Rational(v); }
    bool is_zero(const Elem& a) const { return a == Rational(0); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem inv(const Elem& a) const { return Rational(1) / a; }
};

// Row-major dense matrix with field ops supplied per call.
template <class Ops>
struct FieldMatrix {
    using E = typename Ops::Elem;
    int rows = 0, cols = 0;
    std::vector<E> a;

    FieldMatrix() = default;
    FieldMatrix(int r, int c, const Ops& ops) : rows(r), cols(c), a(r * c, ops.from_int(0)) {}
    E& at(int r, int c) { return a[r * cols + c]; }
    const E& at(int r, int c) const { return a[r * cols + c]; }
};

// In-place row echelon reduction; returns pivot columns.
template <class Ops>
std::vector<int> row_echelon(FieldMatrix<Ops>& m, const Ops& ops) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int pr = -1;
        for (int i = r; i < m.rows; ++i)
            if (!ops.is_zero(m.at(i, c))) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        for (int j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(r, j));
        auto ipiv = ops.inv(m.at(r, c));
        for (int j = c; j < m.cols; ++j) m.at(r, j) = ops.mul(m.at(r, j), ipiv);
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || ops.is_zero(m.at(i, c))) continue;
            auto f = m.at(i, c);
            for (int j = c; j < m.cols; ++j)
                m.at(i, j) = ops.sub(m.at(i, j), ops.mul(f, m.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class Ops>
int field_rank(FieldMatrix<Ops> m, const Ops& ops) {
    return static_cast<int>(row_echelon(m, ops).size());
}

// Basis of the null space of m (as column vectors of length m.cols).
template <class Ops>
std::vector<std::vector<typename Ops::Elem>> kernel_basis(FieldMatrix<Ops> m, const Ops& ops) {
    auto pivots = row_echelon(m, ops);
    std::vector<char> is_pivot(m.cols, 0);
    for (int c : pivots) is_pivot[c] = 1;
    std::vector<std::vector<typename Ops::Elem>> basis;
    for (int free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<typename Ops::Elem> v(m.cols, ops.from_int(0));
        v[free] = ops.from_int(1);
        for (size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = ops.neg(m.at(static_cast<int>(r), free));
        basis.push_back(std::move(v));
    }
    return basis;
}

// ---------------------------------------------------------------------------
// boundary matrices
// ---------------------------------------------------------------------------

// Signed incidence matrix between faces(C,k) (columns) and faces(C,k-1)
// (rows), both in lexicographic order; orientation by increasing vertex
// order, the face omitting the i-th vertex gets sign (-1)^i.
struct BoundaryMatrix {
    int k = 0;
    std::vector<Face> rows;  // (k-1)-faces
    std::vector<Face> cols;  // k-faces
    std::vector<int> entries;

    int at(int r, int c) const { return entries[r * cols.size() + c]; }
};

inline BoundaryMatrix boundary_matrix(const SimplicialComplex& c, int k) {
    if (k < 1 || k > c.dim())
        throw std::out_of_range("boundary_matrix: k out of range");
    BoundaryMatrix m;
    m.k = k;
    m.rows = c.faces(k - 1);
    m.cols = c.faces(k);
    m.entries.assign(m.rows.size() * m.cols.size(), 0);
    std::map<Face, int> row_index;
    for (size_t r = 0; r < m.rows.size(); ++r) row_index[m.rows[r]] = static_cast<int>(r);
    for (size_t cidx = 0; cidx < m.cols.size(); ++cidx) {
        const Face& f = m.cols[cidx];
        int sign = 1;
        for (size_t drop = 0; drop < f.size(); ++drop) {
            Face sub;
            for (size_t j = 0; j < f.size(); ++j)
                if (j != drop) sub.push_back(f[j]);
            m.entries[row_index.at(sub) * m.cols.size() + cidx] = sign;
            sign = -sign;
        }
    }
    return m;
}

namespace detail {

template <class Ops>
FieldMatrix<Ops> to_field(const BoundaryMatrix& b, const Ops& ops) {
    FieldMatrix<Ops> m(static_cast<int>(b.rows.size()), static_cast<int>(b.cols.size()), ops);
    for (size_t i = 0; i < b.entries.size(); ++i) m.a[i] = ops.from_int(b.entries[i]);
    return m;
}

inline int boundary_rank(const SimplicialComplex& c, int k, const FieldSpec& field) {
    if (k < 1 || k > c.dim()) return 0;
    BoundaryMatrix b = boundary_matrix(c, k);
    if (field.is_rationals()) {
        RationalFieldOps ops;
        return field_rank(to_field(b, ops), ops);
    }
    PrimeFieldOps ops{field.characteristic};
    return field_rank(to_field(b, ops), ops);
}

}  // namespace detail

// dim ker d_k - rank d_{k+1} over the field; the reduced variant subtracts
// one from beta_0 of a non-empty complex. Degrees above dim(C) give 0.
inline long betti(const SimplicialComplex& c, int k, const FieldSpec& field,
                  bool reduced = false) {
    if (k < 0) throw std::invalid_argument("betti: negative degree");
    if (c.empty()) return 0;
    if (k > c.dim()) return 0;
    long fk = static_cast<long>(c.faces(k).size());
    long kernel = fk - detail::boundary_rank(c, k, field);
    long image = detail::boundary_rank(c, k + 1, field);
    long b = kernel - image;
    if (reduced && k == 0) b -= 1;
    return b;
}

// ---------------------------------------------------------------------------
// Smith normal form and integral homology
// ---------------------------------------------------------------------------

struct IntegralHomology {
    long rank = 0;
    std::vector<Integer> torsion;  // invariant factors > 1, divisibility chain
};

// Diagonal of the Smith normal form (non-negative, d1 | d2 | ...).
// Pivoting by minimal absolute value keeps intermediate entries small.
inline std::vector<Integer> smith_normal_form(std::vector<std::vector<Integer>> m) {
    int rows = static_cast<int>(m.size());
    int cols = rows ? static_cast<int>(m[0].size()) : 0;
    int t = 0;
    int nmin = std::min(rows, cols);
    std::vector<Integer> diag;
    while (t < nmin) {
        // locate minimal nonzero |entry| in the trailing block
        int pr = -1, pc = -1;
        Integer best;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j) {
                if (m[i][j] == 0) continue;
                Integer a = abs(m[i][j]);
                if (pr < 0 || a < best) {
                    best = a;
                    pr = i;
                    pc = j;
                }
            }
        if (pr < 0) break;  // trailing block is zero
        std::swap(m[t], m[pr]);
        for (int i = t; i < rows; ++i) std::swap(m[i][t], m[i][pc]);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                Integer q = m[i][t] / m[t][t];
                if (q != 0)
                    for (int j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
                if (m[i][t] != 0) {  // remainder smaller than pivot: swap up
                    std::swap(m[t], m[i]);
                    clean = false;
                }
            }
            for (int j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                Integer q = m[t][j] / m[t][t];
                if (q != 0)
                    for (int i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
                if (m[t][j] != 0) {
                    for (int i = t; i < rows; ++i) std::swap(m[i][t], m[i][j]);
                    clean = false;
                }
            }
        }
        m[t][t] = abs(m[t][t]);
        // enforce divisibility: fold any non-divisible entry into the pivot
        bool redo = false;
        for (int i = t + 1; i < rows && !redo; ++i)
            for (int j = t + 1; j < cols && !redo; ++j) {
                if (m[i][j] % m[t][t] != 0) {
                    for (int jj = t; jj < cols; ++jj) m[t][jj] += m[i][jj];
                    redo = true;
                }
            }
        if (redo) continue;  // re-run the reduction at the same t
        diag.push_back(m[t][t]);
        ++t;
    }
    return diag;
}

inline std::vector<std::vector<Integer>> boundary_to_integer(const BoundaryMatrix& b) {
    std::vector<std::vector<Integer>> m(b.rows.size(), std::vector<Integer>(b.cols.size()));
    for (size_t r = 0; r < b.rows.size(); ++r)
        for (size_t c = 0; c < b.cols.size(); ++c) m[r][c] = b.at(static_cast<int>(r), static_cast<int>(c));
    return m;
}

// H_k(C; Z) via Smith normal forms of d_k and d_{k+1}.
inline IntegralHomology integral_homology(const SimplicialComplex& c, int k) {
    if (k < 0 || k > c.dim())
        throw std::out_of_range("integral_homology: k out of range");
    long fk = static_cast<long>(c.faces(k).size());
    long rank_dk = 0;
    if (k >= 1) {
        auto d = smith_normal_form(boundary_to_integer(boundary_matrix(c, k)));
        rank_dk = static_cast<long>(std::count_if(d.begin(), d.end(),
                                                  [](const Integer& x) { return x != 0; }));
    }
    IntegralHomology h;
    std::vector<Integer> dk1;
    if (k + 1 <= c.dim())
        dk1 = smith_normal_form(boundary_to_integer(boundary_matrix(c, k + 1)));
    long rank_dk1 = static_cast<long>(std::count_if(dk1.begin(), dk1.end(),
                                                    [](const Integer& x) { return x != 0; }));
    h.rank = fk - rank_dk - rank_dk1;
    for (const Integer& d : dk1)
        if (d > 1) h.torsion.push_back(d);
    std::sort(h.torsion.begin(), h.torsion.end());
    return h;
}

// Universal-coefficient count: beta_k(F) from H_k and H_{k-1} over Z.
inline long betti_from_integral(const IntegralHomology& h_k, const IntegralHomology& h_km1,
                                const FieldSpec& field) {
    if (field.is_rationals()) return h_k.rank;
    long p = field.characteristic;
    long b = h_k.rank;
    for (const Integer& d : h_k.torsion)
        if (d % p == 0) ++b;
    for (const Integer& d : h_km1.torsion)
        if (d % p == 0) ++b;
    return b;
}

// ---------------------------------------------------------------------------
// orientability and the field-maximised beta_1
// ---------------------------------------------------------------------------

// F-orientability for a connected closed weak pseudomanifold. Characteristic
// 2 is always orientable; otherwise facet signs are propagated across dual
// edges, requiring opposite induced orientations on every shared ridge.
inline bool orientable(const SimplicialComplex& c, long characteristic) {
    if (characteristic != 0 && !is_prime(characteristic))
        throw std::invalid_argument("orientable: characteristic must be 0 or prime");
    if (!c.closed_pseudomanifold() || !c.connected())
        throw std::invalid_argument("orientable: complex is not a connected closed pseudomanifold");
    if (characteristic == 2) return true;

    // sign of ridge r inside facet f (position of the omitted vertex)
    auto ridge_sign = [](const Face& facet, const Face& ridge) {
        for (size_t i = 0; i < facet.size(); ++i)
            if (!std::binary_search(ridge.begin(), ridge.end(), facet[i]))
                return i % 2 == 0 ? 1 : -1;
        throw std::logic_error("ridge_sign: ridge not contained in facet");
    };

    const auto& facets = c.facets();
    auto inc = c.ridge_incidence();
    const auto& ridges = c.faces(c.dim() - 1);
    std::vector<std::vector<std::pair<int, int>>> adj(facets.size());  // (other facet, ridge)
    for (size_t r = 0; r < inc.size(); ++r) {
        adj[inc[r][0]].emplace_back(inc[r][1], static_cast<int>(r));
        adj[inc[r][1]].emplace_back(inc[r][0], static_cast<int>(r));
    }
    std::vector<int> sign(facets.size(), 0);
    std::vector<int> stack{0};
    sign[0] = 1;
    while (!stack.empty()) {
        int f = stack.back();
        stack.pop_back();
        for (auto [g, r] : adj[f]) {
            int need = -sign[f] * ridge_sign(facets[f], ridges[r]) * ridge_sign(facets[g], ridges[r]);
            if (sign[g] == 0) {
                sign[g] = need;
                stack.push_back(g);
            } else if (sign[g] != need) {
                return false;
            }
        }
    }
    return true;
}

struct Beta1Max {
    long beta1 = 0;
    FieldSpec field = FieldSpec::rationals();
};

// Maximise beta_1(M, F) over admissible fields: all fields for orientable M
// (it suffices to scan Q, F_2 and primes dividing an H_1 invariant factor);
// only characteristic 2 when M is non-orientable.
inline Beta1Max beta1_max(const SimplicialComplex& m) {
    IntegralHomology h1 = integral_homology(m, 1);
    IntegralHomology h0 = integral_homology(m, 0);
    std::vector<FieldSpec> candidates;
    if (orientable(m, 0)) {
        candidates.push_back(FieldSpec::rationals());
        std::vector<long> primes{2};
        for (const Integer& d : h1.torsion) {
            Integer rest = d;
            for (long p = 2; Integer(p) * p <= rest; ++p)
                while (rest % p == 0) {
                    primes.push_back(p);
                    rest /= p;
                }
            if (rest > 1) {
                if (!rest.fits_slong_p())
                    throw std::runtime_error("beta1_max: torsion prime out of range");
                primes.push_back(rest.get_si());
            }
        }
        std::sort(primes.begin(), primes.end());
        primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
        for (long p : primes) candidates.push_back(FieldSpec::prime(p));
    } else {
        candidates.push_back(FieldSpec::prime(2));
    }
    Beta1Max best;
    bool first = true;
    for (const auto& f : candidates) {
        long b = betti_from_integral(h1, h0, f);
        if (first || b > best.beta1) {
            best = Beta1Max{b, f};
            first = false;
        }
    }
    return best;
}

}  // namespace tight
