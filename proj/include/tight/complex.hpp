#pragma once

// Core simplicial-complex representation: facet lists over dense vertex ids,
// external labels kept in a symbol table, and lazily built per-dimension
// face sets. Complexes are immutable after construction; the face cache is
// populated once under a lock and shared between copies.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tight/graph.hpp"
#include "tight/rational.hpp"

namespace tight {

// A face is a strictly increasing sequence of vertex ids; dim = size - 1.
using Face = std::vector<int>;

using FVector = std::vector<long>;

inline int face_dim(const Face& f) { return static_cast<int>(f.size()) - 1; }

inline long alternating_sum(const FVector& f) {
    long chi = 0;
    int sign = 1;
    for (long c : f) {
        chi += sign * c;
        sign = -sign;
    }
    return chi;
}

inline std::string face_str(const Face& f, const std::vector<std::string>& labels) {
    std::string s = "{";
    for (size_t i = 0; i < f.size(); ++i) {
        if (i) s += ",";
        s += labels[f[i]];
    }
    return s + "}";
}

class SimplicialComplex {
  public:
    SimplicialComplex() : cache_(std::make_shared<FaceCache>()) {}

    // build(): deduplicates, drops contained facets, interns labels in order
    // of first appearance. Throws on empty input or repeated label in a facet.
    static SimplicialComplex build(const std::vector<std::vector<std::string>>& facet_lists) {
        if (facet_lists.empty())
            throw std::invalid_argument("build: empty facet list");
        SimplicialComplex c;
        std::map<std::string, int> intern;
        std::vector<Face> raw;
        raw.reserve(facet_lists.size());
        for (const auto& fl : facet_lists) {
            if (fl.empty()) throw std::invalid_argument("build: empty facet");
            Face f;
            f.reserve(fl.size());
            for (const auto& lab : fl) {
                auto it = intern.find(lab);
                int id;
                if (it == intern.end()) {
                    id = static_cast<int>(c.labels_.size());
                    intern.emplace(lab, id);
                    c.labels_.push_back(lab);
                } else {
                    id = it->second;
                }
                f.push_back(id);
            }
            std::sort(f.begin(), f.end());
            if (std::adjacent_find(f.begin(), f.end()) != f.end())
                throw std::invalid_argument("build: repeated label within a facet");
            raw.push_back(std::move(f));
        }
        c.n_ = static_cast<int>(c.labels_.size());
        c.facets_ = reduce_facets(std::move(raw));
        c.init_cache();
        return c;
    }

    static SimplicialComplex build_ints(const std::vector<std::vector<long>>& facet_lists) {
        std::vector<std::vector<std::string>> s;
        s.reserve(facet_lists.size());
        for (const auto& fl : facet_lists) {
            std::vector<std::string> row;
            row.reserve(fl.size());
            for (long v : fl) row.push_back(std::to_string(v));
            s.push_back(std::move(row));
        }
        return build(s);
    }

    bool empty() const { return facets_.empty(); }
    int vertex_count() const { return n_; }
    int dim() const { return dim_; }

    const std::vector<Face>& facets() const { return facets_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int v) const { return labels_.at(v); }

    int id_of(const std::string& lab) const {
        for (int v = 0; v < n_; ++v)
            if (labels_[v] == lab) return v;
        throw std::invalid_argument("unknown vertex label: " + lab);
    }

    // All k-faces in lexicographic order. Cached after the first call.
    const std::vector<Face>& faces(int k) const {
        if (k < 0 || k > dim_)
            throw std::out_of_range("faces: dimension out of range");
        auto& slot = cache_->by_dim[k];
        std::lock_guard<std::mutex> lock(cache_->mutex);
        if (!slot.built) {
            std::set<Face> out;
            Face buf;
            for (const auto& f : facets_)
                if (face_dim(f) >= k) enumerate_subfaces(f, k + 1, 0, buf, out);
            slot.faces.assign(out.begin(), out.end());
            slot.built = true;
        }
        return slot.faces;
    }

    bool has_face(const Face& f) const {
        if (f.empty() || face_dim(f) > dim_) return false;
        const auto& fs = faces(face_dim(f));
        return std::binary_search(fs.begin(), fs.end(), f);
    }

    FVector f_vector() const {
        FVector fv;
        for (int k = 0; k <= dim_; ++k)
            fv.push_back(static_cast<long>(faces(k).size()));
        return fv;
    }

    long euler_characteristic() const {
        if (empty()) return 0;
        return alternating_sum(f_vector());
    }

    // Link of v: all faces s with v not in s and s+{v} in C; labels inherited.
    // May be the empty complex (vertex whose star is the single facet {v}).
    SimplicialComplex link(int v) const {
        if (v < 0 || v >= n_) throw std::invalid_argument("link: unknown vertex");
        std::vector<Face> gen;
        for (const auto& f : facets_) {
            if (!std::binary_search(f.begin(), f.end(), v)) continue;
            Face g;
            for (int u : f)
                if (u != v) g.push_back(u);
            if (!g.empty()) gen.push_back(std::move(g));
        }
        return from_id_faces(gen);
    }

    SimplicialComplex link_of_label(const std::string& lab) const { return link(id_of(lab)); }

    // Induced subcomplex on the id set W; isolated members of W are kept.
    SimplicialComplex induced(const std::vector<int>& W) const {
        std::vector<char> in(n_, 0);
        for (int v : W) {
            if (v < 0 || v >= n_) throw std::invalid_argument("induced: vertex not in complex");
            in[v] = 1;
        }
        std::vector<Face> gen;
        for (const auto& f : facets_) {
            Face g;
            for (int u : f)
                if (in[u]) g.push_back(u);
            if (!g.empty()) gen.push_back(std::move(g));
        }
        return from_id_faces(gen);
    }

    SimplicialComplex induced_labels(const std::vector<std::string>& W) const {
        std::vector<int> ids;
        ids.reserve(W.size());
        for (const auto& lab : W) ids.push_back(id_of(lab));
        return induced(ids);
    }

    Graph one_skeleton() const {
        Graph g(n_);
        if (dim_ >= 1)
            for (const auto& e : faces(1)) g.add_edge(e[0], e[1]);
        g.finish();
        return g;
    }

    bool pure() const {
        for (const auto& f : facets_)
            if (face_dim(f) != dim_) return false;
        return true;
    }

    // Facet indices containing each ridge, aligned with faces(dim-1).
    std::vector<std::vector<int>> ridge_incidence() const {
        std::map<Face, std::vector<int>> at;
        for (size_t i = 0; i < facets_.size(); ++i) {
            const Face& f = facets_[i];
            if (face_dim(f) != dim_) continue;
            for (size_t drop = 0; drop < f.size(); ++drop) {
                Face r;
                for (size_t j = 0; j < f.size(); ++j)
                    if (j != drop) r.push_back(f[j]);
                at[r].push_back(static_cast<int>(i));
            }
        }
        std::vector<std::vector<int>> out;
        const auto& ridges = faces(dim_ - 1);
        out.reserve(ridges.size());
        for (const auto& r : ridges) {
            auto it = at.find(r);
            out.push_back(it == at.end() ? std::vector<int>{} : it->second);
        }
        return out;
    }

    bool weak_pseudomanifold() const {
        if (!pure() || dim_ < 1) return false;
        for (const auto& inc : ridge_incidence())
            if (inc.size() > 2) return false;
        return true;
    }

    // Every ridge in exactly two facets.
    bool closed_pseudomanifold() const {
        if (!pure() || dim_ < 1) return false;
        for (const auto& inc : ridge_incidence())
            if (inc.size() != 2) return false;
        return true;
    }

    bool connected() const {
        if (n_ <= 1) return true;
        Graph g(n_);
        for (const auto& f : facets_)
            for (size_t i = 0; i + 1 < f.size(); ++i) g.add_edge(f[i], f[i + 1]);
        g.finish();
        return g.connected();
    }

    // One graph vertex per facet, one edge per shared ridge.
    Graph dual_graph() const {
        if (!pure())
            throw std::invalid_argument("dual_graph: complex is not pure");
        Graph g(static_cast<int>(facets_.size()));
        const auto& ridges = faces(dim_ - 1);
        auto inc = ridge_incidence();
        for (size_t r = 0; r < inc.size(); ++r) {
            if (inc[r].size() > 2)
                throw std::invalid_argument("dual_graph: ridge " + face_str(ridges[r], labels_) +
                                            " lies in three or more facets");
            if (inc[r].size() == 2) g.add_edge(inc[r][0], inc[r][1]);
        }
        g.finish();
        return g;
    }

    // true iff all (k-1)-faces on the vertex set are present
    bool is_k_neighbourly(int k) const {
        if (k < 1) throw std::invalid_argument("is_k_neighbourly: k must be >= 1");
        Integer have(0);
        if (k - 1 <= dim_) have = Integer(static_cast<long>(faces(k - 1).size()));
        return have == binomial(n_, k);
    }

    bool same_complex(const SimplicialComplex& other) const {
        if (n_ != other.n_ || facets_.size() != other.facets_.size()) return false;
        std::set<std::vector<std::string>> a, b;
        for (const auto& f : facets_) a.insert(to_labels(f));
        for (const auto& f : other.facets_) b.insert(other.to_labels(f));
        return a == b;
    }

    std::vector<std::string> to_labels(const Face& f) const {
        std::vector<std::string> out;
        out.reserve(f.size());
        for (int v : f) out.push_back(labels_[v]);
        std::sort(out.begin(), out.end());
        return out;
    }

  private:
    struct FaceSlot {
        bool built = false;
        std::vector<Face> faces;
    };
    struct FaceCache {
        std::mutex mutex;
        std::vector<FaceSlot> by_dim;
    };

    void init_cache() {
        dim_ = -1;
        for (const auto& f : facets_) dim_ = std::max(dim_, face_dim(f));
        cache_ = std::make_shared<FaceCache>();
        cache_->by_dim.resize(static_cast<size_t>(std::max(dim_, 0)) + 1);
    }

    // Build a complex over a subset of this complex's vertices, inheriting
    // labels; ids are re-interned densely in ascending parent-id order.
    SimplicialComplex from_id_faces(const std::vector<Face>& gen) const {
        SimplicialComplex c;
        if (gen.empty()) return c;  // empty complex
        std::set<int> used;
        for (const auto& f : gen) used.insert(f.begin(), f.end());
        std::map<int, int> remap;
        for (int v : used) {
            remap[v] = static_cast<int>(c.labels_.size());
            c.labels_.push_back(labels_[v]);
        }
        c.n_ = static_cast<int>(c.labels_.size());
        std::vector<Face> raw;
        raw.reserve(gen.size());
        for (const auto& f : gen) {
            Face g;
            g.reserve(f.size());
            for (int v : f) g.push_back(remap[v]);
            std::sort(g.begin(), g.end());
            raw.push_back(std::move(g));
        }
        c.facets_ = reduce_facets(std::move(raw));
        c.init_cache();
        return c;
    }

    static std::vector<Face> reduce_facets(std::vector<Face> raw) {
        std::sort(raw.begin(), raw.end());
        raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
        std::vector<Face> out;
        for (size_t i = 0; i < raw.size(); ++i) {
            bool contained = false;
            for (size_t j = 0; j < raw.size() && !contained; ++j) {
                if (j == i || raw[j].size() <= raw[i].size()) continue;
                contained = std::includes(raw[j].begin(), raw[j].end(),
                                          raw[i].begin(), raw[i].end());
            }
            if (!contained) out.push_back(raw[i]);
        }
        return out;
    }

    static void enumerate_subfaces(const Face& f, int want, size_t start, Face& buf,
                                   std::set<Face>& out) {
        if (static_cast<int>(buf.size()) == want) {
            out.insert(buf);
            return;
        }
        int need = want - static_cast<int>(buf.size());
        for (size_t i = start; i + need <= f.size(); ++i) {
            buf.push_back(f[i]);
            enumerate_subfaces(f, want, i + 1, buf, out);
            buf.pop_back();
        }
    }

    int n_ = 0;
    int dim_ = -1;
    std::vector<Face> facets_;
    std::vector<std::string> labels_;
    std::shared_ptr<FaceCache> cache_;
};

}  // namespace tight
