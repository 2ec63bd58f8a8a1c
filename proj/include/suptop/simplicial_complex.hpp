#ifndef SUPTOP_SIMPLICIAL_COMPLEX_HPP
#define SUPTOP_SIMPLICIAL_COMPLEX_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "suptop/cell_complex.hpp"
#include "suptop/integers.hpp"

namespace suptop {

/// Finite simplicial complex: simplices stored per degree as strictly
/// increasing vertex-id lists, sorted lexicographically (canonical order).
/// The global vertex order (integer order on ids) also orders cup-product
/// front/back faces.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    static SimplicialComplex from_top_simplices(const std::vector<std::vector<int>>& top) {
        SimplicialComplex k;
        std::set<std::vector<int>> closure;
        for (auto s : top) {
            if (s.empty()) throw InputError("empty simplex");
            std::sort(s.begin(), s.end());
            if (std::adjacent_find(s.begin(), s.end()) != s.end())
                throw InputError("simplex with repeated vertex");
            for (int v : s)
                if (v < 0) throw InputError("negative vertex index");
            // all subsets
            const std::size_t n = s.size();
            for (unsigned long long mask = 1; mask < (1ULL << n); ++mask) {
                std::vector<int> f;
                for (std::size_t i = 0; i < n; ++i)
                    if (mask >> i & 1ULL) f.push_back(s[i]);
                closure.insert(std::move(f));
            }
        }
        for (const auto& s : closure) {
            int d = static_cast<int>(s.size()) - 1;
            if (d >= static_cast<int>(k.simplices_.size())) k.simplices_.resize(d + 1);
            k.simplices_[d].push_back(s);
        }
        for (auto& level : k.simplices_) std::sort(level.begin(), level.end());
        k.finish();
        return k;
    }

    int dim() const { return static_cast<int>(simplices_.size()) - 1; }
    std::size_t n_simplices(int d) const {
        return (d < 0 || d > dim()) ? 0 : simplices_[d].size();
    }
    std::size_t total_simplices() const {
        std::size_t t = 0;
        for (const auto& l : simplices_) t += l.size();
        return t;
    }
    const std::vector<int>& simplex(int d, std::size_t i) const { return simplices_[d][i]; }
    const std::vector<int>& vertices() const { return vertex_ids_; }

    std::optional<std::size_t> index_of(const std::vector<int>& sorted_simplex) const {
        int d = static_cast<int>(sorted_simplex.size()) - 1;
        if (d < 0 || d > dim()) return std::nullopt;
        const auto& level = simplices_[d];
        auto it = std::lower_bound(level.begin(), level.end(), sorted_simplex);
        if (it != level.end() && *it == sorted_simplex) return it - level.begin();
        return std::nullopt;
    }

    const CellComplex& chain_complex() const { return chain_; }

    bool operator==(const SimplicialComplex& o) const { return simplices_ == o.simplices_; }

    /// Bitmask of vertex positions used by simplex (d, i).
    const std::vector<std::uint64_t>& vertex_mask(int d, std::size_t i) const {
        return masks_[d][i];
    }
    static bool masks_disjoint(const std::vector<std::uint64_t>& a,
                               const std::vector<std::uint64_t>& b) {
        for (std::size_t w = 0; w < a.size(); ++w)
            if (a[w] & b[w]) return false;
        return true;
    }
    bool disjoint(int da, std::size_t ia, int db, std::size_t ib) const {
        return masks_disjoint(masks_[da][ia], masks_[db][ib]);
    }

    /// Per-degree membership mask of a subcomplex; throws if `a` has a
    /// simplex absent from this complex.
    std::vector<std::vector<char>> subcomplex_mask(const SimplicialComplex& a) const {
        std::vector<std::vector<char>> mask(dim() + 1);
        for (int d = 0; d <= dim(); ++d) mask[d].assign(n_simplices(d), 0);
        for (int d = 0; d <= a.dim(); ++d)
            for (std::size_t i = 0; i < a.n_simplices(d); ++i) {
                auto idx = index_of(a.simplex(d, i));
                if (!idx) throw InputError("subcomplex contains a simplex absent from the complex");
                mask[d][*idx] = 1;
            }
        return mask;
    }

private:
    void finish() {
        // vertex ids and positions
        std::set<int> vs;
        if (!simplices_.empty())
            for (const auto& s : simplices_[0]) vs.insert(s[0]);
        vertex_ids_.assign(vs.begin(), vs.end());
        std::map<int, std::size_t> pos;
        for (std::size_t i = 0; i < vertex_ids_.size(); ++i) pos[vertex_ids_[i]] = i;

        const std::size_t words = (vertex_ids_.size() + 63) / 64;
        masks_.resize(simplices_.size());
        for (int d = 0; d <= dim(); ++d) {
            masks_[d].resize(simplices_[d].size());
            for (std::size_t i = 0; i < simplices_[d].size(); ++i) {
                masks_[d][i].assign(words, 0);
                for (int v : simplices_[d][i]) {
                    std::size_t p = pos[v];
                    masks_[d][i][p / 64] |= 1ULL << (p % 64);
                }
            }
        }

        // boundary matrices
        std::vector<std::size_t> counts(simplices_.size());
        for (int d = 0; d <= dim(); ++d) counts[d] = simplices_[d].size();
        std::vector<SparseIntMatrix> bnd(simplices_.size());
        for (int d = 1; d <= dim(); ++d) {
            bnd[d] = SparseIntMatrix(counts[d], counts[d - 1]);
            for (std::size_t i = 0; i < simplices_[d].size(); ++i) {
                const auto& s = simplices_[d][i];
                std::vector<int> face(s.size() - 1);
                for (std::size_t k = 0; k < s.size(); ++k) {
                    face.clear();
                    for (std::size_t j = 0; j < s.size(); ++j)
                        if (j != k) face.push_back(s[j]);
                    auto fi = index_of(face);
                    bnd[d].add(i, *fi, (k % 2) ? -1 : 1);
                }
            }
        }
        chain_ = CellComplex(counts, std::move(bnd));
    }

    std::vector<std::vector<std::vector<int>>> simplices_; // [d][i] = sorted vertex ids
    std::vector<int> vertex_ids_;
    std::vector<std::vector<std::vector<std::uint64_t>>> masks_;
    CellComplex chain_;
};

// ----- simplicial maps -------------------------------------------------------

/// Simplicial map given by a vertex assignment. Simplices with repeated
/// image vertices carry zero at the chain level; otherwise the image is the
/// sorted simplex with the sorting sign.
class SimplicialMap {
public:
    SimplicialMap(const SimplicialComplex* src, const SimplicialComplex* dst,
                  std::map<int, int> vertex_image)
        : src_(src), dst_(dst), vertex_image_(std::move(vertex_image)) {
        for (int v : src_->vertices())
            if (!vertex_image_.count(v)) throw InputError("simplicial map: vertex without image");
    }

    const SimplicialComplex* src() const { return src_; }
    const SimplicialComplex* dst() const { return dst_; }

    int image_vertex(int v) const { return vertex_image_.at(v); }

    /// Chain image of simplex (d, i): (index in dst, sign), or nullopt when
    /// degenerate.
    std::optional<std::pair<std::size_t, int>> chain_image(int d, std::size_t i) const {
        std::vector<int> img;
        img.reserve(src_->simplex(d, i).size());
        for (int v : src_->simplex(d, i)) img.push_back(vertex_image_.at(v));
        int sign = sort_sign(img);
        if (sign == 0) return std::nullopt;
        std::sort(img.begin(), img.end());
        auto idx = dst_->index_of(img);
        if (!idx) throw InputError("simplicial map: image simplex missing from target");
        return std::make_pair(*idx, sign);
    }

    /// Pullback of a degree-d cochain on dst.
    std::vector<Int> pullback(int d, const std::vector<Int>& alpha) const {
        if (alpha.size() != dst_->n_simplices(d)) throw InputError("pullback: length mismatch");
        std::vector<Int> out(src_->n_simplices(d), Int(0));
        for (std::size_t i = 0; i < src_->n_simplices(d); ++i)
            if (auto im = chain_image(d, i)) out[i] = Int(im->second) * alpha[im->first];
        return out;
    }

private:
    const SimplicialComplex* src_;
    const SimplicialComplex* dst_;
    std::map<int, int> vertex_image_;
};

// ----- barycentric subdivision ----------------------------------------------

struct Subdivision {
    SimplicialComplex complex;
    // new vertex id of the barycenter of each original simplex: flat order
    // (dim, index); chain map below realizes a simplex as its subdivided sum
    std::vector<std::vector<int>> barycenter_id;
    // chain map C_d(K) -> C_d(K'): per degree, per simplex, sparse chain
    std::vector<std::vector<std::vector<std::pair<std::size_t, int>>>> chain_map;
};

/// Barycentric subdivision with its subdivision chain map (a chain-level
/// quasi-isomorphism; homology invariance is checked in tests).
inline Subdivision barycentric_subdivide(const SimplicialComplex& k) {
    Subdivision out;
    const int dim = k.dim();
    out.barycenter_id.resize(dim + 1);
    int next = 0;
    for (int d = 0; d <= dim; ++d) {
        out.barycenter_id[d].resize(k.n_simplices(d));
        for (std::size_t i = 0; i < k.n_simplices(d); ++i) out.barycenter_id[d][i] = next++;
    }

    // top simplices of the subdivision: flags of simplices ending at maximal ones
    std::vector<std::vector<int>> tops;
    std::vector<std::pair<int, std::size_t>> chain_stack;
    auto emit_flags = [&](auto&& self, int d, std::size_t i) -> void {
        chain_stack.push_back({d, i});
        if (d == 0) {
            std::vector<int> simplex;
            for (auto [dd, ii] : chain_stack) simplex.push_back(out.barycenter_id[dd][ii]);
            tops.push_back(std::move(simplex));
        } else {
            const auto& s = k.simplex(d, i);
            std::vector<int> face(s.size() - 1);
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                face.clear();
                for (std::size_t j = 0; j < s.size(); ++j)
                    if (j != drop) face.push_back(s[j]);
                self(self, d - 1, *k.index_of(face));
            }
        }
        chain_stack.pop_back();
    };
    // maximal simplices: not a proper face of another simplex
    for (int d = 0; d <= dim; ++d)
        for (std::size_t i = 0; i < k.n_simplices(d); ++i) {
            bool maximal = true;
            if (d < dim) {
                // a simplex is maximal iff it is not a face of any (d+1)-simplex
                const auto& s = k.simplex(d, i);
                for (std::size_t j = 0; maximal && j < k.n_simplices(d + 1); ++j) {
                    const auto& t = k.simplex(d + 1, j);
                    if (std::includes(t.begin(), t.end(), s.begin(), s.end())) maximal = false;
                }
            }
            if (maximal) emit_flags(emit_flags, d, i);
        }
    out.complex = SimplicialComplex::from_top_simplices(tops);

    // subdivision chain map: sd(vertex) = barycenter vertex;
    // sd(sigma) = (-1)^d cone_{b_sigma}(sd(boundary sigma)), the cone vertex
    // having the largest id so cones stay sorted
    out.chain_map.resize(dim + 1);
    for (int d = 0; d <= dim; ++d) out.chain_map[d].resize(k.n_simplices(d));
    for (std::size_t i = 0; i < k.n_simplices(0); ++i) {
        std::vector<int> v{out.barycenter_id[0][i]};
        out.chain_map[0][i] = {{*out.complex.index_of(v), 1}};
    }
    for (int d = 1; d <= dim; ++d) {
        for (std::size_t i = 0; i < k.n_simplices(d); ++i) {
            std::map<std::size_t, int> acc;
            int b = out.barycenter_id[d][i];
            const auto& bnd = k.chain_complex().boundary(d);
            for (const auto& [f, eps] : bnd.row(i)) {
                for (const auto& [cell, sgn] : out.chain_map[d - 1][f]) {
                    // cone the subdivided face with apex b
                    std::vector<int> s = out.complex.simplex(d - 1, cell);
                    s.push_back(b); // b exceeds every barycenter id of lower simplices
                    auto idx = out.complex.index_of(s);
                    if (!idx) throw ModelError("subdivision: cone simplex missing");
                    int total = sgn * static_cast<int>(eps);
                    acc[*idx] += (d % 2 ? -total : total);
                }
            }
            auto& entry = out.chain_map[d][i];
            for (const auto& [cell, coeff] : acc)
                if (coeff) entry.emplace_back(cell, coeff);
        }
    }
    return out;
}

// ----- ordered simplicial product (staircase triangulation) -----------------

struct SimplicialProduct {
    SimplicialComplex complex;
    // product vertex id -> (left vertex id, right vertex id)
    std::vector<std::pair<int, int>> vertex_pair;
    std::map<std::pair<int, int>, int> vertex_id;
};

/// Triangulated product |K| x |L|: vertices are pairs, simplices are chains
/// in the product of the vertex orders. `left_key` overrides the order of
/// K's vertices (ties broken by id); the product vertex ids follow that
/// order, which matters when a covering map downstairs must stay monotone.
inline SimplicialProduct simplicial_product(const SimplicialComplex& k, const SimplicialComplex& l,
                                            const std::map<int, int>* left_key = nullptr) {
    SimplicialProduct out;
    std::vector<int> kv = k.vertices(), lv = l.vertices();
    std::stable_sort(kv.begin(), kv.end(), [&](int a, int b) {
        if (left_key) {
            int ka = left_key->at(a), kb = left_key->at(b);
            if (ka != kb) return ka < kb;
        }
        return a < b;
    });
    int next = 0;
    for (int a : kv)
        for (int b : lv) {
            out.vertex_id[{a, b}] = next++;
            out.vertex_pair.emplace_back(a, b);
        }

    // maximal simplices of each factor
    auto maximal = [](const SimplicialComplex& c) {
        std::vector<std::vector<int>> tops;
        for (int d = 0; d <= c.dim(); ++d)
            for (std::size_t i = 0; i < c.n_simplices(d); ++i) {
                const auto& s = c.simplex(d, i);
                bool is_max = true;
                for (std::size_t j = 0; is_max && d < c.dim() && j < c.n_simplices(d + 1); ++j) {
                    const auto& t = c.simplex(d + 1, j);
                    if (std::includes(t.begin(), t.end(), s.begin(), s.end())) is_max = false;
                }
                if (is_max) tops.push_back(s);
            }
        return tops;
    };

    std::vector<std::vector<int>> tops;
    for (const auto& s : maximal(k))
        for (const auto& t : maximal(l)) {
            // monotone staircase paths through the (s, t) grid; factors are
            // ordered by the product vertex order
            std::vector<int> s_sorted = s, t_sorted = t;
            std::sort(s_sorted.begin(), s_sorted.end(), [&](int a, int b) {
                return out.vertex_id.at({a, lv[0]}) < out.vertex_id.at({b, lv[0]});
            });
            std::sort(t_sorted.begin(), t_sorted.end());
            const std::size_t p = s_sorted.size(), q = t_sorted.size();
            std::vector<int> path;
            auto rec = [&](auto&& self, std::size_t i, std::size_t j) -> void {
                path.push_back(out.vertex_id.at({s_sorted[i], t_sorted[j]}));
                if (i + 1 == p && j + 1 == q) {
                    tops.push_back(path);
                } else {
                    if (i + 1 < p) self(self, i + 1, j);
                    if (j + 1 < q) self(self, i, j + 1);
                }
                path.pop_back();
            };
            rec(rec, 0, 0);
        }
    out.complex = SimplicialComplex::from_top_simplices(tops);
    return out;
}

} // namespace suptop

#endif
