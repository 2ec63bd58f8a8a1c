#ifndef SUPTOP_GROUP_ACTION_HPP
#define SUPTOP_GROUP_ACTION_HPP

#include <map>
#include <utility>
#include <vector>

#include "suptop/cell_complex.hpp"
#include "suptop/simplicial_complex.hpp"

namespace suptop {

/// Chain automorphism of a cell complex: per degree, each cell maps to a
/// cell with a sign.
struct CellAutomorphism {
    std::vector<std::vector<std::pair<std::size_t, int>>> image; // [deg][cell] = (cell, sign)

    bool is_identity() const {
        for (std::size_t d = 0; d < image.size(); ++d)
            for (std::size_t i = 0; i < image[d].size(); ++i)
                if (image[d][i] != std::make_pair(i, 1)) return false;
        return true;
    }
};

/// The automorphism induced by a vertex permutation (sorted-image sign).
inline CellAutomorphism simplicial_automorphism(const SimplicialComplex& k,
                                                const std::map<int, int>& vertex_perm) {
    CellAutomorphism a;
    a.image.resize(k.dim() + 1);
    for (int d = 0; d <= k.dim(); ++d) {
        a.image[d].resize(k.n_simplices(d));
        for (std::size_t i = 0; i < k.n_simplices(d); ++i) {
            std::vector<int> img;
            for (int v : k.simplex(d, i)) img.push_back(vertex_perm.at(v));
            int sign = sort_sign(img);
            if (sign == 0) throw InputError("vertex permutation degenerates a simplex");
            std::sort(img.begin(), img.end());
            auto idx = k.index_of(img);
            if (!idx) throw InputError("vertex permutation does not preserve the complex");
            a.image[d][i] = {*idx, sign};
        }
    }
    return a;
}

/// Quotient of a complex by a group acting freely on cells. Cells of the
/// quotient are orbits; the projection sends a cell to sign_to_rep * orbit.
struct QuotientData {
    CellComplex complex;
    std::vector<std::vector<std::size_t>> orbit_of;  // [deg][cell] -> orbit index
    std::vector<std::vector<int>> sign_to_rep;       // [deg][cell]
    std::vector<std::vector<std::size_t>> rep_of;    // [deg][orbit] -> representative
    std::size_t group_order = 1;

    /// Push a cochain on the quotient up to the total complex (pullback).
    std::vector<Int> pullback(int deg, const std::vector<Int>& alpha) const {
        std::vector<Int> out(orbit_of[deg].size(), Int(0));
        for (std::size_t c = 0; c < out.size(); ++c)
            out[c] = Int(sign_to_rep[deg][c]) * alpha[orbit_of[deg][c]];
        return out;
    }
};

/// `group` lists the non-identity elements. The action must be free on
/// cells in every degree: a fixed cell is an error asking for subdivision.
inline QuotientData quotient_by_free_action(const CellComplex& k,
                                            const std::vector<CellAutomorphism>& group) {
    QuotientData q;
    q.group_order = group.size() + 1;
    const int dim = k.dim();
    q.orbit_of.resize(dim + 1);
    q.sign_to_rep.resize(dim + 1);
    q.rep_of.resize(dim + 1);

    for (const auto& g : group) {
        if (static_cast<int>(g.image.size()) != dim + 1)
            throw InputError("group element does not act on every degree");
        for (int d = 0; d <= dim; ++d)
            for (std::size_t c = 0; c < k.n_cells(d); ++c)
                if (g.image[d][c].first == c)
                    throw ModelError("non-free cell action (degree " + std::to_string(d) +
                                     "): subdivide the complex first");
    }

    std::vector<std::size_t> counts(dim + 1, 0);
    for (int d = 0; d <= dim; ++d) {
        const std::size_t n = k.n_cells(d);
        auto& orbit = q.orbit_of[d];
        auto& sgn = q.sign_to_rep[d];
        orbit.assign(n, n); // n = unassigned
        sgn.assign(n, 0);
        for (std::size_t c = 0; c < n; ++c) {
            if (orbit[c] != n) continue;
            // c is the smallest unassigned cell of its orbit: representative
            std::size_t o = q.rep_of[d].size();
            q.rep_of[d].push_back(c);
            orbit[c] = o;
            sgn[c] = 1;
            for (const auto& g : group) {
                auto [img, s] = g.image[d][c];
                // g(c) = s * img, so img relates to the representative c by
                // the inverse element with the same sign
                if (orbit[img] != n) {
                    if (orbit[img] != o || sgn[img] != s)
                        throw ModelError("group action inconsistent on cells");
                } else {
                    orbit[img] = o;
                    sgn[img] = s;
                }
            }
        }
        counts[d] = q.rep_of[d].size();
        if (counts[d] * (group.size() + 1) != n)
            throw ModelError("orbits have the wrong size; action is not by the full group");
    }

    std::vector<SparseIntMatrix> bnd(dim + 1);
    for (int d = 1; d <= dim; ++d) {
        bnd[d] = SparseIntMatrix(counts[d], counts[d - 1]);
        for (std::size_t o = 0; o < counts[d]; ++o) {
            std::size_t r = q.rep_of[d][o];
            for (const auto& [f, eps] : k.boundary(d).row(r))
                bnd[d].add(o, q.orbit_of[d - 1][f], eps * q.sign_to_rep[d - 1][f]);
        }
    }
    q.complex = CellComplex(counts, std::move(bnd));
    q.complex.validate();
    return q;
}

} // namespace suptop

#endif
