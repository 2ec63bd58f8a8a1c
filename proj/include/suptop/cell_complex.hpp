#ifndef SUPTOP_CELL_COMPLEX_HPP
#define SUPTOP_CELL_COMPLEX_HPP

#include <utility>
#include <vector>

#include "suptop/sparse_matrix.hpp"

namespace suptop {

/// Degree-graded cell complex with exact integer boundary matrices.
/// boundary(d) maps degree-d chains to degree d-1; composites vanish.
class CellComplex {
public:
    CellComplex() = default;
    CellComplex(std::vector<std::size_t> cells_per_degree, std::vector<SparseIntMatrix> boundary)
        : n_cells_(std::move(cells_per_degree)), boundary_(std::move(boundary)) {
        while (!n_cells_.empty() && n_cells_.back() == 0) n_cells_.pop_back();
        boundary_.resize(n_cells_.size());
    }

    int dim() const { return static_cast<int>(n_cells_.size()) - 1; }

    std::size_t n_cells(int d) const {
        return (d < 0 || d > dim()) ? 0 : n_cells_[d];
    }

    std::size_t total_cells() const {
        std::size_t s = 0;
        for (auto n : n_cells_) s += n;
        return s;
    }

    long long euler_characteristic() const {
        long long chi = 0;
        for (int d = 0; d <= dim(); ++d) chi += (d % 2 ? -1LL : 1LL) * static_cast<long long>(n_cells_[d]);
        return chi;
    }

    /// Boundary matrix C_d -> C_{d-1}; the d = 0 matrix has zero rows.
    const SparseIntMatrix& boundary(int d) const {
        if (d < 1 || d > dim()) return empty_;
        return boundary_[d];
    }

    /// Coboundary of a degree-d cochain (values on d-cells) as a (d+1)-cochain.
    std::vector<Int> coboundary(int d, const std::vector<Int>& cochain) const {
        if (d >= dim()) return std::vector<Int>(0);
        if (cochain.size() != n_cells(d)) throw InputError("coboundary: cochain length mismatch");
        std::vector<Int> out(n_cells(d + 1), Int(0));
        const auto& b = boundary_[d + 1];
        for (std::size_t c = 0; c < b.n_rows(); ++c)
            for (const auto& [f, v] : b.row(c)) out[c] += v * cochain[f];
        return out;
    }

    bool is_cocycle(int d, const std::vector<Int>& cochain) const {
        auto cb = coboundary(d, cochain);
        for (const auto& v : cb)
            if (v != 0) return false;
        return true;
    }

    /// d∘d = 0 in every degree; boundary shapes match cell counts.
    void validate() const {
        for (int d = 1; d <= dim(); ++d) {
            if (boundary_[d].n_rows() != n_cells_[d] || boundary_[d].n_cols() != n_cells_[d - 1])
                throw ModelError("cell complex: boundary matrix shape mismatch in degree " +
                                 std::to_string(d));
        }
        for (int d = 2; d <= dim(); ++d) {
            // compose on basis chains, degree d -> d-2
            const auto& bd = boundary_[d];
            const auto& bd1 = boundary_[d - 1];
            for (std::size_t c = 0; c < bd.n_rows(); ++c) {
                std::vector<std::pair<std::size_t, Int>> acc;
                std::map<std::size_t, Int> sum;
                for (const auto& [f, v] : bd.row(c))
                    for (const auto& [g, w] : bd1.row(f)) sum[g] += v * w;
                for (const auto& [g, total] : sum)
                    if (total != 0)
                        throw ModelError("cell complex: boundary squared nonzero in degree " +
                                         std::to_string(d));
                (void)acc;
            }
        }
    }

private:
    std::vector<std::size_t> n_cells_;
    std::vector<SparseIntMatrix> boundary_; // boundary_[d], d >= 1 meaningful
    inline static const SparseIntMatrix empty_{};
};

/// Product cell complex: cells are pairs, boundary by the signed Leibniz rule
/// d(x,y) = (dx, y) + (-1)^{|x|} (x, dy).
struct ProductComplex {
    CellComplex complex;
    const CellComplex* left = nullptr;
    const CellComplex* right = nullptr;

    /// Cell layout in degree d: blocks by ascending left degree da; inside a
    /// block, index = ia * right.n_cells(db) + ib with db = d - da.
    std::size_t index_of(int da, std::size_t ia, int db, std::size_t ib) const {
        std::size_t off = 0;
        for (int a = 0; a < da; ++a) off += left->n_cells(a) * right->n_cells(da + db - a);
        return off + ia * right->n_cells(db) + ib;
    }

    /// Inverse of index_of.
    std::tuple<int, std::size_t, int, std::size_t> cell_of(int d, std::size_t idx) const {
        for (int da = 0; da <= d; ++da) {
            std::size_t block = left->n_cells(da) * right->n_cells(d - da);
            if (idx < block) {
                std::size_t nb = right->n_cells(d - da);
                return {da, idx / nb, d - da, idx % nb};
            }
            idx -= block;
        }
        throw InputError("product cell index out of range");
    }
};

inline ProductComplex product(const CellComplex& a, const CellComplex& b) {
    ProductComplex out;
    out.left = &a;
    out.right = &b;
    int dim = a.dim() + b.dim();
    if (a.dim() < 0 || b.dim() < 0) {
        out.complex = CellComplex({}, {});
        return out;
    }
    std::vector<std::size_t> counts(dim + 1, 0);
    for (int da = 0; da <= a.dim(); ++da)
        for (int db = 0; db <= b.dim(); ++db) counts[da + db] += a.n_cells(da) * b.n_cells(db);

    std::vector<SparseIntMatrix> bnd(dim + 1);
    for (int d = 1; d <= dim; ++d) bnd[d] = SparseIntMatrix(counts[d], counts[d - 1]);

    for (int d = 1; d <= dim; ++d) {
        for (int da = 0; da <= std::min(d, a.dim()); ++da) {
            int db = d - da;
            if (db > b.dim()) continue;
            for (std::size_t ia = 0; ia < a.n_cells(da); ++ia)
                for (std::size_t ib = 0; ib < b.n_cells(db); ++ib) {
                    std::size_t c = out.index_of(da, ia, db, ib);
                    if (da >= 1)
                        for (const auto& [fa, v] : a.boundary(da).row(ia))
                            bnd[d].add(c, out.index_of(da - 1, fa, db, ib), v);
                    if (db >= 1) {
                        int sign = (da % 2) ? -1 : 1;
                        for (const auto& [fb, v] : b.boundary(db).row(ib))
                            bnd[d].add(c, out.index_of(da, ia, db - 1, fb), v * sign);
                    }
                }
        }
    }
    out.complex = CellComplex(std::move(counts), std::move(bnd));
    return out;
}

} // namespace suptop

#endif
