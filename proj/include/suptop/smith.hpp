#ifndef SUPTOP_SMITH_HPP
#define SUPTOP_SMITH_HPP

#include <map>
#include <optional>
#include <set>
#include <unordered_set>
#include <utility>
#include <vector>

#include "suptop/sparse_matrix.hpp"

namespace suptop {

struct SNFOptions {
    bool with_left = false;   // track left/left_inv (row transforms)
    bool with_right = false;  // track right/right_inv (column transforms)
    bool rank_only = false;   // skip the divisibility chain (diagonal not meaningful)
};

/// Smith normal form A = left * D * right with unimodular transforms, D
/// diagonal with d_1 | d_2 | ... Transform matrices are present only when
/// requested. left_inv and right_inv satisfy left_inv * A * right_inv = D.
struct SNFResult {
    std::size_t rank = 0;
    std::vector<Int> diagonal;        // the rank nonzero invariant factors, positive
    std::size_t n_rows = 0, n_cols = 0;
    SparseIntMatrix left, left_inv, right, right_inv;

    SparseIntMatrix diagonal_matrix() const {
        SparseIntMatrix d(n_rows, n_cols);
        for (std::size_t i = 0; i < rank; ++i) d.set(i, i, diagonal[i]);
        return d;
    }

    /// Integer solution of A x = b, if one exists. Requires both transforms.
    std::optional<std::vector<Int>> solve(const std::vector<Int>& b) const {
        std::vector<Int> ub = left_inv.apply(b);
        std::vector<Int> y(n_cols, Int(0));
        for (std::size_t i = 0; i < ub.size(); ++i) {
            if (i < rank) {
                if (ub[i] % diagonal[i] != 0) return std::nullopt;
                y[i] = ub[i] / diagonal[i];
            } else if (ub[i] != 0) {
                return std::nullopt;
            }
        }
        return right_inv.apply(y);
    }

    /// Basis of the integer kernel of A (columns). Requires the right transform.
    std::vector<std::vector<Int>> kernel_basis() const {
        std::vector<std::vector<Int>> basis;
        for (std::size_t j = rank; j < n_cols; ++j) {
            std::vector<Int> e(n_cols, Int(0));
            e[j] = 1;
            basis.push_back(right_inv.apply(e));
        }
        return basis;
    }
};

namespace detail {

/// Sparse integer elimination to Smith form. Rows are maps col -> value;
/// a per-column index of occupied rows keeps pivoting cheap.
class SmithEliminator {
public:
    SmithEliminator(const SparseIntMatrix& a, SNFOptions opts)
        : opts_(opts), n_rows_(a.n_rows()), n_cols_(a.n_cols()),
          rows_(a.n_rows()), cols_(a.n_cols()),
          row_done_(a.n_rows(), 0), col_done_(a.n_cols(), 0) {
        for (std::size_t r = 0; r < n_rows_; ++r)
            for (const auto& [c, v] : a.row(r)) {
                rows_[r][c] = v;
                cols_[c].insert(r);
            }
        if (opts_.with_left) {
            u_ = unit_rows(n_rows_);
            uinv_t_ = unit_rows(n_rows_);
        }
        if (opts_.with_right) {
            v_t_ = unit_rows(n_cols_);
            vinv_ = unit_rows(n_cols_);
        }
        for (std::size_t r = 0; r < n_rows_; ++r)
            if (!rows_[r].empty()) order_.insert({rows_[r].size(), r});
    }

    SNFResult run() {
        singleton_cascade();
        while (true) {
            auto pivot = find_pivot();
            if (!pivot) break;
            reduce_and_clear(pivot->first, pivot->second);
        }
        return finalize();
    }

private:
    using RowMap = std::map<std::size_t, Int>;

    SNFOptions opts_;
    std::size_t n_rows_, n_cols_;
    std::vector<RowMap> rows_;
    std::vector<std::unordered_set<std::size_t>> cols_;
    std::set<std::pair<std::size_t, std::size_t>> order_; // (nnz, row), nonempty rows
    std::vector<std::pair<std::size_t, std::size_t>> pivots_;
    std::vector<Int> pivot_values_;
    std::vector<char> row_done_, col_done_;
    std::vector<RowMap> u_, uinv_t_, v_t_, vinv_;

    static std::vector<RowMap> unit_rows(std::size_t n) {
        std::vector<RowMap> m(n);
        for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
        return m;
    }

    static void axpy(std::vector<RowMap>& m, std::size_t dst, std::size_t src, const Int& c) {
        for (const auto& [col, v] : m[src]) {
            auto [it, inserted] = m[dst].try_emplace(col, Int(0));
            it->second += c * v;
            if (it->second == 0) m[dst].erase(it);
        }
    }
    static void swap_rows_of(std::vector<RowMap>& m, std::size_t a, std::size_t b) {
        std::swap(m[a], m[b]);
    }
    static void negate_row_of(std::vector<RowMap>& m, std::size_t r) {
        for (auto& [c, v] : m[r]) v = -v;
    }

    void order_touch(std::size_t r, std::size_t old_nnz) {
        if (old_nnz) order_.erase({old_nnz, r});
        if (!rows_[r].empty()) order_.insert({rows_[r].size(), r});
    }

    // A[dst] += c * A[src]
    void row_axpy(std::size_t dst, std::size_t src, const Int& c) {
        std::size_t old = rows_[dst].size();
        for (const auto& [col, v] : rows_[src]) {
            auto [it, inserted] = rows_[dst].try_emplace(col, Int(0));
            it->second += c * v;
            if (it->second == 0) {
                rows_[dst].erase(it);
                cols_[col].erase(dst);
            } else if (inserted) {
                cols_[col].insert(dst);
            }
        }
        order_touch(dst, old);
        if (opts_.with_left) {
            axpy(u_, dst, src, c);
            axpy(uinv_t_, src, dst, -c);
        }
    }

    void row_negate(std::size_t r) {
        for (auto& [c, v] : rows_[r]) v = -v;
        if (opts_.with_left) {
            negate_row_of(u_, r);
            negate_row_of(uinv_t_, r);
        }
    }

    void row_swap(std::size_t a, std::size_t b) {
        if (a == b) return;
        std::size_t na = rows_[a].size(), nb = rows_[b].size();
        if (na) order_.erase({na, a});
        if (nb) order_.erase({nb, b});
        for (const auto& [c, v] : rows_[a]) cols_[c].erase(a);
        for (const auto& [c, v] : rows_[b]) cols_[c].erase(b);
        std::swap(rows_[a], rows_[b]);
        for (const auto& [c, v] : rows_[a]) cols_[c].insert(a);
        for (const auto& [c, v] : rows_[b]) cols_[c].insert(b);
        if (!rows_[a].empty()) order_.insert({rows_[a].size(), a});
        if (!rows_[b].empty()) order_.insert({rows_[b].size(), b});
        if (opts_.with_left) {
            swap_rows_of(u_, a, b);
            swap_rows_of(uinv_t_, a, b);
        }
    }

    // A[:,dst] += c * A[:,src]
    void col_axpy(std::size_t dst, std::size_t src, const Int& c) {
        std::vector<std::size_t> src_rows(cols_[src].begin(), cols_[src].end());
        for (std::size_t r : src_rows) {
            const Int& v = rows_[r][src];
            std::size_t old = rows_[r].size();
            auto [it, inserted] = rows_[r].try_emplace(dst, Int(0));
            it->second += c * v;
            if (it->second == 0) {
                rows_[r].erase(it);
                cols_[dst].erase(r);
            } else if (inserted) {
                cols_[dst].insert(r);
            }
            order_touch(r, old);
        }
        if (opts_.with_right) {
            axpy(v_t_, dst, src, c);
            axpy(vinv_, src, dst, -c);
        }
    }

    void singleton_cascade() {
        // rows or columns with a single +-1 entry pivot with zero fill
        std::vector<std::size_t> row_q, col_q;
        for (std::size_t r = 0; r < n_rows_; ++r)
            if (rows_[r].size() == 1) row_q.push_back(r);
        for (std::size_t c = 0; c < n_cols_; ++c)
            if (cols_[c].size() == 1) col_q.push_back(c);
        while (!row_q.empty() || !col_q.empty()) {
            if (!row_q.empty()) {
                std::size_t r = row_q.back();
                row_q.pop_back();
                if (is_done_row(r) || rows_[r].size() != 1) continue;
                auto [c, v] = *rows_[r].begin();
                if (v != 1 && v != -1) continue;
                // clearing the column: other rows lose their column-c entry
                std::vector<std::size_t> others(cols_[c].begin(), cols_[c].end());
                for (std::size_t r2 : others) {
                    if (r2 == r) continue;
                    row_axpy(r2, r, -rows_[r2][c] / v);
                    if (rows_[r2].size() == 1) row_q.push_back(r2);
                }
                commit_pivot(r, c);
                continue;
            }
            std::size_t c = col_q.back();
            col_q.pop_back();
            if (col_done_c(c) || cols_[c].size() != 1) continue;
            std::size_t r = *cols_[c].begin();
            const Int v = rows_[r][c];
            if (v != 1 && v != -1) continue;
            std::vector<std::pair<std::size_t, Int>> row_entries(rows_[r].begin(), rows_[r].end());
            for (const auto& [c2, w] : row_entries) {
                if (c2 == c) continue;
                col_axpy(c2, c, -w / v);
                if (cols_[c2].size() == 1) col_q.push_back(c2);
            }
            commit_pivot(r, c);
        }
    }

    bool is_done_row(std::size_t r) const {
        return r < row_done_.size() && row_done_[r];
    }
    bool col_done_c(std::size_t c) const {
        return c < col_done_.size() && col_done_[c];
    }

    void commit_pivot(std::size_t r, std::size_t c) {
        Int v = rows_[r].at(c);
        if (v < 0) {
            row_negate(r);
            v = -v;
        }
        if (rows_[r].size() != 1 || cols_[c].size() != 1)
            throw ModelError("smith: pivot committed with dirty row or column");
        pivots_.emplace_back(r, c);
        pivot_values_.push_back(v);
        order_.erase({1, r});
        row_done_[r] = 1;
        col_done_[c] = 1;
    }

    /// Smallest-nnz row holding a unit entry; otherwise the globally smallest
    /// nonzero entry.
    std::optional<std::pair<std::size_t, std::size_t>> find_pivot() {
        std::optional<std::pair<std::size_t, std::size_t>> fallback;
        Int best_abs(0);
        for (const auto& [nnz, r] : order_) {
            if (is_done_row(r)) continue;
            std::size_t best_col = n_cols_;
            std::size_t best_colsize = 0;
            for (const auto& [c, v] : rows_[r]) {
                if (col_done_c(c)) continue;
                Int a = v < 0 ? -v : v;
                if (a == 1) {
                    if (best_col == n_cols_ || cols_[c].size() < best_colsize) {
                        best_col = c;
                        best_colsize = cols_[c].size();
                    }
                } else if (fallback == std::nullopt || a < best_abs) {
                    best_abs = a;
                    fallback = {{r, c}};
                }
            }
            if (best_col != n_cols_) return {{r, best_col}};
        }
        return fallback;
    }

    /// Make the pivot divide its row and column, clear both, then (unless
    /// rank_only) make it divide every remaining entry.
    void reduce_and_clear(std::size_t pr, std::size_t pc) {
        while (true) {
            bool moved = false;
            // column reduction
            while (true) {
                Int p = rows_[pr].at(pc);
                std::size_t victim = n_rows_;
                for (std::size_t r : cols_[pc])
                    if (r != pr && !is_done_row(r)) {
                        victim = r;
                        break;
                    }
                if (victim == n_rows_) break;
                Int v = rows_[victim].at(pc);
                Int q = floor_div(v, p);
                row_axpy(victim, pr, -q);
                Int rem = v - q * p;
                if (rem != 0) {
                    pr = victim; // strictly smaller pivot
                    moved = true;
                }
            }
            // row reduction
            while (true) {
                Int p = rows_[pr].at(pc);
                std::size_t victim = n_cols_;
                for (const auto& [c, v] : rows_[pr])
                    if (c != pc && !col_done_c(c)) {
                        victim = c;
                        break;
                    }
                if (victim == n_cols_) break;
                Int v = rows_[pr].at(victim);
                Int q = floor_div(v, p);
                col_axpy(victim, pc, -q);
                Int rem = v - q * p;
                if (rem != 0) {
                    pc = victim;
                    moved = true;
                    break; // column may be dirty again
                }
            }
            if (!column_dirty(pr, pc) && !row_dirty(pr, pc)) {
                if (opts_.rank_only) break;
                // divisibility over the remaining active entries
                Int p = rows_[pr].at(pc);
                if (p == 1 || p == -1) break;
                std::size_t bad = n_rows_;
                for (const auto& [nnz, r] : order_) {
                    if (is_done_row(r) || r == pr) continue;
                    for (const auto& [c, v] : rows_[r])
                        if (!col_done_c(c) && v % p != 0) {
                            bad = r;
                            break;
                        }
                    if (bad != n_rows_) break;
                }
                if (bad == n_rows_) break;
                row_axpy(pr, bad, Int(1));
                continue;
            }
            (void)moved;
        }
        commit_pivot(pr, pc);
    }

    bool column_dirty(std::size_t pr, std::size_t pc) const {
        for (std::size_t r : cols_[pc])
            if (r != pr && !(r < row_done_.size() && row_done_[r])) return true;
        return false;
    }
    bool row_dirty(std::size_t pr, std::size_t pc) const {
        for (const auto& [c, v] : rows_[pr])
            if (c != pc && !(c < col_done_.size() && col_done_[c])) return true;
        return false;
    }

    static Int floor_div(const Int& a, const Int& b) {
        Int q = a / b;
        if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
        return q;
    }

    SNFResult finalize() {
        SNFResult res;
        res.n_rows = n_rows_;
        res.n_cols = n_cols_;
        res.rank = pivots_.size();

        // permute pivots to the leading diagonal; elimination never swapped
        // rows or columns, so pivot k currently sits at pivots_[k]
        std::vector<std::size_t> where_r(n_rows_), occ_r(n_rows_);
        std::vector<std::size_t> where_c(n_cols_), occ_c(n_cols_);
        for (std::size_t i = 0; i < n_rows_; ++i) where_r[i] = occ_r[i] = i;
        for (std::size_t i = 0; i < n_cols_; ++i) where_c[i] = occ_c[i] = i;

        auto swap_row_pos = [&](std::size_t pa, std::size_t pb) {
            if (pa == pb) return;
            if (opts_.with_left) {
                swap_rows_of(u_, pa, pb);
                swap_rows_of(uinv_t_, pa, pb);
            }
            std::size_t oa = occ_r[pa], ob = occ_r[pb];
            std::swap(occ_r[pa], occ_r[pb]);
            where_r[oa] = pb;
            where_r[ob] = pa;
        };
        auto swap_col_pos = [&](std::size_t pa, std::size_t pb) {
            if (pa == pb) return;
            if (opts_.with_right) {
                swap_rows_of(v_t_, pa, pb);
                swap_rows_of(vinv_, pa, pb);
            }
            std::size_t oa = occ_c[pa], ob = occ_c[pb];
            std::swap(occ_c[pa], occ_c[pb]);
            where_c[oa] = pb;
            where_c[ob] = pa;
        };

        // commit order already satisfies the divisibility chain: units first,
        // then each later pivot a multiple of its predecessors
        for (std::size_t k = 0; k < pivots_.size(); ++k) {
            swap_row_pos(where_r[pivots_[k].first], k);
            swap_col_pos(where_c[pivots_[k].second], k);
            res.diagonal.push_back(pivot_values_[k]);
        }

        if (opts_.with_left) {
            res.left_inv = to_matrix(u_, n_rows_, n_rows_);
            res.left = transpose_rows(uinv_t_, n_rows_, n_rows_);
        }
        if (opts_.with_right) {
            res.right_inv = transpose_rows(v_t_, n_cols_, n_cols_);
            res.right = to_matrix(vinv_, n_cols_, n_cols_);
        }
        return res;
    }

    static SparseIntMatrix to_matrix(const std::vector<RowMap>& rows, std::size_t nr,
                                     std::size_t nc) {
        SparseIntMatrix m(nr, nc);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (const auto& [c, v] : rows[r]) m.set(r, c, v);
        return m;
    }
    static SparseIntMatrix transpose_rows(const std::vector<RowMap>& rows, std::size_t nr,
                                          std::size_t nc) {
        SparseIntMatrix m(nr, nc);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (const auto& [c, v] : rows[r]) m.set(c, r, v);
        return m;
    }
};

} // namespace detail

inline SNFResult smith_normal_form(const SparseIntMatrix& a, SNFOptions opts = {}) {
    return detail::SmithEliminator(a, opts).run();
}

/// Rank of an integer matrix (exact).
inline std::size_t integer_rank(const SparseIntMatrix& a) {
    SNFOptions opts;
    opts.rank_only = true;
    return detail::SmithEliminator(a, opts).run().rank;
}

} // namespace suptop

#endif
