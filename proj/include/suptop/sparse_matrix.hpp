#ifndef SUPTOP_SPARSE_MATRIX_HPP
#define SUPTOP_SPARSE_MATRIX_HPP

#include <algorithm>
#include <initializer_list>
#include <utility>
#include <vector>

#include "suptop/errors.hpp"
#include "suptop/integers.hpp"

namespace suptop {

/// Row-major sparse matrix over the integers. Rows hold (col, value) pairs
/// sorted by column; zero values are never stored.
class SparseIntMatrix {
public:
    using Entry = std::pair<std::size_t, Int>;
    using Row = std::vector<Entry>;

    SparseIntMatrix() = default;
    SparseIntMatrix(std::size_t n_rows, std::size_t n_cols)
        : n_rows_(n_rows), n_cols_(n_cols), rows_(n_rows) {}

    SparseIntMatrix(std::size_t n_rows, std::size_t n_cols,
                    std::initializer_list<std::initializer_list<long long>> dense)
        : SparseIntMatrix(n_rows, n_cols) {
        std::size_t r = 0;
        for (const auto& row : dense) {
            std::size_t c = 0;
            for (long long v : row) {
                if (v) add(r, c, v);
                ++c;
            }
            ++r;
        }
    }

    static SparseIntMatrix identity(std::size_t n) {
        SparseIntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.rows_[i].emplace_back(i, 1);
        return m;
    }

    std::size_t n_rows() const { return n_rows_; }
    std::size_t n_cols() const { return n_cols_; }

    std::size_t nnz() const {
        std::size_t s = 0;
        for (const auto& r : rows_) s += r.size();
        return s;
    }

    const Row& row(std::size_t r) const { return rows_[r]; }

    Int at(std::size_t r, std::size_t c) const {
        const Row& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const Entry& e, std::size_t col) { return e.first < col; });
        return (it != row.end() && it->first == c) ? it->second : Int(0);
    }

    void add(std::size_t r, std::size_t c, Int v) {
        if (v == 0) return;
        Row& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const Entry& e, std::size_t col) { return e.first < col; });
        if (it != row.end() && it->first == c) {
            it->second += v;
            if (it->second == 0) row.erase(it);
        } else {
            row.insert(it, {c, std::move(v)});
        }
    }

    void set(std::size_t r, std::size_t c, Int v) {
        Row& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const Entry& e, std::size_t col) { return e.first < col; });
        if (it != row.end() && it->first == c) {
            if (v == 0)
                row.erase(it);
            else
                it->second = std::move(v);
        } else if (v != 0) {
            row.insert(it, {c, std::move(v)});
        }
    }

    bool is_zero() const {
        for (const auto& r : rows_)
            if (!r.empty()) return false;
        return true;
    }

    SparseIntMatrix transpose() const {
        SparseIntMatrix t(n_cols_, n_rows_);
        std::vector<std::size_t> counts(n_cols_, 0);
        for (const auto& r : rows_)
            for (const auto& [c, v] : r) ++counts[c];
        for (std::size_t c = 0; c < n_cols_; ++c) t.rows_[c].reserve(counts[c]);
        for (std::size_t r = 0; r < n_rows_; ++r)
            for (const auto& [c, v] : rows_[r]) t.rows_[c].emplace_back(r, v);
        return t;
    }

    SparseIntMatrix operator*(const SparseIntMatrix& other) const {
        if (n_cols_ != other.n_rows_) throw InputError("matrix product: shape mismatch");
        SparseIntMatrix out(n_rows_, other.n_cols_);
        std::vector<Int> acc(other.n_cols_, Int(0));
        std::vector<std::size_t> touched;
        for (std::size_t r = 0; r < n_rows_; ++r) {
            touched.clear();
            for (const auto& [k, v] : rows_[r])
                for (const auto& [c, w] : other.rows_[k]) {
                    if (acc[c] == 0) touched.push_back(c);
                    acc[c] += v * w;
                }
            std::sort(touched.begin(), touched.end());
            for (std::size_t c : touched) {
                if (acc[c] != 0) out.rows_[r].emplace_back(c, acc[c]);
                acc[c] = 0;
            }
        }
        return out;
    }

    friend SparseIntMatrix operator-(const SparseIntMatrix& a, const SparseIntMatrix& b) {
        if (a.n_rows_ != b.n_rows_ || a.n_cols_ != b.n_cols_)
            throw InputError("matrix difference: shape mismatch");
        SparseIntMatrix out = a;
        for (std::size_t r = 0; r < b.n_rows_; ++r)
            for (const auto& [c, v] : b.rows_[r]) out.add(r, c, -v);
        return out;
    }

    bool operator==(const SparseIntMatrix& other) const {
        return n_rows_ == other.n_rows_ && n_cols_ == other.n_cols_ && rows_ == other.rows_;
    }

    /// M * x for a dense vector x.
    std::vector<Int> apply(const std::vector<Int>& x) const {
        if (x.size() != n_cols_) throw InputError("apply: vector length mismatch");
        std::vector<Int> out(n_rows_, Int(0));
        for (std::size_t r = 0; r < n_rows_; ++r)
            for (const auto& [c, v] : rows_[r]) out[r] += v * x[c];
        return out;
    }

    /// x^T * M for a dense vector x (i.e. M^T x without materializing M^T).
    std::vector<Int> apply_transpose(const std::vector<Int>& x) const {
        if (x.size() != n_rows_) throw InputError("apply_transpose: vector length mismatch");
        std::vector<Int> out(n_cols_, Int(0));
        for (std::size_t r = 0; r < n_rows_; ++r) {
            if (x[r] == 0) continue;
            for (const auto& [c, v] : rows_[r]) out[c] += v * x[r];
        }
        return out;
    }

private:
    std::size_t n_rows_ = 0, n_cols_ = 0;
    std::vector<Row> rows_;
};

} // namespace suptop

#endif
