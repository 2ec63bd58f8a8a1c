#ifndef SUPTOP_HOMOLOGY_HPP
#define SUPTOP_HOMOLOGY_HPP

#include <numeric>
#include <optional>
#include <vector>

#include "suptop/cell_complex.hpp"
#include "suptop/smith.hpp"

namespace suptop {

struct HomologyGroup {
    long long betti = 0;
    std::vector<Int> torsion; // orders > 1, divisibility chain

    bool operator==(const HomologyGroup& o) const {
        return betti == o.betti && torsion == o.torsion;
    }
};

/// H_k(K; Z) via Smith normal form of the two adjacent boundary matrices.
inline HomologyGroup homology(const CellComplex& k, int deg) {
    HomologyGroup h;
    if (deg < 0 || deg > k.dim()) return h;
    std::size_t rank_in = 0;
    std::vector<Int> tors;
    if (deg + 1 <= k.dim()) {
        auto snf = smith_normal_form(k.boundary(deg + 1));
        rank_in = snf.rank;
        for (const auto& d : snf.diagonal)
            if (d > 1) tors.push_back(d);
    }
    std::size_t rank_out = (deg >= 1) ? integer_rank(k.boundary(deg)) : 0;
    h.betti = static_cast<long long>(k.n_cells(deg)) - rank_out - rank_in;
    h.torsion = std::move(tors);
    return h;
}

inline std::vector<long long> betti_numbers(const CellComplex& k) {
    std::vector<long long> b(k.dim() + 1, 0);
    std::vector<std::size_t> ranks(k.dim() + 2, 0);
    for (int d = 1; d <= k.dim(); ++d) ranks[d] = integer_rank(k.boundary(d));
    for (int d = 0; d <= k.dim(); ++d)
        b[d] = static_cast<long long>(k.n_cells(d)) - ranks[d] - ranks[d + 1];
    return b;
}

/// Integer cochain class on a host complex.
struct CohomologyClass {
    const CellComplex* host = nullptr;
    int degree = 0;
    std::vector<Int> cochain;
    bool relative = false;
};

/// Basis of H^k(K; Z) with integer coordinates: generators are cocycles,
/// orders are 0 for free generators and the torsion order otherwise. Class
/// membership and equality are decided through the Smith form data.
class CohomologyBasis {
public:
    CohomologyBasis() = default;

    CohomologyBasis(const CellComplex& k, int deg) : host_(&k), deg_(deg) {
        const std::size_t n = k.n_cells(deg);
        // delta^deg = transpose of boundary(deg+1): C^deg -> C^{deg+1}
        SparseIntMatrix delta = (deg + 1 <= k.dim()) ? k.boundary(deg + 1)
                                                     : SparseIntMatrix(0, n);
        SNFOptions wopts;
        wopts.with_right = true;
        auto snf_delta = smith_normal_form(delta, wopts);
        auto ker = snf_delta.kernel_basis(); // cocycle lattice basis, size z
        const std::size_t z = ker.size();
        kernel_ = SparseIntMatrix(n, z);
        for (std::size_t j = 0; j < z; ++j)
            for (std::size_t i = 0; i < n; ++i)
                if (ker[j][i] != 0) kernel_.set(i, j, ker[j][i]);
        SNFOptions full;
        full.with_left = full.with_right = true;
        kernel_snf_ = smith_normal_form(kernel_, full);
        // the kernel is saturated: its invariant factors are all 1
        for (const auto& d : kernel_snf_.diagonal)
            if (d != 1) throw ModelError("cohomology: kernel lattice not saturated");

        // coboundary image, in kernel coordinates
        const std::size_t m = (deg >= 1) ? k.n_cells(deg - 1) : 0;
        SparseIntMatrix x(z, m);
        if (m) {
            const auto& bnd = k.boundary(deg); // rows: deg-cells, cols: (deg-1)-cells
            for (std::size_t j = 0; j < m; ++j) {
                // delta^{deg-1}(e_j) as a deg-cochain
                std::vector<Int> img(n, Int(0));
                for (std::size_t c = 0; c < n; ++c)
                    img[c] = bnd.at(c, j);
                auto y = kernel_snf_.solve(img);
                if (!y) throw ModelError("cohomology: coboundary outside cocycle lattice");
                for (std::size_t i = 0; i < z; ++i)
                    if ((*y)[i] != 0) x.set(i, j, (*y)[i]);
            }
        }
        SNFOptions xopts;
        xopts.with_left = true;
        x_snf_ = smith_normal_form(x, xopts);

        // generators: columns of kernel * left(x) for slots with order != 1
        for (std::size_t i = 0; i < z; ++i) {
            Int order = (i < x_snf_.rank) ? x_snf_.diagonal[i] : Int(0);
            if (order == 1) continue;
            std::vector<Int> e(z, Int(0));
            e[i] = 1;
            auto col = x_snf_.left.apply(e); // column i of left
            slots_.push_back(i);
            orders_.push_back(order);
            generators_.push_back(kernel_.apply(col));
        }
    }

    const CellComplex& host() const { return *host_; }
    int degree() const { return deg_; }
    std::size_t size() const { return orders_.size(); }
    const Int& order(std::size_t i) const { return orders_[i]; }
    const std::vector<Int>& orders() const { return orders_; }
    const std::vector<Int>& generator(std::size_t i) const { return generators_[i]; }

    HomologyGroup group() const {
        HomologyGroup h;
        for (const auto& o : orders_)
            if (o == 0)
                ++h.betti;
            else
                h.torsion.push_back(o);
        std::sort(h.torsion.begin(), h.torsion.end());
        return h;
    }

    bool is_cocycle(const std::vector<Int>& v) const { return host_->is_cocycle(deg_, v); }

    /// Coordinates in the generator basis, torsion coordinates reduced into
    /// [0, order). Throws if `v` is not a cocycle.
    std::vector<Int> coords(const std::vector<Int>& v) const {
        auto y = kernel_snf_.solve(v);
        if (!y) throw InputError("coords: not a cocycle");
        auto w = x_snf_.left_inv.apply(*y);
        std::vector<Int> out(slots_.size(), Int(0));
        for (std::size_t i = 0; i < slots_.size(); ++i) {
            Int c = w[slots_[i]];
            if (orders_[i] != 0) {
                c %= orders_[i];
                if (c < 0) c += orders_[i];
            }
            out[i] = c;
        }
        return out;
    }

    bool is_coboundary(const std::vector<Int>& v) const {
        for (const auto& c : coords(v))
            if (c != 0) return false;
        return true;
    }

    bool class_equal(const std::vector<Int>& a, const std::vector<Int>& b) const {
        return coords(a) == coords(b);
    }

    /// Cochain representative with the given coordinates.
    std::vector<Int> from_coords(const std::vector<Int>& c) const {
        std::vector<Int> v(host_->n_cells(deg_), Int(0));
        for (std::size_t i = 0; i < c.size() && i < generators_.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j) v[j] += c[i] * generators_[i][j];
        return v;
    }

private:
    const CellComplex* host_ = nullptr;
    int deg_ = 0;
    SparseIntMatrix kernel_; // n x z, columns a basis of the cocycle lattice
    SNFResult kernel_snf_;
    SNFResult x_snf_;
    std::vector<std::size_t> slots_;
    std::vector<Int> orders_;                  // 0 = free
    std::vector<std::vector<Int>> generators_; // cocycles
};

/// H^k as an abstract group (basis machinery without keeping it).
inline HomologyGroup cohomology_group(const CellComplex& k, int deg) {
    if (deg < 0 || deg > k.dim()) return {};
    return CohomologyBasis(k, deg).group();
}

// ----- relative pairs --------------------------------------------------------

/// The pair complex (K, A): cells of K outside A, boundary entries into A
/// dropped. Cochains on it are exactly the cochains of K vanishing on A.
struct RelativePair {
    CellComplex complex;
    const CellComplex* ambient = nullptr;
    std::vector<std::vector<std::size_t>> to_ambient;  // pair cell -> ambient cell
    std::vector<std::vector<long long>> from_ambient;  // ambient cell -> pair cell or -1

    /// Restrict an ambient cochain vanishing on A (unchecked) to the pair.
    std::vector<Int> restrict_cochain(int deg, const std::vector<Int>& v) const {
        std::vector<Int> out(to_ambient[deg].size(), Int(0));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = v[to_ambient[deg][i]];
        return out;
    }
    /// View a pair cochain as an ambient cochain (zero on A).
    std::vector<Int> extend_cochain(int deg, const std::vector<Int>& v) const {
        std::vector<Int> out(ambient->n_cells(deg), Int(0));
        for (std::size_t i = 0; i < v.size(); ++i) out[to_ambient[deg][i]] = v[i];
        return out;
    }
};

inline RelativePair relative_pair(const CellComplex& k, const std::vector<std::vector<char>>& in_a) {
    RelativePair out;
    out.ambient = &k;
    const int dim = k.dim();
    out.to_ambient.resize(dim + 1);
    out.from_ambient.resize(dim + 1);
    std::vector<std::size_t> counts(dim + 1, 0);
    for (int d = 0; d <= dim; ++d) {
        out.from_ambient[d].assign(k.n_cells(d), -1);
        for (std::size_t i = 0; i < k.n_cells(d); ++i) {
            bool in = d < static_cast<int>(in_a.size()) &&
                      i < in_a[d].size() && in_a[d][i];
            if (!in) {
                out.from_ambient[d][i] = static_cast<long long>(out.to_ambient[d].size());
                out.to_ambient[d].push_back(i);
            }
        }
        counts[d] = out.to_ambient[d].size();
    }
    std::vector<SparseIntMatrix> bnd(dim + 1);
    for (int d = 1; d <= dim; ++d) {
        bnd[d] = SparseIntMatrix(counts[d], counts[d - 1]);
        const auto& full = k.boundary(d);
        for (std::size_t i = 0; i < counts[d]; ++i)
            for (const auto& [f, v] : full.row(out.to_ambient[d][i])) {
                long long fi = out.from_ambient[d - 1][f];
                if (fi >= 0) bnd[d].add(i, static_cast<std::size_t>(fi), v);
            }
    }
    out.complex = CellComplex(counts, std::move(bnd));
    return out;
}

// ----- fast degree-0/1 paths (no Smith form) ---------------------------------

/// Connected components of the 0/1-skeleton: component id per 0-cell.
/// Requires every 1-cell boundary to have at most two entries (true for
/// every complex built here).
struct SkeletonGraph {
    std::vector<std::size_t> component; // per 0-cell
    std::size_t n_components = 0;

    explicit SkeletonGraph(const CellComplex& k) {
        const std::size_t n0 = k.n_cells(0);
        parent_.resize(n0);
        std::iota(parent_.begin(), parent_.end(), 0);
        if (k.dim() >= 1) {
            const auto& b = k.boundary(1);
            for (std::size_t e = 0; e < b.n_rows(); ++e) {
                const auto& row = b.row(e);
                if (row.size() == 2) unite(row[0].first, row[1].first);
            }
        }
        component.assign(n0, 0);
        std::vector<long long> remap(n0, -1);
        for (std::size_t i = 0; i < n0; ++i) {
            std::size_t r = find(i);
            if (remap[r] < 0) remap[r] = static_cast<long long>(n_components++);
            component[i] = static_cast<std::size_t>(remap[r]);
        }
    }

private:
    std::vector<std::size_t> parent_;
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }
};

inline std::vector<Int> unit_cochain(const CellComplex& k) {
    return std::vector<Int>(k.n_cells(0), Int(1));
}

/// Degree-0 classes are equal iff the cochains agree (no (-1)-cochains).
inline bool h0_class_equal(const std::vector<Int>& a, const std::vector<Int>& b) { return a == b; }

/// Exactness of a degree-1 cochain by integrating a potential over the
/// 1-skeleton; exact over Z iff the integration is consistent. Requires
/// every 1-cell boundary to be a difference of two distinct 0-cells (the
/// shape of every configuration-model complex); throws otherwise.
inline bool h1_is_exact(const CellComplex& k, const std::vector<Int>& w) {
    if (k.dim() < 1) return true;
    const std::size_t n0 = k.n_cells(0);
    const auto& b = k.boundary(1);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n0); // (edge, other end)
    for (std::size_t e = 0; e < b.n_rows(); ++e) {
        const auto& row = b.row(e);
        if (row.size() != 2 || (row[0].second != 1 && row[0].second != -1) ||
            (row[1].second != 1 && row[1].second != -1) || row[0].second == row[1].second)
            throw ModelError("h1_is_exact: 1-cell boundary is not a vertex difference");
        adj[row[0].first].push_back({e, row[1].first});
        adj[row[1].first].push_back({e, row[0].first});
    }
    std::vector<char> seen(n0, 0);
    std::vector<Int> pot(n0, Int(0));
    std::vector<std::size_t> stack;
    for (std::size_t s = 0; s < n0; ++s) {
        if (seen[s]) continue;
        seen[s] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            for (auto [e, v] : adj[u]) {
                if (seen[v]) continue;
                const auto& row = b.row(e);
                Int known(0), coeff_v(0);
                for (const auto& [c, sgn] : row) {
                    if (c == v)
                        coeff_v = sgn;
                    else
                        known += sgn * pot[c];
                }
                pot[v] = (coeff_v == 1) ? (w[e] - known) : (known - w[e]);
                seen[v] = 1;
                stack.push_back(v);
            }
        }
    }
    // verify every edge equation against the integrated potential
    for (std::size_t e = 0; e < b.n_rows(); ++e) {
        Int acc(0);
        for (const auto& [c, sgn] : b.row(e)) acc += sgn * pot[c];
        if (acc != w[e]) return false;
    }
    return true;
}

} // namespace suptop

#endif
