#ifndef SUPTOP_COVERING_HPP
#define SUPTOP_COVERING_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "suptop/cup.hpp"
#include "suptop/group_action.hpp"
#include "suptop/homology.hpp"
#include "suptop/simplicial_complex.hpp"

namespace suptop {

/// Chain map between cell complexes: each cell maps to a cell with a sign,
/// or degenerates to zero.
struct CellularMap {
    const CellComplex* src = nullptr;
    const CellComplex* dst = nullptr;
    std::vector<std::vector<std::optional<std::pair<std::size_t, int>>>> image;

    static CellularMap identity(const CellComplex& k) {
        CellularMap m;
        m.src = m.dst = &k;
        m.image.resize(k.dim() + 1);
        for (int d = 0; d <= k.dim(); ++d) {
            m.image[d].resize(k.n_cells(d));
            for (std::size_t i = 0; i < k.n_cells(d); ++i) m.image[d][i] = {{i, 1}};
        }
        return m;
    }

    static CellularMap from_simplicial(const SimplicialMap& f) {
        CellularMap m;
        m.src = &f.src()->chain_complex();
        m.dst = &f.dst()->chain_complex();
        m.image.resize(f.src()->dim() + 1);
        for (int d = 0; d <= f.src()->dim(); ++d) {
            m.image[d].resize(f.src()->n_simplices(d));
            for (std::size_t i = 0; i < f.src()->n_simplices(d); ++i)
                m.image[d][i] = f.chain_image(d, i);
        }
        return m;
    }

    std::vector<Int> pullback(int deg, const std::vector<Int>& alpha) const {
        if (deg > dst->dim() && !alpha.empty()) throw InputError("pullback: bad degree");
        std::vector<Int> out(src->n_cells(deg), Int(0));
        if (deg >= static_cast<int>(image.size())) return out;
        for (std::size_t i = 0; i < out.size(); ++i)
            if (image[deg][i]) out[i] = Int(image[deg][i]->second) * alpha[image[deg][i]->first];
        return out;
    }

    /// Chain image of a cell as a sparse chain on dst.
    std::map<std::size_t, Int> chain_of(int deg, std::size_t cell) const {
        std::map<std::size_t, Int> out;
        if (image[deg][cell]) out[image[deg][cell]->first] = image[deg][cell]->second;
        return out;
    }

    bool is_chain_map() const {
        for (int d = 1; d < static_cast<int>(image.size()); ++d) {
            for (std::size_t c = 0; c < image[d].size(); ++c) {
                std::map<std::size_t, Int> lhs; // f(boundary c)
                for (const auto& [f, eps] : src->boundary(d).row(c))
                    if (image[d - 1][f]) lhs[image[d - 1][f]->first] += Int(eps) * image[d - 1][f]->second;
                std::map<std::size_t, Int> rhs; // boundary f(c)
                if (image[d][c])
                    for (const auto& [f, eps] : dst->boundary(d).row(image[d][c]->first))
                        rhs[f] += Int(image[d][c]->second) * eps;
                for (auto& [k, v] : lhs)
                    if (v != (rhs.count(k) ? rhs[k] : Int(0))) return false;
                for (auto& [k, v] : rhs)
                    if (v != (lhs.count(k) ? lhs[k] : Int(0))) return false;
            }
        }
        return true;
    }
};

/// Finite cellular covering map: every base cell has exactly `degree`
/// preimages, each mapping isomorphically. Signs record the orientation
/// relabeling chosen at construction, so the chain-level projection
/// c -> sign(c) * p(c) and the transfer b -> sum of sign * lifts commute
/// with the boundary operators.
class CoveringMap {
public:
    CoveringMap(const CellComplex* total, const CellComplex* base,
                std::vector<std::vector<std::size_t>> assignment,
                std::vector<std::vector<int>> signs, int degree)
        : total_(total), base_(base), assign_(std::move(assignment)), sign_(std::move(signs)),
          degree_(degree) {
        validate();
    }

    /// Quotient projection as a covering (free action).
    static CoveringMap from_quotient(const CellComplex& total, const QuotientData& q) {
        return CoveringMap(&total, &q.complex, q.orbit_of, q.sign_to_rep,
                           static_cast<int>(q.group_order));
    }

    /// Coarsening map between two quotients of the same complex by nested
    /// groups (fine by a subgroup of coarse).
    static CoveringMap between_quotients(const QuotientData& fine, const QuotientData& coarse) {
        if (coarse.group_order % fine.group_order != 0)
            throw InputError("between_quotients: group orders not nested");
        const int dim = fine.complex.dim();
        std::vector<std::vector<std::size_t>> assign(dim + 1);
        std::vector<std::vector<int>> sgn(dim + 1);
        for (int d = 0; d <= dim; ++d) {
            const std::size_t n = fine.complex.n_cells(d);
            assign[d].resize(n);
            sgn[d].resize(n);
            for (std::size_t o = 0; o < n; ++o) {
                std::size_t rep = fine.rep_of[d][o];
                assign[d][o] = coarse.orbit_of[d][rep];
                sgn[d][o] = coarse.sign_to_rep[d][rep];
            }
        }
        return CoveringMap(&fine.complex, &coarse.complex, std::move(assign), std::move(sgn),
                           static_cast<int>(coarse.group_order / fine.group_order));
    }

    /// A simplicial map that happens to be a covering (signs from the
    /// sorted-image convention).
    static CoveringMap from_simplicial(const SimplicialMap& f, int degree) {
        const auto* src = f.src();
        std::vector<std::vector<std::size_t>> assign(src->dim() + 1);
        std::vector<std::vector<int>> sgn(src->dim() + 1);
        for (int d = 0; d <= src->dim(); ++d) {
            assign[d].resize(src->n_simplices(d));
            sgn[d].resize(src->n_simplices(d));
            for (std::size_t i = 0; i < src->n_simplices(d); ++i) {
                auto im = f.chain_image(d, i);
                if (!im) throw ModelError("covering map degenerates a cell");
                assign[d][i] = im->first;
                sgn[d][i] = im->second;
            }
        }
        return CoveringMap(&src->chain_complex(), &f.dst()->chain_complex(), std::move(assign),
                           std::move(sgn), degree);
    }

    const CellComplex& total() const { return *total_; }
    const CellComplex& base() const { return *base_; }
    int degree() const { return degree_; }
    std::size_t base_cell(int deg, std::size_t c) const { return assign_[deg][c]; }
    int cell_sign(int deg, std::size_t c) const { return sign_[deg][c]; }

    std::vector<std::vector<std::size_t>> fibers(int deg) const {
        std::vector<std::vector<std::size_t>> f(base_->n_cells(deg));
        for (std::size_t c = 0; c < total_->n_cells(deg); ++c) f[assign_[deg][c]].push_back(c);
        return f;
    }

    /// p*: cochains on the base to cochains on the total complex.
    std::vector<Int> pullback(int deg, const std::vector<Int>& alpha) const {
        if (alpha.size() != base_->n_cells(deg)) throw InputError("pullback: length mismatch");
        std::vector<Int> out(total_->n_cells(deg), Int(0));
        for (std::size_t c = 0; c < out.size(); ++c)
            out[c] = Int(sign_[deg][c]) * alpha[assign_[deg][c]];
        return out;
    }

    /// Transfer: value on a base cell is the signed sum over its fiber.
    /// Dual to the chain map b -> sum of oriented lifts; commutes with the
    /// coboundary.
    std::vector<Int> transfer(int deg, const std::vector<Int>& beta) const {
        if (beta.size() != total_->n_cells(deg)) throw InputError("transfer: length mismatch");
        std::vector<Int> out(base_->n_cells(deg), Int(0));
        for (std::size_t c = 0; c < beta.size(); ++c)
            out[assign_[deg][c]] += Int(sign_[deg][c]) * beta[c];
        return out;
    }

private:
    void validate() const {
        const int dim = total_->dim();
        if (dim != base_->dim() && total_->total_cells() != 0)
            throw ModelError("covering: dimension mismatch");
        if (static_cast<int>(assign_.size()) != dim + 1 ||
            static_cast<int>(sign_.size()) != dim + 1)
            throw ModelError("covering: assignment tables missing a degree");
        for (int d = 0; d <= dim; ++d) {
            if (assign_[d].size() != total_->n_cells(d))
                throw ModelError("covering: assignment size mismatch");
            std::vector<std::size_t> count(base_->n_cells(d), 0);
            for (std::size_t c = 0; c < assign_[d].size(); ++c) {
                if (assign_[d][c] >= base_->n_cells(d))
                    throw ModelError("covering: assignment out of range");
                if (sign_[d][c] != 1 && sign_[d][c] != -1)
                    throw ModelError("covering: cell sign must be a unit");
                ++count[assign_[d][c]];
            }
            for (std::size_t b = 0; b < count.size(); ++b)
                if (count[b] != static_cast<std::size_t>(degree_))
                    throw ModelError("covering: base cell " + std::to_string(b) + " in degree " +
                                     std::to_string(d) + " has " + std::to_string(count[b]) +
                                     " preimages, expected " + std::to_string(degree_));
        }
        // the signed projection is a chain map
        auto strip = [](std::map<std::size_t, Int>& m) {
            for (auto it = m.begin(); it != m.end();)
                it = (it->second == 0) ? m.erase(it) : std::next(it);
        };
        for (int d = 1; d <= dim; ++d) {
            for (std::size_t c = 0; c < total_->n_cells(d); ++c) {
                std::map<std::size_t, Int> lhs;
                for (const auto& [f, eps] : total_->boundary(d).row(c))
                    lhs[assign_[d - 1][f]] += Int(eps) * sign_[d - 1][f];
                std::map<std::size_t, Int> rhs;
                for (const auto& [f, eps] : base_->boundary(d).row(assign_[d][c]))
                    rhs[f] += Int(sign_[d][c]) * eps;
                strip(lhs);
                strip(rhs);
                if (lhs != rhs)
                    throw ModelError("covering: projection does not commute with the boundary");
            }
        }
    }

    const CellComplex* total_;
    const CellComplex* base_;
    std::vector<std::vector<std::size_t>> assign_;
    std::vector<std::vector<int>> sign_;
    int degree_;
};

// ----- induced maps of spans -------------------------------------------------

/// Span presentation of a multivalued cellular map X -> SP(Y): a covering
/// left leg over X and a cellular right leg into Y.
struct SpanMap {
    const CoveringMap* left = nullptr; // total over X
    const CellularMap* right = nullptr; // total -> Y

    /// Induced cohomology-level map on cochains: transfer after pullback.
    std::vector<Int> induced(int deg, const std::vector<Int>& alpha_on_y) const {
        return left->transfer(deg, right->pullback(deg, alpha_on_y));
    }

    /// Chain-level multivalued image of a cell of X (signed sum on Y).
    std::map<std::size_t, Int> chain_of(int deg, std::size_t x) const {
        std::map<std::size_t, Int> out;
        for (std::size_t c = 0; c < left->total().n_cells(deg); ++c) {
            if (left->base_cell(deg, c) != x) continue;
            if (right->image[deg][c])
                out[right->image[deg][c]->first] +=
                    Int(left->cell_sign(deg, c)) * right->image[deg][c]->second;
        }
        for (auto it = out.begin(); it != out.end();) {
            if (it->second == 0)
                it = out.erase(it);
            else
                ++it;
        }
        return out;
    }
};

struct VerifyReport {
    bool pass = true;
    std::vector<std::string> lines;
    std::string counterexample;

    void check(bool ok, const std::string& what) {
        lines.push_back(std::string(ok ? "pass" : "FAIL") + ": " + what);
        if (!ok && pass) {
            pass = false;
            counterexample = what;
        }
    }
};

/// Transfer then pullback multiplies by the covering degree; checked on the
/// full cohomology basis in every degree.
inline VerifyReport verify_transfer_identity(const CoveringMap& p) {
    VerifyReport rep;
    for (int d = 0; d <= p.base().dim(); ++d) {
        CohomologyBasis basis(p.base(), d);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            auto round = p.transfer(d, p.pullback(d, basis.generator(i)));
            std::vector<Int> scaled = basis.generator(i);
            for (auto& v : scaled) v *= p.degree();
            bool ok = basis.class_equal(round, scaled);
            rep.check(ok, "transfer∘pullback = deg·id on basis class " + std::to_string(i) +
                              " in degree " + std::to_string(d));
        }
    }
    return rep;
}

/// Cochain-level: transfer commutes with the coboundary on seeded
/// pseudo-random cochains.
inline VerifyReport verify_transfer_coboundary(const CoveringMap& p, int trials,
                                               unsigned long long seed) {
    VerifyReport rep;
    unsigned long long state = seed ? seed : 0x9e3779b97f4a7c15ULL;
    auto next = [&state]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };
    for (int t = 0; t < trials; ++t) {
        for (int d = 0; d < p.total().dim(); ++d) {
            std::vector<Int> beta(p.total().n_cells(d));
            for (auto& v : beta) v = static_cast<long long>(next() % 7) - 3;
            auto lhs = p.base().coboundary(d, p.transfer(d, beta));
            auto rhs = p.transfer(d + 1, p.total().coboundary(d, beta));
            rep.check(lhs == rhs, "transfer∘δ = δ∘transfer in degree " + std::to_string(d) +
                                      " (trial " + std::to_string(t) + ")");
        }
    }
    return rep;
}

/// Projection formula p_!(p^*(a) ⌣ b) = a ⌣ p_!(b) at class level, over all
/// pairs of basis classes. Needs simplicial hosts for the cup product.
inline VerifyReport verify_projection_formula(const SimplicialComplex& total,
                                              const SimplicialComplex& base,
                                              const CoveringMap& p) {
    if (&total.chain_complex() != &p.total() || &base.chain_complex() != &p.base())
        throw InputError("projection formula: hosts do not match the covering");
    VerifyReport rep;
    std::vector<CohomologyBasis> base_basis, total_basis;
    for (int d = 0; d <= base.dim(); ++d) base_basis.emplace_back(p.base(), d);
    for (int d = 0; d <= total.dim(); ++d) total_basis.emplace_back(p.total(), d);
    for (int da = 0; da <= base.dim(); ++da)
        for (int db = 0; da + db <= base.dim(); ++db) {
            for (std::size_t i = 0; i < base_basis[da].size(); ++i)
                for (std::size_t j = 0; j < total_basis[db].size(); ++j) {
                    const auto& alpha = base_basis[da].generator(i);
                    const auto& beta = total_basis[db].generator(j);
                    auto lhs = p.transfer(da + db,
                                          cup_cochain(total, da, p.pullback(da, alpha), db, beta));
                    auto rhs = cup_cochain(base, da, alpha, db, p.transfer(db, beta));
                    bool ok = base_basis[da + db].class_equal(lhs, rhs);
                    rep.check(ok, "projection formula deg (" + std::to_string(da) + "," +
                                      std::to_string(db) + ") classes (" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
                }
        }
    return rep;
}

/// Naturality square for span-presented multivalued maps: when
/// SP(h) ∘ f1 = f2 ∘ g at the chain level, the induced cohomology maps
/// satisfy f1* ∘ h* = g* ∘ f2*. A non-commuting square is reported as a
/// precondition failure, distinct from a conclusion failure.
inline VerifyReport verify_naturality(const SpanMap& f1, const SpanMap& f2, const CellularMap& g,
                                      const CellularMap& h) {
    VerifyReport rep;
    const CellComplex& x1 = f1.left->base();
    const CellComplex& y2 = *h.dst;
    // precondition: chain-level commutation
    for (int d = 0; d <= x1.dim(); ++d) {
        for (std::size_t c = 0; c < x1.n_cells(d); ++c) {
            std::map<std::size_t, Int> lhs; // SP(h)(f1(c))
            for (const auto& [y, m] : f1.chain_of(d, c))
                if (h.image[d][y]) lhs[h.image[d][y]->first] += m * h.image[d][y]->second;
            std::map<std::size_t, Int> rhs; // f2(g(c))
            if (g.image[d][c])
                for (const auto& [y, m] : f2.chain_of(d, g.image[d][c]->first))
                    rhs[y] += Int(g.image[d][c]->second) * m;
            for (auto it = lhs.begin(); it != lhs.end();)
                it = (it->second == 0) ? lhs.erase(it) : std::next(it);
            for (auto it = rhs.begin(); it != rhs.end();)
                it = (it->second == 0) ? rhs.erase(it) : std::next(it);
            if (lhs != rhs) {
                rep.pass = false;
                rep.counterexample = "precondition: square does not commute at the chain level "
                                     "(degree " +
                                     std::to_string(d) + ", cell " + std::to_string(c) + ")";
                rep.lines.push_back("FAIL: " + rep.counterexample);
                return rep;
            }
        }
    }
    rep.lines.push_back("pass: chain-level square commutes");
    // conclusion on a full basis of H*(Y2)
    for (int d = 0; d <= y2.dim(); ++d) {
        CohomologyBasis basis(y2, d);
        CohomologyBasis x1_basis(x1, d);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            auto via_h = f1.induced(d, h.pullback(d, basis.generator(i)));
            auto via_f2 = g.pullback(d, f2.induced(d, basis.generator(i)));
            rep.check(x1_basis.class_equal(via_h, via_f2),
                      "f1*∘h* = g*∘f2* on basis class " + std::to_string(i) + " in degree " +
                          std::to_string(d));
        }
    }
    return rep;
}

} // namespace suptop

#endif
