#ifndef SUPTOP_THOM_HPP
#define SUPTOP_THOM_HPP

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "suptop/covering.hpp"
#include "suptop/cup.hpp"
#include "suptop/homology.hpp"
#include "suptop/simplicial_complex.hpp"

namespace suptop {

/// Discrete oriented disk/sphere bundle pair: a simplicial total pair (D, S)
/// over a simplicial base, with a per-vertex fiber orientation certificate
/// (the fiber generator as a relative k-chain). Fiber orientations must be
/// consistent along base edges; consistency is established by sign
/// propagation at construction and verified per edge.
struct BundlePair {
    std::shared_ptr<SimplicialComplex> disk;
    std::shared_ptr<SimplicialComplex> base;
    std::shared_ptr<SimplicialMap> projection; // disk -> base
    std::vector<std::vector<char>> sphere_mask; // simplices of D lying in S
    int rank = 1;
    /// fiber_chain[i]: generator of H_k of the fiber pair over base vertex
    /// base->vertices()[i], as a relative chain on ambient k-cells of D
    std::vector<std::map<std::size_t, Int>> fiber_chain;
    std::shared_ptr<RelativePair> pair; // (D, S)

    std::size_t base_vertex_pos(int v) const {
        const auto& vs = base->vertices();
        auto it = std::lower_bound(vs.begin(), vs.end(), v);
        if (it == vs.end() || *it != v) throw InputError("bundle: unknown base vertex");
        return static_cast<std::size_t>(it - vs.begin());
    }

    /// Pair with a relative k-cochain (given on ambient cells of D).
    Int pair_with_fiber(std::size_t vertex_pos, const std::vector<Int>& ambient_cochain) const {
        Int acc(0);
        for (const auto& [cell, coeff] : fiber_chain[vertex_pos]) acc += coeff * ambient_cochain[cell];
        return acc;
    }
};

namespace detail {

/// Subcomplex of `k` spanned by the simplices selected by `keep`
/// (automatically face-closed), plus the selected-simplex lists.
inline SimplicialComplex select_subcomplex(const SimplicialComplex& k,
                                           const std::vector<std::vector<char>>& keep) {
    std::vector<std::vector<int>> tops;
    for (int d = 0; d <= k.dim(); ++d)
        for (std::size_t i = 0; i < k.n_simplices(d); ++i)
            if (d < static_cast<int>(keep.size()) && keep[d][i]) tops.push_back(k.simplex(d, i));
    return SimplicialComplex::from_top_simplices(tops);
}

/// Fiber of the bundle over the closed span of the given base vertex set:
/// simplices of D whose projected vertex set lies inside it.
inline std::vector<std::vector<char>> fiber_mask(const BundlePair& b,
                                                 const std::vector<int>& base_verts) {
    std::vector<std::vector<char>> mask(b.disk->dim() + 1);
    for (int d = 0; d <= b.disk->dim(); ++d) {
        mask[d].assign(b.disk->n_simplices(d), 0);
        for (std::size_t i = 0; i < b.disk->n_simplices(d); ++i) {
            bool inside = true;
            for (int v : b.disk->simplex(d, i)) {
                int bv = b.projection->image_vertex(v);
                if (std::find(base_verts.begin(), base_verts.end(), bv) == base_verts.end()) {
                    inside = false;
                    break;
                }
            }
            if (inside) mask[d][i] = 1;
        }
    }
    return mask;
}

} // namespace detail

/// Solve for a relative k-cocycle with prescribed fiber pairings. Returns
/// the ambient cochain (zero on S), or throws when no solution exists.
inline std::vector<Int> thom_class(const BundlePair& b) {
    const auto& pc = b.pair->complex;
    const int k = b.rank;
    const std::size_t n = pc.n_cells(k);
    const std::size_t m = pc.n_cells(k + 1);
    const std::size_t nv = b.fiber_chain.size();
    // rows: relative coboundary (one per (k+1)-cell) + one normalization per
    // base vertex
    SparseIntMatrix a(m + nv, n);
    for (std::size_t c = 0; c < m; ++c)
        for (const auto& [f, eps] : pc.boundary(k + 1).row(c)) a.add(c, f, eps);
    for (std::size_t v = 0; v < nv; ++v)
        for (const auto& [cell, coeff] : b.fiber_chain[v]) {
            long long pcell = b.pair->from_ambient[k][cell];
            if (pcell < 0) throw ModelError("thom: fiber chain touches the sphere part");
            a.add(m + v, static_cast<std::size_t>(pcell), coeff);
        }
    std::vector<Int> rhs(m + nv, Int(0));
    for (std::size_t v = 0; v < nv; ++v) rhs[m + v] = 1;
    SNFOptions opts;
    opts.with_left = opts.with_right = true;
    auto snf = smith_normal_form(a, opts);
    auto x = snf.solve(rhs);
    if (!x)
        throw ModelError("thom: no relative cocycle restricts to every fiber orientation "
                         "(non-orientable or inadequate model)");
    return b.pair->extend_cochain(k, *x);
}

/// The Thom class is unique up to coboundary given the fiber orientations:
/// every relative k-class pairing to zero with all fibers must vanish.
inline bool thom_class_unique(const BundlePair& b) {
    CohomologyBasis basis(b.pair->complex, b.rank);
    // torsion classes pair to zero with every fiber chain, so uniqueness
    // requires a torsion-free H^k
    std::vector<std::size_t> free_slots;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (basis.order(i) != 0) return false;
        free_slots.push_back(i);
    }
    SparseIntMatrix pairing(b.fiber_chain.size(), free_slots.size());
    for (std::size_t v = 0; v < b.fiber_chain.size(); ++v)
        for (std::size_t j = 0; j < free_slots.size(); ++j) {
            auto ambient = b.pair->extend_cochain(b.rank, basis.generator(free_slots[j]));
            pairing.add(v, j, b.pair_with_fiber(v, ambient));
        }
    return integer_rank(pairing) == free_slots.size();
}

/// Thom map: a class on the base goes to pullback-cup-Thom-class, a relative
/// class of degree deg + rank on the pair.
inline CohomologyClass thom_iso(const BundlePair& b, const std::vector<Int>& u_ambient, int deg,
                                const std::vector<Int>& alpha) {
    auto pulled = b.projection->pullback(deg, alpha);
    auto cupped = cup_cochain(*b.disk, deg, pulled, b.rank, u_ambient);
    CohomologyClass out;
    out.host = &b.pair->complex;
    out.degree = deg + b.rank;
    out.relative = true;
    out.cochain = b.pair->restrict_cochain(deg + b.rank, cupped);
    return out;
}

/// Per-edge orientation consistency: over each base edge, the fiber-pair
/// generator extends across the edge and restricts to both vertex
/// certificates with sign +1.
inline VerifyReport verify_fiber_orientations(const BundlePair& b) {
    VerifyReport rep;
    const int k = b.rank;
    for (std::size_t e = 0; e < b.base->n_simplices(1); ++e) {
        const auto& edge = b.base->simplex(1, e);
        auto mask = detail::fiber_mask(b, edge);
        auto sub = detail::select_subcomplex(*b.disk, mask);
        // sphere part within the slab
        std::vector<std::vector<char>> s_mask(sub.dim() + 1);
        for (int d = 0; d <= sub.dim(); ++d) {
            s_mask[d].assign(sub.n_simplices(d), 0);
            for (std::size_t i = 0; i < sub.n_simplices(d); ++i) {
                auto amb = b.disk->index_of(sub.simplex(d, i));
                if (b.sphere_mask[d][*amb]) s_mask[d][i] = 1;
            }
        }
        auto slab = relative_pair(sub.chain_complex(), s_mask);
        // fiber chains of the two endpoints inside the slab
        auto chain_in_slab = [&](std::size_t vpos) {
            std::map<std::size_t, Int> out;
            for (const auto& [cell, coeff] : b.fiber_chain[vpos]) {
                auto sidx = sub.index_of(b.disk->simplex(k, cell));
                if (!sidx) throw ModelError("thom: fiber chain escapes its edge slab");
                long long p = slab.from_ambient[k][*sidx];
                if (p < 0) throw ModelError("thom: fiber chain touches the sphere part");
                out[static_cast<std::size_t>(p)] = coeff;
            }
            return out;
        };
        auto fa = chain_in_slab(b.base_vertex_pos(edge[0]));
        auto fb = chain_in_slab(b.base_vertex_pos(edge[1]));
        // solve: relative cocycle on the slab pairing +1 with fiber a
        const std::size_t n = slab.complex.n_cells(k);
        const std::size_t m = slab.complex.n_cells(k + 1);
        SparseIntMatrix a(m + 1, n);
        for (std::size_t c = 0; c < m; ++c)
            for (const auto& [f, eps] : slab.complex.boundary(k + 1).row(c)) a.add(c, f, eps);
        for (const auto& [cell, coeff] : fa) a.add(m, cell, coeff);
        std::vector<Int> rhs(m + 1, Int(0));
        rhs[m] = 1;
        SNFOptions opts;
        opts.with_left = opts.with_right = true;
        auto sol = smith_normal_form(a, opts).solve(rhs);
        if (!sol) {
            rep.check(false, "edge slab has no relative cocycle hitting the fiber generator");
            continue;
        }
        Int val(0);
        for (const auto& [cell, coeff] : fb) val += coeff * (*sol)[cell];
        rep.check(val == 1, "fiber orientations agree across base edge " + std::to_string(e) +
                                " (pairing " + val.str() + ")");
    }
    return rep;
}

/// Structural invariants of a bundle pair: every vertex fiber pair has
/// H^* = Z concentrated in degree `rank`, with the certificate pairing to 1
/// against some cocycle; the sphere part covers the base.
inline VerifyReport verify_bundle_pair(const BundlePair& b) {
    VerifyReport rep;
    const auto& verts = b.base->vertices();
    for (std::size_t vp = 0; vp < verts.size(); ++vp) {
        auto mask = detail::fiber_mask(b, {verts[vp]});
        auto fiber = detail::select_subcomplex(*b.disk, mask);
        std::vector<std::vector<char>> s_mask(fiber.dim() + 1);
        bool sphere_nonempty = false;
        for (int d = 0; d <= fiber.dim(); ++d) {
            s_mask[d].assign(fiber.n_simplices(d), 0);
            for (std::size_t i = 0; i < fiber.n_simplices(d); ++i) {
                auto amb = b.disk->index_of(fiber.simplex(d, i));
                if (b.sphere_mask[d][*amb]) {
                    s_mask[d][i] = 1;
                    sphere_nonempty = true;
                }
            }
        }
        rep.check(sphere_nonempty, "sphere part lies over base vertex " + std::to_string(vp));
        auto fp = relative_pair(fiber.chain_complex(), s_mask);
        for (int d = 0; d <= fp.complex.dim(); ++d) {
            auto g = cohomology_group(fp.complex, d);
            HomologyGroup expect{d == b.rank ? 1 : 0, {}};
            rep.check(g == expect, "fiber pair over vertex " + std::to_string(vp) +
                                       " has H^" + std::to_string(d) + " = " +
                                       (d == b.rank ? "Z" : "0"));
        }
    }
    auto orient = verify_fiber_orientations(b);
    rep.lines.insert(rep.lines.end(), orient.lines.begin(), orient.lines.end());
    if (!orient.pass && rep.pass) {
        rep.pass = false;
        rep.counterexample = orient.counterexample;
    }
    return rep;
}

// ----- builders ----------------------------------------------------------------

/// Trivial rank-1 bundle: D = base x interval, S = base x endpoints, fibers
/// oriented upward.
inline BundlePair trivial_line_bundle(const SimplicialComplex& base,
                                      const std::map<int, int>* base_key = nullptr) {
    BundlePair b;
    b.base = std::make_shared<SimplicialComplex>(base);
    auto interval = SimplicialComplex::from_top_simplices({{0, 1}});
    auto prod = simplicial_product(*b.base, interval, base_key);
    b.disk = std::make_shared<SimplicialComplex>(prod.complex);
    b.rank = 1;
    std::map<int, int> proj;
    for (std::size_t id = 0; id < prod.vertex_pair.size(); ++id)
        proj[static_cast<int>(id)] = prod.vertex_pair[id].first;
    b.projection = std::make_shared<SimplicialMap>(b.disk.get(), b.base.get(), proj);
    // sphere part: all product vertices at one interval end
    b.sphere_mask.resize(b.disk->dim() + 1);
    for (int d = 0; d <= b.disk->dim(); ++d) {
        b.sphere_mask[d].assign(b.disk->n_simplices(d), 0);
        for (std::size_t i = 0; i < b.disk->n_simplices(d); ++i) {
            bool all0 = true, all1 = true;
            for (int v : b.disk->simplex(d, i)) {
                (prod.vertex_pair[v].second == 0 ? all1 : all0) = false;
            }
            if (all0 || all1) b.sphere_mask[d][i] = 1;
        }
    }
    b.pair = std::make_shared<RelativePair>(relative_pair(b.disk->chain_complex(), b.sphere_mask));
    // fiber generators: the vertical edge over each base vertex, upward
    for (int v : b.base->vertices()) {
        std::vector<int> edge{prod.vertex_id.at({v, 0}), prod.vertex_id.at({v, 1})};
        int sign = edge[0] < edge[1] ? 1 : -1;
        std::sort(edge.begin(), edge.end());
        auto idx = b.disk->index_of(edge);
        std::map<std::size_t, Int> chain;
        chain[*idx] = sign;
        b.fiber_chain.push_back(std::move(chain));
    }
    return b;
}

/// Pullback of a bundle pair along a covering of the base, with the covering
/// of total pairs. The pullback total complex is the fiber product: vertices
/// are compatible pairs, simplices the graphs of local lifts.
struct PulledBackBundle {
    BundlePair bundle;
    std::shared_ptr<SimplicialMap> disk_cover_map; // new disk -> old disk
    int degree = 1;

    /// Covering of pair complexes (restricting the disk covering).
    CoveringMap pair_cover(const BundlePair& downstairs) const {
        auto full = CoveringMap::from_simplicial(*disk_cover_map, degree);
        const auto& up = *bundle.pair;
        const auto& down = *downstairs.pair;
        std::vector<std::vector<std::size_t>> assign(up.complex.dim() + 1);
        std::vector<std::vector<int>> sgn(up.complex.dim() + 1);
        for (int d = 0; d <= up.complex.dim(); ++d) {
            assign[d].resize(up.complex.n_cells(d));
            sgn[d].resize(up.complex.n_cells(d));
            for (std::size_t i = 0; i < up.complex.n_cells(d); ++i) {
                std::size_t amb = up.to_ambient[d][i];
                long long img = down.from_ambient[d][full.base_cell(d, amb)];
                if (img < 0) throw ModelError("pullback: sphere cells must cover sphere cells");
                assign[d][i] = static_cast<std::size_t>(img);
                sgn[d][i] = full.cell_sign(d, amb);
            }
        }
        return CoveringMap(&up.complex, &down.complex, std::move(assign), std::move(sgn), degree);
    }
};

inline PulledBackBundle pullback_bundle(const BundlePair& b, const SimplicialComplex& cover_total,
                                        const SimplicialMap& cover_map, int degree) {
    if (!(*cover_map.dst() == *b.base))
        throw InputError("pullback: covering must land in the bundle base");
    PulledBackBundle out;
    out.degree = degree;
    auto& nb = out.bundle;
    nb.base = std::make_shared<SimplicialComplex>(cover_total);
    nb.rank = b.rank;

    // vertices of the fiber product: (cover vertex, disk vertex) with equal
    // base image; ids keep the disk part fastest so sheets stay monotone
    const auto& cv = cover_total.vertices();
    const auto& dv = b.disk->vertices();
    std::map<std::pair<int, int>, int> vid;
    std::vector<std::pair<int, int>> vpair;
    for (int a : cv)
        for (int w : dv)
            if (cover_map.image_vertex(a) == b.projection->image_vertex(w)) {
                vid[{a, w}] = static_cast<int>(vpair.size());
                vpair.emplace_back(a, w);
            }

    // simplices: a disk simplex sigma together with a lift of its projected
    // vertex span through the cover
    std::vector<std::vector<int>> tops;
    std::vector<std::vector<int>> new_sphere_tops;
    for (int d = 0; d <= b.disk->dim(); ++d)
        for (std::size_t i = 0; i < b.disk->n_simplices(d); ++i) {
            const auto& s = b.disk->simplex(d, i);
            // base span of sigma
            std::vector<int> span;
            for (int v : s) span.push_back(b.projection->image_vertex(v));
            std::sort(span.begin(), span.end());
            span.erase(std::unique(span.begin(), span.end()), span.end());
            int sd = static_cast<int>(span.size()) - 1;
            // lifts: simplices of the cover total with that image span
            for (std::size_t j = 0; j < cover_total.n_simplices(sd); ++j) {
                const auto& lift = cover_total.simplex(sd, j);
                std::vector<int> img;
                for (int v : lift) img.push_back(cover_map.image_vertex(v));
                std::sort(img.begin(), img.end());
                if (img != span) continue;
                std::map<int, int> to_lift;
                for (int v : lift) to_lift[cover_map.image_vertex(v)] = v;
                std::vector<int> cell;
                for (int v : s) cell.push_back(vid.at({to_lift[b.projection->image_vertex(v)], v}));
                std::sort(cell.begin(), cell.end());
                tops.push_back(cell);
                if (b.sphere_mask[d][i]) new_sphere_tops.push_back(cell);
            }
        }
    nb.disk = std::make_shared<SimplicialComplex>(SimplicialComplex::from_top_simplices(tops));

    std::map<int, int> proj, down;
    for (std::size_t id = 0; id < vpair.size(); ++id) {
        proj[static_cast<int>(id)] = vpair[id].first;
        down[static_cast<int>(id)] = vpair[id].second;
    }
    nb.projection = std::make_shared<SimplicialMap>(nb.disk.get(), nb.base.get(), proj);
    out.disk_cover_map = std::make_shared<SimplicialMap>(nb.disk.get(), b.disk.get(), down);

    // sphere mask: preimages of sphere simplices
    nb.sphere_mask.resize(nb.disk->dim() + 1);
    for (int d = 0; d <= nb.disk->dim(); ++d) {
        nb.sphere_mask[d].assign(nb.disk->n_simplices(d), 0);
        for (std::size_t i = 0; i < nb.disk->n_simplices(d); ++i) {
            auto im = out.disk_cover_map->chain_image(d, i);
            if (!im) throw ModelError("pullback: disk covering degenerates a simplex");
            nb.sphere_mask[d][i] = b.sphere_mask[d][im->first];
        }
    }
    nb.pair = std::make_shared<RelativePair>(relative_pair(nb.disk->chain_complex(), nb.sphere_mask));

    // fiber chains: lift each base certificate to the sheet of each cover vertex
    for (int a : cv) {
        std::size_t down_pos = b.base_vertex_pos(cover_map.image_vertex(a));
        std::map<std::size_t, Int> chain;
        for (const auto& [cell, coeff] : b.fiber_chain[down_pos]) {
            std::vector<int> lifted;
            for (int w : b.disk->simplex(b.rank, cell)) lifted.push_back(vid.at({a, w}));
            std::sort(lifted.begin(), lifted.end());
            auto idx = nb.disk->index_of(lifted);
            if (!idx) throw ModelError("pullback: lifted fiber cell missing");
            // the lift (a, -) is monotone in the disk part, so no sign flip
            chain[*idx] = coeff;
        }
        nb.fiber_chain.push_back(std::move(chain));
    }
    return out;
}

// ----- the commuting square ---------------------------------------------------

/// For every basis class of the cover base: Thom map of the transfer equals
/// the pair-level transfer of the pulled-back Thom map, at class level.
inline VerifyReport verify_thom_transfer_square(const BundlePair& b,
                                                const SimplicialComplex& cover_total,
                                                const SimplicialMap& cover_map, int degree) {
    VerifyReport rep;
    auto pb = pullback_bundle(b, cover_total, cover_map, degree);
    auto base_cover = CoveringMap::from_simplicial(cover_map, degree);
    auto pair_cover = pb.pair_cover(b);

    auto u_down = thom_class(b);
    auto u_up = thom_class(pb.bundle);
    rep.check(thom_class_unique(b), "thom class downstairs unique up to coboundary");
    rep.check(thom_class_unique(pb.bundle), "thom class upstairs unique up to coboundary");

    for (int d = 0; d <= cover_total.dim(); ++d) {
        CohomologyBasis cover_basis(cover_total.chain_complex(), d);
        CohomologyBasis pair_basis(b.pair->complex, d + b.rank);
        for (std::size_t i = 0; i < cover_basis.size(); ++i) {
            const auto& alpha = cover_basis.generator(i);
            auto lhs = thom_iso(b, u_down, d, base_cover.transfer(d, alpha));
            auto up = thom_iso(pb.bundle, u_up, d, alpha);
            auto rhs = pair_cover.transfer(d + b.rank, up.cochain);
            rep.check(pair_basis.class_equal(lhs.cochain, rhs),
                      "thom square commutes on degree-" + std::to_string(d) + " class " +
                          std::to_string(i));
        }
    }
    return rep;
}

/// The Thom map is an isomorphism: groups match across the degree shift and
/// basis classes map to a generating set.
inline VerifyReport verify_thom_iso(const BundlePair& b) {
    VerifyReport rep;
    auto u = thom_class(b);
    for (int d = 0; d <= b.base->dim(); ++d) {
        auto down = cohomology_group(b.base->chain_complex(), d);
        auto up = cohomology_group(b.pair->complex, d + b.rank);
        rep.check(down == up, "H^" + std::to_string(d) + "(base) matches H^" +
                                  std::to_string(d + b.rank) + "(pair)");
        CohomologyBasis basis(b.base->chain_complex(), d);
        CohomologyBasis target(b.pair->complex, d + b.rank);
        if (basis.size() != target.size()) {
            rep.check(false, "basis sizes differ in degree " + std::to_string(d));
            continue;
        }
        // matrix of the Thom map in the chosen bases
        if (!basis.size()) continue;
        SparseIntMatrix m(target.size(), basis.size());
        bool torsion_ok = true;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            auto img = thom_iso(b, u, d, basis.generator(j));
            auto coords = target.coords(img.cochain);
            for (std::size_t i = 0; i < coords.size(); ++i) m.add(i, j, coords[i]);
            torsion_ok = torsion_ok && (basis.order(j) == target.order(j));
        }
        rep.check(torsion_ok, "generator orders match in degree " + std::to_string(d));
        // free part must be unimodular; desk-scale bases, so check via SNF
        auto snf = smith_normal_form(m);
        bool unimodular = snf.rank == basis.size();
        for (const auto& dg : snf.diagonal) unimodular = unimodular && dg == 1;
        rep.check(unimodular, "thom map is onto in degree " + std::to_string(d));
    }
    return rep;
}

// ----- degenerate and zero checks ----------------------------------------------

inline CohomologyClass thom_of_unit(const BundlePair& b, const std::vector<Int>& u) {
    return thom_iso(b, u, 0, unit_cochain(b.base->chain_complex()));
}

} // namespace suptop

#endif
