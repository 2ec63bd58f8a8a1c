#ifndef SUPTOP_CUP_HPP
#define SUPTOP_CUP_HPP

#include <vector>

#include "suptop/homology.hpp"
#include "suptop/simplicial_complex.hpp"

namespace suptop {

/// Alexander-Whitney cup product of cochains on a simplicial complex with
/// its global vertex order: (a ⌣ b)(v_0..v_{p+q}) = a(front p-face) * b(back
/// q-face). Strictly associative and unital at the cochain level; commutes
/// only up to coboundary.
inline std::vector<Int> cup_cochain(const SimplicialComplex& k, int p, const std::vector<Int>& a,
                                    int q, const std::vector<Int>& b) {
    if (a.size() != k.n_simplices(p) || b.size() != k.n_simplices(q))
        throw InputError("cup: cochain lengths do not match the host");
    const int d = p + q;
    std::vector<Int> out(k.n_simplices(d), Int(0));
    std::vector<int> front(p + 1), back(q + 1);
    for (std::size_t i = 0; i < k.n_simplices(d); ++i) {
        const auto& s = k.simplex(d, i);
        front.assign(s.begin(), s.begin() + p + 1);
        back.assign(s.begin() + p, s.end());
        auto fi = k.index_of(front);
        auto bi = k.index_of(back);
        Int v = a[*fi] * b[*bi];
        if (v != 0) out[i] = v;
    }
    return out;
}

/// Cup product of classes on the same simplicial host.
inline CohomologyClass cup(const SimplicialComplex& k, const CohomologyClass& a,
                           const CohomologyClass& b) {
    if (a.host != &k.chain_complex() || b.host != &k.chain_complex())
        throw InputError("cup: classes live on different hosts");
    CohomologyClass out;
    out.host = a.host;
    out.degree = a.degree + b.degree;
    out.relative = a.relative || b.relative;
    out.cochain = cup_cochain(k, a.degree, a.cochain, b.degree, b.cochain);
    return out;
}

/// Cross product on a product complex: value a(x) * b(y) on cells (x, y) of
/// matching bidegree, zero otherwise. Cocycle times cocycle is a cocycle.
inline std::vector<Int> cross_cochain(const ProductComplex& pc, int p, const std::vector<Int>& a,
                                      int q, const std::vector<Int>& b) {
    if (a.size() != pc.left->n_cells(p) || b.size() != pc.right->n_cells(q))
        throw InputError("cross: cochain lengths do not match the factors");
    std::vector<Int> out(pc.complex.n_cells(p + q), Int(0));
    for (std::size_t ia = 0; ia < pc.left->n_cells(p); ++ia) {
        if (a[ia] == 0) continue;
        for (std::size_t ib = 0; ib < pc.right->n_cells(q); ++ib) {
            if (b[ib] == 0) continue;
            out[pc.index_of(p, ia, q, ib)] = a[ia] * b[ib];
        }
    }
    return out;
}

inline CohomologyClass cross(const ProductComplex& pc, const CohomologyClass& a,
                             const CohomologyClass& b) {
    if (a.host != pc.left || b.host != pc.right)
        throw InputError("cross: classes do not live on the factors");
    CohomologyClass out;
    out.host = &pc.complex;
    out.degree = a.degree + b.degree;
    out.cochain = cross_cochain(pc, a.degree, a.cochain, b.degree, b.cochain);
    return out;
}

} // namespace suptop

#endif
