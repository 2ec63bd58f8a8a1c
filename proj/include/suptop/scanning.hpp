#ifndef SUPTOP_SCANNING_HPP
#define SUPTOP_SCANNING_HPP

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "suptop/formal_sum.hpp"
#include "suptop/labelled_config.hpp"

namespace suptop {

/// A multivalued function A -> SP(B): basepoint-preserving by construction.
/// May carry a span presentation (A <- cover -> B), kept as its evaluation;
/// when both a direct formula and a span are present they must agree on the
/// declared domain (span_consistent).
template <class A, class B>
class MultiMap {
public:
    using Fn = std::function<FormalSum<B>(const A&)>;

    explicit MultiMap(Fn fn) : fn_(std::move(fn)) {}
    MultiMap(Fn fn, Fn span_eval, int span_degree)
        : fn_(std::move(fn)), span_eval_(std::move(span_eval)), span_degree_(span_degree) {}

    FormalSum<B> operator()(const A& a) const {
        if (is_basepoint(a)) return {};
        return fn_(a);
    }

    bool has_span() const { return static_cast<bool>(span_eval_); }
    int span_degree() const { return span_degree_; }

    FormalSum<B> evaluate_span(const A& a) const {
        if (is_basepoint(a)) return {};
        return span_eval_(a);
    }

    /// Span evaluation equals the direct formula on each element of `domain`.
    bool span_consistent(const std::vector<A>& domain) const {
        if (!span_eval_) return true;
        for (const A& a : domain)
            if (evaluate_span(a) != (*this)(a)) return false;
        return true;
    }

    /// Homomorphic extension SP(A) -> SP(B).
    FormalSum<B> extend(const FormalSum<A>& sum) const {
        return sum.map_terms([this](const A& a) { return (*this)(a); });
    }

private:
    Fn fn_;
    Fn span_eval_;
    int span_degree_ = 0;
};

/// Present a multivalued function by a span (A <- Mid-cover -> B): fibers of
/// the left leg, then the right leg term by term. Each fiber must have
/// exactly `degree` elements.
template <class Mid, class A, class B>
MultiMap<A, B> span_multimap(int degree,
                             std::function<std::vector<Mid>(const A&)> fiber,
                             std::function<B(const Mid&)> leg,
                             typename MultiMap<A, B>::Fn direct = nullptr) {
    auto span_eval = [degree, fiber, leg](const A& a) {
        FormalSum<B> out;
        auto fib = fiber(a);
        if (static_cast<int>(fib.size()) != degree)
            throw ModelError("span: fiber size " + std::to_string(fib.size()) +
                             " != degree " + std::to_string(degree));
        for (const Mid& t : fib) out.add(leg(t));
        return out;
    };
    if (!direct) direct = span_eval;
    return MultiMap<A, B>(std::move(direct), std::move(span_eval), degree);
}

// ----- the scanning square: sigma, Delta, Phi, Psi --------------------------

/// Scanning map: a configuration goes to the sum of all its subconfigurations.
inline FormalSum<LabelledConfig> scan(const LabelledConfig& xi) {
    FormalSum<LabelledConfig> out;
    const auto n = xi.size();
    for (unsigned long long mask = 0; mask < (1ULL << n); ++mask)
        out.add(xi.subconfig(mask));
    return out;
}

/// Diagonal into the smash: basepoint inputs give the smash basepoint.
inline ConfigPair diag(const LabelledConfig& xi) { return {xi, xi}; }

/// Partition map: sum over ordered decompositions I = A ⊔ B. Pairs with an
/// empty side are the smash basepoint and are absorbed.
inline FormalSum<ConfigPair> phi(const LabelledConfig& xi) {
    FormalSum<ConfigPair> out;
    const auto n = xi.size();
    if (n == 0) return out;
    for (unsigned long long mask = 0; mask < (1ULL << n); ++mask)
        out.add({xi.subconfig(mask), xi.subconfig(~mask & ((1ULL << n) - 1))});
    return out;
}

/// Cover map: sum over ordered pairs (A, B) of subsets with A ∪ B = I.
inline FormalSum<ConfigPair> psi(const LabelledConfig& xi) {
    FormalSum<ConfigPair> out;
    const auto n = xi.size();
    if (n == 0) return out;
    // each point lands in A only, B only, or both
    std::vector<int> choice(n, 0);
    while (true) {
        unsigned long long a = 0, b = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (choice[i] != 1) a |= 1ULL << i;
            if (choice[i] != 0) b |= 1ULL << i;
        }
        out.add({xi.subconfig(a), xi.subconfig(b)});
        std::size_t i = 0;
        for (; i < n && choice[i] == 2; ++i) choice[i] = 0;
        if (i == n) break;
        ++choice[i];
    }
    return out;
}

/// (p,q,r)-component of phi: decompositions with |A| = q, |B| = r. Empty
/// whenever p != q + r.
inline FormalSum<ConfigPair> phi_component(int p, int q, int r, const LabelledConfig& xi) {
    if (static_cast<int>(xi.size()) != p)
        throw InputError("phi_component: configuration size differs from p");
    FormalSum<ConfigPair> out;
    if (q + r != p || q <= 0 || r <= 0) return out;
    const auto full = phi(xi);
    for (const auto& [pair, mult] : full.terms())
        if (static_cast<int>(pair.first.size()) == q && static_cast<int>(pair.second.size()) == r)
            out.add(pair, mult);
    return out;
}

/// (p,q,r)-component of psi: covers with |A| = q, |B| = r. Empty when
/// q + r < p; equals the phi component when p = q + r.
inline FormalSum<ConfigPair> psi_component(int p, int q, int r, const LabelledConfig& xi) {
    if (static_cast<int>(xi.size()) != p)
        throw InputError("psi_component: configuration size differs from p");
    FormalSum<ConfigPair> out;
    if (q + r < p || q <= 0 || r <= 0) return out;
    const auto full = psi(xi);
    for (const auto& [pair, mult] : full.terms())
        if (static_cast<int>(pair.first.size()) == q && static_cast<int>(pair.second.size()) == r)
            out.add(pair, mult);
    return out;
}

// ----- products and covering inverses ---------------------------------------

/// Pairwise product of multivalued functions on the smash: term-by-term
/// pairs, multiplicities multiplying.
template <class A, class B, class C, class D>
MultiMap<std::pair<A, C>, std::pair<B, D>> triangle(MultiMap<A, B> f, MultiMap<C, D> g) {
    using In = std::pair<A, C>;
    using Out = std::pair<B, D>;
    return MultiMap<In, Out>([f = std::move(f), g = std::move(g)](const In& ac) {
        FormalSum<Out> out;
        const auto fa = f(ac.first);
        const auto gc = g(ac.second);
        for (const auto& [b, mb] : fa.terms())
            for (const auto& [d, md] : gc.terms()) out.add({b, d}, mb * md);
        return out;
    });
}

/// Presentation of a finite-sheeted covering of sets: every non-basepoint
/// element of the base has exactly `degree` preimages.
template <class Base, class Total>
struct CoverPresentation {
    int degree = 1;
    std::function<std::vector<Total>(const Base&)> fiber;
    std::function<Base(const Total&)> project;
};

/// Invert a covering: x goes to the sum of its fiber, span-presented through
/// the total space. A fiber of the wrong size raises a malformed-cover error.
template <class Base, class Total>
MultiMap<Base, Total> cover_inverse(const CoverPresentation<Base, Total>& p) {
    return span_multimap<Total, Base, Total>(
        p.degree, p.fiber, [](const Total& t) { return t; });
}

/// Compose the inverse with the forward projection: must be degree * identity.
template <class Base, class Total>
FormalSum<Base> cover_roundtrip(const CoverPresentation<Base, Total>& p, const Base& x) {
    auto inv = cover_inverse(p);
    return inv(x).map_terms([&p](const Total& t) {
        FormalSum<Base> s;
        s.add(p.project(t));
        return s;
    });
}

// ----- identity checks -------------------------------------------------------

struct CheckResult {
    bool pass = true;
    long long cases = 0;
    std::string counterexample;

    void fail(const std::string& what) {
        if (pass) counterexample = what;
        pass = false;
    }
};

/// Exhaustively checks Psi(sigma(xi)) == (sigma triangle sigma)(Delta(xi)) as
/// formal-sum equality for all plain configurations of size <= max_size.
inline CheckResult verify_psi_sigma_identity(int max_size) {
    CheckResult res;
    MultiMap<LabelledConfig, LabelledConfig> sigma{[](const LabelledConfig& c) { return scan(c); }};
    auto sigma2 = triangle(sigma, sigma);
    for (int n = 0; n <= max_size; ++n) {
        std::vector<int> pts(n);
        for (int i = 0; i < n; ++i) pts[i] = i + 1;
        LabelledConfig xi(pts);
        // left: extend Psi over the scanning sum
        FormalSum<ConfigPair> left = scan(xi).map_terms([](const LabelledConfig& c) { return psi(c); });
        FormalSum<ConfigPair> right = sigma2(diag(xi));
        ++res.cases;
        if (left != right) {
            res.fail("size " + std::to_string(n) + ": Psi∘sigma = " +
                     left.to_string([](const ConfigPair& p) { return to_string(p); }) +
                     " but (sigma△sigma)∘Delta = " +
                     right.to_string([](const ConfigPair& p) { return to_string(p); }));
            return res;
        }
    }
    return res;
}

} // namespace suptop

#endif
