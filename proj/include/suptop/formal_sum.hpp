#ifndef SUPTOP_FORMAL_SUM_HPP
#define SUPTOP_FORMAL_SUM_HPP

#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "suptop/errors.hpp"

namespace suptop {

// Basepoint detection is a customization point found by ADL: element types
// provide is_basepoint(const T&). Pairs model smash products, so a pair is
// basepoint as soon as either side is.
template <class A, class B>
bool is_basepoint(const std::pair<A, B>& p) {
    return is_basepoint(p.first) || is_basepoint(p.second);
}

/// Element of the free unital abelian monoid on T: a finite multiset with
/// positive multiplicities. Basepoint terms are absorbed on insertion, so
/// equality of sums is plain multiset equality.
template <class T>
class FormalSum {
public:
    using Terms = std::map<T, long long>;

    FormalSum() = default;

    void add(const T& t, long long multiplicity = 1) {
        if (multiplicity < 0) throw InputError("FormalSum: negative multiplicity");
        if (multiplicity == 0 || is_basepoint(t)) return;
        terms_[t] += multiplicity;
    }

    FormalSum& operator+=(const FormalSum& other) {
        for (const auto& [t, m] : other.terms_) terms_[t] += m;
        return *this;
    }
    friend FormalSum operator+(FormalSum a, const FormalSum& b) { return a += b; }

    FormalSum scaled(long long k) const {
        if (k < 0) throw InputError("FormalSum: negative scale");
        FormalSum r;
        if (k == 0) return r;
        for (const auto& [t, m] : terms_) r.terms_[t] = m * k;
        return r;
    }

    bool operator==(const FormalSum& other) const { return terms_ == other.terms_; }
    bool operator!=(const FormalSum& other) const { return !(*this == other); }

    bool empty() const { return terms_.empty(); }
    std::size_t distinct_terms() const { return terms_.size(); }
    long long total_multiplicity() const {
        long long s = 0;
        for (const auto& [t, m] : terms_) s += m;
        return s;
    }
    long long multiplicity(const T& t) const {
        auto it = terms_.find(t);
        return it == terms_.end() ? 0 : it->second;
    }
    const Terms& terms() const { return terms_; }

    /// Homomorphic extension: apply an element-wise multivalued map and sum.
    template <class F>
    auto map_terms(F&& f) const -> decltype(f(std::declval<const T&>())) {
        decltype(f(std::declval<const T&>())) out;
        for (const auto& [t, m] : terms_) {
            auto image = f(t);
            for (const auto& [u, k] : image.terms()) out.add(u, k * m);
        }
        return out;
    }

    template <class Printer>
    std::string to_string(Printer&& print_elem) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [t, m] : terms_) {
            if (!first) os << " + ";
            first = false;
            if (m != 1) os << m << "*";
            os << print_elem(t);
        }
        return os.str();
    }

private:
    Terms terms_;
};

} // namespace suptop

#endif
