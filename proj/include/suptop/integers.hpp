#ifndef SUPTOP_INTEGERS_HPP
#define SUPTOP_INTEGERS_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

namespace suptop {

/// Exact integer used for all chain-level arithmetic. Arbitrary precision:
/// torsion computations must never wrap.
using Int = boost::multiprecision::cpp_int;

inline long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

inline long long factorial(int n) {
    long long r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

/// Sign of the permutation that sorts `v` ascending; 0 if entries repeat.
template <class T>
int sort_sign(std::vector<T> v) {
    int sign = 1;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            if (v[i] == v[j]) return 0;
            if (v[i] > v[j]) {
                std::swap(v[i], v[j]);
                sign = -sign;
            }
        }
    return sign;
}

} // namespace suptop

#endif
