#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace sglab {

// Element of the truncated Hilbert space, stored as the coefficient
// sequence x^(k) = <x, e_k>, k = 1..M.
using HVec = std::vector<double>;

inline double norm(const HVec& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

inline double dot(const HVec& a, const HVec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dot: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Prefix projection pi_m: zero every coordinate beyond m. Idempotent.
inline HVec project(const HVec& x, std::size_t m) {
    HVec y = x;
    for (std::size_t k = m; k < y.size(); ++k) y[k] = 0.0;
    return y;
}

inline HVec operator+(HVec a, const HVec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("HVec +: dimension mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline HVec operator-(HVec a, const HVec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("HVec -: dimension mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

inline HVec operator*(double c, HVec a) {
    for (double& v : a) v *= c;
    return a;
}

// Unit coordinate vector e_k (1-based index).
inline HVec basis_vec(std::size_t M, std::size_t k) {
    if (k < 1 || k > M) throw std::invalid_argument("basis_vec: index out of range");
    HVec e(M, 0.0);
    e[k - 1] = 1.0;
    return e;
}

}  // namespace sglab
