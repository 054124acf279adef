#pragma once

#include "rational.hpp"

#include <vector>

namespace qzeta::linalg {

using QMat = std::vector<std::vector<Q>>;

// reduced row echelon form in place; returns pivot columns
inline std::vector<int> rref(QMat& A, int ncols) {
    std::vector<int> piv;
    size_t r = 0;
    for (int c = 0; c < ncols && r < A.size(); ++c) {
        size_t p = r;
        while (p < A.size() && A[p][c] == 0) ++p;
        if (p == A.size()) continue;
        std::swap(A[p], A[r]);
        Q inv = Q(1) / A[r][c];
        for (auto& x : A[r]) x *= inv;
        for (size_t i = 0; i < A.size(); ++i) {
            if (i == r || A[i][c] == 0) continue;
            Q f = A[i][c];
            for (int j = 0; j < ncols; ++j) A[i][j] -= f * A[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

template <class V>
QMat to_q(const std::vector<V>& rows) {
    QMat A;
    for (auto& r : rows) {
        std::vector<Q> row;
        for (auto x : r) row.push_back(Q(x));
        A.push_back(row);
    }
    return A;
}

template <class V>
int rank(const std::vector<V>& rows, int ncols) {
    QMat A = to_q(rows);
    return (int)rref(A, ncols).size();
}

// basis of {x : A x = 0}
inline QMat nullspace(QMat A, int ncols) {
    auto piv = rref(A, ncols);
    std::vector<bool> is_piv(ncols, false);
    for (int c : piv) is_piv[c] = true;
    QMat out;
    for (int f = 0; f < ncols; ++f) {
        if (is_piv[f]) continue;
        std::vector<Q> v(ncols, Q(0));
        v[f] = 1;
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -A[r][f];
        out.push_back(v);
    }
    return out;
}

// scale a rational vector to a primitive integer vector (same direction)
inline std::vector<long> primitive(const std::vector<Q>& v) {
    Int L = 1;
    for (auto& x : v) L = boost::multiprecision::lcm(L, den(x));
    std::vector<Int> w;
    Int g = 0;
    for (auto& x : v) {
        w.push_back(num(x * Q(L)));
        g = boost::multiprecision::gcd(g, abs(w.back()));
    }
    std::vector<long> out;
    for (auto& x : w) out.push_back(g == 0 ? 0 : to_long(Int(x / g)));
    return out;
}

inline long dot(const std::vector<long>& a, const std::vector<long>& b) {
    long s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Q dot(const std::vector<Q>& a, const std::vector<long>& b) {
    Q s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace qzeta::linalg
