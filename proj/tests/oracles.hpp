#pragma once

// Reference implementations used only by the tests. Deliberately naive and
// independent of the library's SVD/eigen paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "wep/matrix.hpp"

namespace oracle {

using wep::CMatrix;
using wep::cplx;

inline CMatrix mul(const CMatrix& a, const CMatrix& b) {
    CMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            cplx s = 0;
            for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    return c;
}

inline CMatrix adj(const CMatrix& a) {
    CMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
    return t;
}

/// Gauss-Jordan with partial pivoting.
inline CMatrix inverse(const CMatrix& a) {
    const std::size_t n = a.rows();
    CMatrix m = a, inv = CMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(m(k, j), m(piv, j));
            std::swap(inv(k, j), inv(piv, j));
        }
        const cplx d = m(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            m(k, j) /= d;
            inv(k, j) /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            const cplx f = m(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) -= f * m(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

/// Reduced row echelon form with partial pivoting. Pivots with modulus below
/// tol * max|a| count as zero.
struct Rref {
    CMatrix r;
    std::vector<std::size_t> pivots;
};

inline Rref rref(const CMatrix& a, double tol = 1e-9) {
    Rref out{a, {}};
    CMatrix& m = out.r;
    double scale = 0;
    for (auto z : a.data()) scale = std::max(scale, std::abs(z));
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t piv = row;
        for (std::size_t i = row + 1; i < m.rows(); ++i)
            if (std::abs(m(i, col)) > std::abs(m(piv, col))) piv = i;
        if (std::abs(m(piv, col)) <= tol * scale) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(piv, j));
        const cplx d = m(row, col);
        for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) /= d;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row) continue;
            const cplx f = m(i, col);
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        out.pivots.push_back(col);
        ++row;
    }
    return out;
}

inline std::size_t elimination_rank(const CMatrix& a, double tol = 1e-9) { return rref(a, tol).pivots.size(); }

/// a = b c with b the pivot columns of a and c the nonzero rows of rref(a).
inline void rref_factor(const CMatrix& a, CMatrix& b, CMatrix& c) {
    const Rref e = rref(a);
    const std::size_t r = e.pivots.size();
    b = CMatrix(a.rows(), r);
    c = CMatrix(r, a.cols());
    for (std::size_t k = 0; k < r; ++k) {
        for (std::size_t i = 0; i < a.rows(); ++i) b(i, k) = a(i, e.pivots[k]);
        for (std::size_t j = 0; j < a.cols(); ++j) c(k, j) = e.r(k, j);
    }
}

/// f^{-1} c^* (c f^{-1} c^*)^{-1} (b^* e b)^{-1} b^* e for a full-rank a = b c.
inline CMatrix weighted_pinv(const CMatrix& a, const CMatrix& e, const CMatrix& f) {
    CMatrix b, c;
    rref_factor(a, b, c);
    if (b.cols() == 0) return CMatrix(a.cols(), a.rows());
    const CMatrix fi = inverse(f);
    const CMatrix right = mul(mul(fi, adj(c)), inverse(mul(mul(c, fi), adj(c))));
    const CMatrix left = mul(inverse(mul(mul(adj(b), e), b)), mul(adj(b), e));
    return mul(right, left);
}

inline CMatrix pinv(const CMatrix& a) {
    return weighted_pinv(a, CMatrix::identity(a.rows()), CMatrix::identity(a.cols()));
}

/// Scaling and squaring around a plain Taylor series.
inline CMatrix taylor_exp(const CMatrix& a) {
    double norm = 0;
    for (auto z : a.data()) norm += std::norm(z);
    norm = std::sqrt(norm);
    int s = 0;
    while (norm > 0.25) {
        norm /= 2;
        ++s;
    }
    CMatrix x = a;
    const double scale = std::ldexp(1.0, -s);
    for (auto& z : x.data()) z *= scale;
    CMatrix sum = CMatrix::identity(a.rows()), term = CMatrix::identity(a.rows());
    for (int k = 1; k <= 30; ++k) {
        term = mul(term, x);
        for (auto& z : term.data()) z /= static_cast<double>(k);
        for (std::size_t i = 0; i < sum.size(); ++i) sum.data()[i] += term.data()[i];
    }
    for (int k = 0; k < s; ++k) sum = mul(sum, sum);
    return sum;
}

inline double max_diff(const CMatrix& a, const CMatrix& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

}  // namespace oracle
