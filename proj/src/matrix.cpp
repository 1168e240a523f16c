#include "wep/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wep/kernels.hpp"

namespace wep {

void Tolerance::validate() const {
    if (!(rank_rel > 0.0) || !(rank_rel < 1.0)) throw ShapeError("tolerance: rank_rel must lie in (0, 1)");
    if (!(residual_rel > 0.0)) throw ShapeError("tolerance: residual_rel must be positive");
    if (!(herm_abs > 0.0)) throw ShapeError("tolerance: herm_abs must be positive");
}

CMatrix::CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) {
        throw ShapeError("matrix: expected " + std::to_string(rows * cols) + " entries, got " +
                         std::to_string(data_.size()));
    }
    if (!all_finite()) throw ShapeError("matrix: entries must be finite");
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw ShapeError("matrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
    if (!all_finite()) throw ShapeError("matrix: entries must be finite");
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(std::span<const cplx> d) {
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

CMatrix CMatrix::diagonal(std::initializer_list<cplx> d) {
    return diagonal(std::span<const cplx>(d.begin(), d.size()));
}

CMatrix CMatrix::adjoint() const {
    CMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
    return t;
}

CMatrix CMatrix::transpose() const {
    CMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

CMatrix CMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw ShapeError("block: out of range for " + shape_str(*this));
    CMatrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        std::copy_n(data_.begin() + (r0 + i) * cols_ + c0, nc, b.data_.begin() + i * nc);
    return b;
}

void CMatrix::set_block(std::size_t r0, std::size_t c0, const CMatrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw ShapeError("set_block: out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
        std::copy_n(b.data_.begin() + i * b.cols_, b.cols_, data_.begin() + (r0 + i) * cols_ + c0);
}

bool CMatrix::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(),
                       [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    require_same_shape(*this, o, "operator+");
    kernels::active().axpy(data_.size(), 1.0, o.data_.data(), data_.data());
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    require_same_shape(*this, o, "operator-");
    kernels::active().axpy(data_.size(), -1.0, o.data_.data(), data_.data());
    return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
    for (auto& z : data_) z *= s;
    return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator-(CMatrix a) { return a *= -1.0; }
CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
CMatrix operator*(CMatrix a, cplx s) { return a *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeError("matmul: " + shape_str(a) + " * " + shape_str(b));
    }
    CMatrix c(a.rows(), b.cols());
    if (c.empty()) return c;
    kernels::active().gemm(a.rows(), b.cols(), a.cols(), a.data().data(), b.data().data(), c.data().data());
    return c;
}

CMatrix hstack(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows()) throw ShapeError("hstack: row mismatch " + shape_str(a) + " | " + shape_str(b));
    CMatrix m(a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

CMatrix block_diag(const CMatrix& a, const CMatrix& b) {
    CMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), a.cols(), b);
    return m;
}

double frobenius_norm(const CMatrix& a) {
    return std::sqrt(kernels::active().sum_sq(a.size(), a.data().data()));
}

double max_abs(const CMatrix& a) {
    double m = 0.0;
    for (const auto& z : a.data()) m = std::max(m, std::abs(z));
    return m;
}

double rel_diff(const CMatrix& x, const CMatrix& y) {
    require_same_shape(x, y, "rel_diff");
    return frobenius_norm(x - y) / (1.0 + std::max(frobenius_norm(x), frobenius_norm(y)));
}

double rel_norm(const CMatrix& x, double scale) { return frobenius_norm(x) / (1.0 + scale); }

std::string shape_str(const CMatrix& a) {
    std::ostringstream os;
    os << a.rows() << "x" << a.cols();
    return os.str();
}

void require_square(const CMatrix& a, const char* what) {
    if (!a.is_square()) throw ShapeError(std::string(what) + ": expected a square matrix, got " + shape_str(a));
}

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError(std::string(what) + ": shape mismatch " + shape_str(a) + " vs " + shape_str(b));
    }
}

}  // namespace wep
