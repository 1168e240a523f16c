#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wep {

using cplx = std::complex<double>;

/// Base of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shape mismatch or otherwise malformed argument.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Matrix is numerically singular where an inverse was required.
class SingularError : public Error {
public:
    using Error::Error;
};

/// Input failed a positivity criterion (hermitian, spectrum, invertibility).
class NotPositiveError : public Error {
public:
    using Error::Error;
};

/// An iterative kernel failed to converge or produced non-finite output.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Numerical cutoffs shared by every module.
///
/// `rank_rel` is relative to the largest singular value, `residual_rel` scales
/// residuals by `1 + max input norm`, `herm_abs` bounds |‖exp(ita)‖ - 1|.
struct Tolerance {
    double rank_rel = 1e-10;
    double residual_rel = 1e-9;
    double herm_abs = 1e-7;

    /// Throws ShapeError if any field is non-positive or rank_rel >= 1.
    void validate() const;
};

/// Dense complex matrix, row-major. Zero-sized dimensions are allowed so that
/// rank-0 factorizations can be represented without special cases.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols);
    CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
    CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static CMatrix identity(std::size_t n);
    static CMatrix zeros(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }
    static CMatrix diagonal(std::span<const cplx> d);
    static CMatrix diagonal(std::initializer_list<cplx> d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<cplx> data() noexcept { return data_; }
    std::span<const cplx> data() const noexcept { return data_; }

    CMatrix adjoint() const;
    CMatrix transpose() const;

    /// Copy of the `nr x nc` block starting at (r0, c0).
    CMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const CMatrix& b);

    /// Columns [c0, c0 + nc).
    CMatrix cols_range(std::size_t c0, std::size_t nc) const { return block(0, c0, rows_, nc); }
    /// Rows [r0, r0 + nr).
    CMatrix rows_range(std::size_t r0, std::size_t nr) const { return block(r0, 0, nr, cols_); }

    bool all_finite() const noexcept;

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(cplx s);

    friend bool operator==(const CMatrix&, const CMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(cplx s, CMatrix a);
CMatrix operator*(CMatrix a, cplx s);

/// [a | b]
CMatrix hstack(const CMatrix& a, const CMatrix& b);
/// blockdiag(a, b)
CMatrix block_diag(const CMatrix& a, const CMatrix& b);

double frobenius_norm(const CMatrix& a);
double max_abs(const CMatrix& a);

/// ‖x - y‖_F / (1 + max(‖x‖_F, ‖y‖_F)).
double rel_diff(const CMatrix& x, const CMatrix& y);
/// ‖x‖_F / (1 + scale).
double rel_norm(const CMatrix& x, double scale);

std::string shape_str(const CMatrix& a);
void require_square(const CMatrix& a, const char* what);
void require_same_shape(const CMatrix& a, const CMatrix& b, const char* what);

}  // namespace wep
