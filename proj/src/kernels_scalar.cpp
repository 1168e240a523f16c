#include "wep/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace wep::kernels {
namespace {

void gemm_scalar(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b,
                 cplx* c) {
    std::fill(c, c + m * n, cplx{});
    for (std::size_t i = 0; i < m; ++i) {
        cplx* ci = c + i * n;
        for (std::size_t p = 0; p < k; ++p) {
            const double ar = a[i * k + p].real();
            const double ai = a[i * k + p].imag();
            const cplx* bp = b + p * n;
            for (std::size_t j = 0; j < n; ++j) {
                const double br = bp[j].real();
                const double bi = bp[j].imag();
                ci[j] = {ci[j].real() + (ar * br - ai * bi), ci[j].imag() + (ar * bi + ai * br)};
            }
        }
    }
}

void axpy_scalar(std::size_t len, cplx alpha, const cplx* x, cplx* y) {
    for (std::size_t i = 0; i < len; ++i) {
        y[i] += alpha * x[i];
    }
}

double modulus(const cplx& z) { return std::sqrt(z.real() * z.real() + z.imag() * z.imag()); }

void row_abs_sums_scalar(std::size_t m, std::size_t n, const cplx* a, double* out) {
    for (std::size_t i = 0; i < m; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += modulus(a[i * n + j]);
        out[i] = s;
    }
}

void col_abs_sums_scalar(std::size_t m, std::size_t n, const cplx* a, double* out) {
    std::fill(out, out + n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) out[j] += modulus(a[i * n + j]);
    }
}

double sum_sq_scalar(std::size_t len, const cplx* x) {
    double s = 0.0;
    for (std::size_t i = 0; i < len; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

constexpr KernelTable kScalar{
    "scalar", gemm_scalar, axpy_scalar, row_abs_sums_scalar, col_abs_sums_scalar, sum_sq_scalar,
};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace wep::kernels
