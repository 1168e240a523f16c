#pragma once

// Data-parallel inner loops behind CMatrix arithmetic and the induced norms.
//
// Every kernel has a portable scalar reference and, where the build and the
// CPU allow it, an AVX2/FMA variant. The active table is picked once at first
// use; WEP_KERNELS=scalar|avx2|auto in the environment overrides the choice.

#include <complex>
#include <cstddef>
#include <string_view>

namespace wep::kernels {

using cplx = std::complex<double>;

struct KernelTable {
    std::string_view name;

    /// c[m x n] = a[m x k] * b[k x n], all row-major and densely packed.
    void (*gemm)(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b,
                 cplx* c);

    /// y[i] += alpha * x[i]
    void (*axpy)(std::size_t len, cplx alpha, const cplx* x, cplx* y);

    /// out[i] = sum_j |a(i, j)| for a row-major m x n matrix.
    void (*row_abs_sums)(std::size_t m, std::size_t n, const cplx* a, double* out);

    /// out[j] = sum_i |a(i, j)| for a row-major m x n matrix.
    void (*col_abs_sums)(std::size_t m, std::size_t n, const cplx* a, double* out);

    /// sum_i |x[i]|^2
    double (*sum_sq)(std::size_t len, const cplx* x);
};

const KernelTable& scalar_table() noexcept;

/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table() noexcept;

/// Table used by CMatrix and matcore.
const KernelTable& active() noexcept;

}  // namespace wep::kernels
