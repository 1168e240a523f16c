// Compiled with -mavx2 -mfma. Nothing in here may run before the dispatcher has
// confirmed CPU support.

#include "wep/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace wep::kernels {
namespace {

// One __m256d holds two interleaved complex doubles: [re0, im0, re1, im1].

void gemm_avx2(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b,
               cplx* c) {
    const std::size_t n2 = n & ~std::size_t{1};
    for (std::size_t i = 0; i < m; ++i) {
        double* ci = reinterpret_cast<double*>(c + i * n);
        std::fill(c + i * n, c + (i + 1) * n, cplx{});
        for (std::size_t p = 0; p < k; ++p) {
            const double ar = a[i * k + p].real();
            const double ai = a[i * k + p].imag();
            const __m256d vr = _mm256_set1_pd(ar);
            const __m256d vi = _mm256_set1_pd(ai);
            const double* bp = reinterpret_cast<const double*>(b + p * n);
            std::size_t j = 0;
            for (; j < n2; j += 2) {
                const __m256d bv = _mm256_loadu_pd(bp + 2 * j);
                const __m256d bswap = _mm256_permute_pd(bv, 0b0101);
                // even lanes: ar*br - ai*bi, odd lanes: ar*bi + ai*br
                const __m256d prod = _mm256_fmaddsub_pd(vr, bv, _mm256_mul_pd(vi, bswap));
                const __m256d acc = _mm256_loadu_pd(ci + 2 * j);
                _mm256_storeu_pd(ci + 2 * j, _mm256_add_pd(acc, prod));
            }
            for (; j < n; ++j) {
                const double br = bp[2 * j];
                const double bi = bp[2 * j + 1];
                ci[2 * j] += ar * br - ai * bi;
                ci[2 * j + 1] += ar * bi + ai * br;
            }
        }
    }
}

void axpy_avx2(std::size_t len, cplx alpha, const cplx* x, cplx* y) {
    const __m256d vr = _mm256_set1_pd(alpha.real());
    const __m256d vi = _mm256_set1_pd(alpha.imag());
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    const std::size_t len2 = len & ~std::size_t{1};
    std::size_t i = 0;
    for (; i < len2; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        const __m256d xswap = _mm256_permute_pd(xv, 0b0101);
        const __m256d prod = _mm256_fmaddsub_pd(vr, xv, _mm256_mul_pd(vi, xswap));
        _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(_mm256_loadu_pd(yd + 2 * i), prod));
    }
    for (; i < len; ++i) y[i] += alpha * x[i];
}

// |z| for the two complex numbers packed in v, returned in lanes 0 and 2
// (lanes 1 and 3 hold the same values).
inline __m256d moduli(__m256d v) {
    const __m256d sq = _mm256_mul_pd(v, v);
    return _mm256_sqrt_pd(_mm256_hadd_pd(sq, sq));
}

double modulus(const cplx& z) { return std::sqrt(z.real() * z.real() + z.imag() * z.imag()); }

void row_abs_sums_avx2(std::size_t m, std::size_t n, const cplx* a, double* out) {
    const std::size_t n2 = n & ~std::size_t{1};
    for (std::size_t i = 0; i < m; ++i) {
        const double* row = reinterpret_cast<const double*>(a + i * n);
        __m256d acc = _mm256_setzero_pd();
        std::size_t j = 0;
        for (; j < n2; j += 2) acc = _mm256_add_pd(acc, moduli(_mm256_loadu_pd(row + 2 * j)));
        alignas(32) double lanes[4];
        _mm256_store_pd(lanes, acc);
        double s = lanes[0] + lanes[2];
        for (; j < n; ++j) s += modulus(a[i * n + j]);
        out[i] = s;
    }
}

void col_abs_sums_avx2(std::size_t m, std::size_t n, const cplx* a, double* out) {
    std::fill(out, out + n, 0.0);
    const std::size_t n2 = n & ~std::size_t{1};
    alignas(32) double lanes[4];
    for (std::size_t i = 0; i < m; ++i) {
        const double* row = reinterpret_cast<const double*>(a + i * n);
        std::size_t j = 0;
        for (; j < n2; j += 2) {
            _mm256_store_pd(lanes, moduli(_mm256_loadu_pd(row + 2 * j)));
            out[j] += lanes[0];
            out[j + 1] += lanes[2];
        }
        for (; j < n; ++j) out[j] += modulus(a[i * n + j]);
    }
}

double sum_sq_avx2(std::size_t len, const cplx* x) {
    const double* xd = reinterpret_cast<const double*>(x);
    const std::size_t total = 2 * len;
    const std::size_t total4 = total & ~std::size_t{3};
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i < total4; i += 4) {
        const __m256d v = _mm256_loadu_pd(xd + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < total; ++i) s += xd[i] * xd[i];
    return s;
}

constexpr KernelTable kAvx2{
    "avx2", gemm_avx2, axpy_avx2, row_abs_sums_avx2, col_abs_sums_avx2, sum_sq_avx2,
};

}  // namespace

const KernelTable* avx2_table_unchecked() noexcept { return &kAvx2; }

}  // namespace wep::kernels
