#include <cstdlib>
#include <vector>

#include "doctest.h"
#include "wep/kernels.hpp"
#include "wep/random.hpp"

using namespace wep;

namespace {

std::vector<cplx> flat(const CMatrix& a) { return {a.data().begin(), a.data().end()}; }

}  // namespace

TEST_CASE("simd kernels agree with the scalar reference") {
    const kernels::KernelTable* simd = kernels::avx2_table();
    if (!simd) {
        MESSAGE("AVX2 kernels not available on this build/CPU");
        return;
    }
    const kernels::KernelTable& ref = kernels::scalar_table();
    Rng rng(3);
    for (std::size_t m : {1u, 2u, 3u, 5u, 8u, 13u})
        for (std::size_t n : {1u, 2u, 3u, 7u, 16u}) {
            const std::size_t k = (m + n) % 6 + 1;
            const auto a = flat(random_gaussian(m, k, rng));
            const auto b = flat(random_gaussian(k, n, rng));
            std::vector<cplx> c1(m * n), c2(m * n);
            ref.gemm(m, n, k, a.data(), b.data(), c1.data());
            simd->gemm(m, n, k, a.data(), b.data(), c2.data());
            for (std::size_t i = 0; i < c1.size(); ++i) CHECK(std::abs(c1[i] - c2[i]) < 1e-13);

            const auto x = flat(random_gaussian(m, n, rng));
            auto y1 = flat(random_gaussian(m, n, rng));
            auto y2 = y1;
            ref.axpy(x.size(), cplx(0.3, -1.2), x.data(), y1.data());
            simd->axpy(x.size(), cplx(0.3, -1.2), x.data(), y2.data());
            for (std::size_t i = 0; i < y1.size(); ++i) CHECK(std::abs(y1[i] - y2[i]) < 1e-14);

            std::vector<double> r1(m), r2(m), k1(n), k2(n);
            ref.row_abs_sums(m, n, x.data(), r1.data());
            simd->row_abs_sums(m, n, x.data(), r2.data());
            ref.col_abs_sums(m, n, x.data(), k1.data());
            simd->col_abs_sums(m, n, x.data(), k2.data());
            for (std::size_t i = 0; i < m; ++i) CHECK(r1[i] == doctest::Approx(r2[i]).epsilon(1e-14));
            for (std::size_t j = 0; j < n; ++j) CHECK(k1[j] == doctest::Approx(k2[j]).epsilon(1e-14));
            CHECK(ref.sum_sq(x.size(), x.data()) == doctest::Approx(simd->sum_sq(x.size(), x.data())).epsilon(1e-14));
        }
}

TEST_CASE("active table is one of the known variants") {
    const auto name = kernels::active().name;
    CHECK((name == "scalar" || name == "avx2"));
}
