#include "wep/random.hpp"

#include <cmath>

#include "wep/matcore.hpp"

namespace wep {

CMatrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng) {
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
    CMatrix m(rows, cols);
    for (auto& z : m.data()) {
        const double re = nd(rng);
        const double im = nd(rng);
        z = {re, im};
    }
    return m;
}

CMatrix random_unitary(std::size_t n, Rng& rng) {
    if (n == 0) return CMatrix();
    return svd(random_gaussian(n, n, rng)).u;
}

CMatrix random_pd(std::size_t n, Rng& rng, double lo, double hi) {
    std::uniform_real_distribution<double> ud(lo, hi);
    const CMatrix u = random_unitary(n, rng);
    CMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = ud(rng);
    const CMatrix p = u * d * u.adjoint();
    return 0.5 * (p + p.adjoint());
}

Weight random_weight(std::size_t n, Rng& rng, double lo, double hi) {
    return Weight::make(random_pd(n, rng, lo, hi));
}

CMatrix random_rank(std::size_t m, std::size_t n, std::size_t r, Rng& rng, double lo, double hi) {
    if (r > std::min(m, n)) throw ShapeError("random_rank: rank exceeds dimensions");
    std::uniform_real_distribution<double> ud(lo, hi);
    const CMatrix u = random_unitary(m, rng);
    const CMatrix v = random_unitary(n, rng);
    CMatrix s(m, n);
    for (std::size_t i = 0; i < r; ++i) s(i, i) = ud(rng);
    return u * s * v.adjoint();
}

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace wep
