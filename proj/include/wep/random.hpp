#pragma once

// Seeded random matrices for instance generation and tests. Everything is a
// pure function of the generator state, so a fixed seed reproduces a run.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "wep/hermitian.hpp"
#include "wep/matrix.hpp"

namespace wep {

using Rng = std::mt19937_64;

/// Entries with independent N(0, 1/2) real and imaginary parts.
CMatrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng);

/// Haar-like unitary from the left singular vectors of a Gaussian matrix.
CMatrix random_unitary(std::size_t n, Rng& rng);

/// u diag(lambda) u^* with lambda uniform in [lo, hi].
CMatrix random_pd(std::size_t n, Rng& rng, double lo = 0.5, double hi = 2.0);

Weight random_weight(std::size_t n, Rng& rng, double lo = 0.5, double hi = 2.0);

/// m x n matrix of rank r with nonzero singular values uniform in [lo, hi].
CMatrix random_rank(std::size_t m, std::size_t n, std::size_t r, Rng& rng, double lo = 0.5, double hi = 2.0);

/// Integer in [lo, hi].
std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi);

/// Mixes a base seed with a stream index (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace wep
