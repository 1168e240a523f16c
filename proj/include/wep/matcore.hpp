#pragma once

// Dense kernels every other module consumes: induced norms, SVD and rank,
// Hermitian eigendecomposition, general eigenvalues, inverse/solve, the
// matrix exponential and the principal square root.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "wep/matrix.hpp"

namespace wep {

/// Base vector norm whose induced operator norm makes the matrices a normed algebra.
enum class NormKind { L1, L2, Linf };

std::string_view to_string(NormKind k);
/// Accepts "l1", "l2", "linf" (case-insensitive). Throws ShapeError otherwise.
NormKind parse_norm_kind(std::string_view s);

/// Ambient norm plus the t-samples used by the exp(ita) hermitian test.
struct NormContext {
    NormKind kind = NormKind::L2;
    std::vector<double> t_grid = default_t_grid();

    static std::vector<double> default_t_grid();
    static NormContext l2() { return {}; }
    static NormContext with(NormKind k) { return {k, default_t_grid()}; }

    /// Grid must be nonempty, contain both signs and some |t| >= 1.
    void validate() const;
};

/// Full SVD: a = u * diag(s) * vt, u m x m and vt n x n unitary, s descending.
struct SvdResult {
    CMatrix u;
    std::vector<double> s;
    CMatrix vt;
};

/// Hermitian eigendecomposition a = v * diag(w) * v^*, w ascending.
struct EighResult {
    std::vector<double> w;
    CMatrix v;
};

double op_norm(const CMatrix& a, NormKind kind);
inline double op_norm(const CMatrix& a, const NormContext& ctx) { return op_norm(a, ctx.kind); }

SvdResult svd(const CMatrix& a);

/// Number of singular values above rank_rel * s[0].
std::size_t rank(const CMatrix& a, const Tolerance& tol = {});
std::size_t rank_of(std::span<const double> s, const Tolerance& tol);

/// Orthonormal basis of range(a), n x rank.
CMatrix range_basis(const CMatrix& a, const Tolerance& tol = {});
/// Orthonormal basis of null(a), cols x (cols - rank).
CMatrix null_basis(const CMatrix& a, const Tolerance& tol = {});
/// Orthonormal basis (as columns) of the left null space {y : y^* a = 0}.
CMatrix left_null_basis(const CMatrix& a, const Tolerance& tol = {});
/// q q^* for a matrix with orthonormal columns.
CMatrix orth_projector(const CMatrix& q);
/// ‖P1 - P2‖_F for the orthogonal projectors onto span(q1), span(q2); both
/// arguments must have orthonormal columns. Zero iff the subspaces coincide.
double subspace_distance(const CMatrix& q1, const CMatrix& q2);

/// For (numerically) Hermitian input; the anti-Hermitian part is discarded.
EighResult eigh(const CMatrix& a);

/// Unordered eigenvalues via complex Schur iteration.
std::vector<cplx> eigenvalues(const CMatrix& a);

/// Throws SingularError when the smallest singular value is <= rank_rel * s[0].
CMatrix inverse(const CMatrix& a, const Tolerance& tol = {});
/// x with a * x = b; same singularity contract as inverse().
CMatrix solve(const CMatrix& a, const CMatrix& b, const Tolerance& tol = {});

/// Scaling and squaring with a degree-13 Padé approximant.
CMatrix mat_exp(const CMatrix& a);

/// Principal square root of a positive element. Throws NotPositiveError naming
/// the failed criterion when `a` is not positive in `ctx`.
CMatrix principal_sqrt(const CMatrix& a, const NormContext& ctx, const Tolerance& tol = {});

/// Kronecker product.
CMatrix kron(const CMatrix& a, const CMatrix& b);
/// Column-stacking vectorization, returned as a (rows*cols) x 1 matrix.
CMatrix vec(const CMatrix& a);

}  // namespace wep
