#pragma once

// Hermitian and positive elements of the matrix algebra under an induced
// norm, and the weighted algebras A^u with norm ‖u^{1/2} x u^{-1/2}‖.
//
// For l2 the exact test is a = a^* (hermitian == self-adjoint in a C*-algebra).
// For l1/linf the only decision procedure is the sampled criterion
// max_t |‖exp(ita)‖ - 1| <= herm_abs over the context's t_grid. It is sound
// to tolerance but can be optimistic: the grid cannot rule out growth between
// samples.

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "wep/matcore.hpp"
#include "wep/matrix.hpp"

namespace wep {

struct HermitianVerdict {
    bool hermitian = false;
    /// Deviation of the deciding criterion: relative ‖a - a^*‖_F for l2,
    /// max_t |‖exp(ita)‖ - 1| otherwise.
    double deviation = 0.0;
};

HermitianVerdict is_hermitian(const CMatrix& a, const NormContext& ctx, const Tolerance& tol = {});

/// max over ctx.t_grid of |‖exp(ita)‖ - 1| in the context's norm. Advisory
/// for l2, decisive for l1/linf.
double sampled_hermitian_deviation(const CMatrix& a, const NormContext& ctx);

struct PositivityVerdict {
    bool positive = false;
    /// Empty when positive; otherwise names the criterion that failed.
    std::string failed_criterion;
    HermitianVerdict hermitian;
    double min_real = std::numeric_limits<double>::quiet_NaN();
    double max_abs_imag = std::numeric_limits<double>::quiet_NaN();
};

/// Positive == hermitian with spectrum in [0, inf).
PositivityVerdict check_positive(const CMatrix& a, const NormContext& ctx, const Tolerance& tol = {});
inline bool is_positive(const CMatrix& a, const NormContext& ctx, const Tolerance& tol = {}) {
    return check_positive(a, ctx, tol).positive;
}

/// Positive invertible weight with cached square roots. Immutable.
class Weight {
public:
    /// Validates positivity and invertibility in `ctx`; throws NotPositiveError
    /// naming the failed criterion.
    static Weight make(CMatrix u, const NormContext& ctx = NormContext::l2(), const Tolerance& tol = {});
    static Weight identity(std::size_t n);

    const CMatrix& u() const noexcept { return u_; }
    const CMatrix& half() const noexcept { return half_; }
    const CMatrix& half_inv() const noexcept { return half_inv_; }
    const CMatrix& inv() const noexcept { return inv_; }
    std::size_t size() const noexcept { return u_.rows(); }

private:
    Weight(CMatrix u, CMatrix half, CMatrix half_inv, CMatrix inv)
        : u_(std::move(u)), half_(std::move(half)), half_inv_(std::move(half_inv)), inv_(std::move(inv)) {}

    CMatrix u_;
    CMatrix half_;
    CMatrix half_inv_;
    CMatrix inv_;
};

/// u^{1/2} x u^{-1/2}
CMatrix weighted_similarity(const CMatrix& x, const Weight& w);

/// ‖x‖_u = op_norm(u^{1/2} x u^{-1/2}).
double weighted_norm(const CMatrix& x, const Weight& w, const NormContext& ctx);

struct WeightedHermitianVerdict {
    bool hermitian = false;
    /// Deviation of is_hermitian(u^{1/2} x u^{-1/2}, ctx).
    double deviation = 0.0;
    /// l2 only: relative ‖u^{-1} x^* u - x‖_F. NaN for other norms.
    double congruence_deviation = std::numeric_limits<double>::quiet_NaN();
    /// l2 only: whether the congruence route reaches the same verdict.
    bool routes_agree = true;
};

/// x hermitian in the weighted algebra (A^u, ‖.‖_u).
WeightedHermitianVerdict is_hermitian_weighted(const CMatrix& x, const Weight& w, const NormContext& ctx,
                                               const Tolerance& tol = {});

/// Boundary samples of the field of values {v^* a v : ‖v‖_2 = 1}: for each of
/// `samples` equally spaced angles, the Rayleigh quotient of the top
/// eigenvector of the hermitian part of e^{i theta} a.
std::vector<cplx> numerical_range(const CMatrix& a, std::size_t samples);

}  // namespace wep
