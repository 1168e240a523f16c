#pragma once

// Factorizations: full-rank a = b c with the weighted reverse-order law, the
// block form a = J (T1 + 0) J^{-1} of a weighted-EP matrix, and the canonical
// corner-algebra form a = c p (p a p) p c^{-1}.

#include <cstddef>

#include "wep/hermitian.hpp"
#include "wep/matrix.hpp"
#include "wep/wmp.hpp"

namespace wep {

class NotWeightedEpError : public Error {
public:
    using Error::Error;
};

/// A supplied decomposition violates one of its stated preconditions.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// a = b c with b (n x r) of full column rank and c (r x n) of full row rank.
struct FullRankFactorization {
    CMatrix b;
    CMatrix c;
    std::size_t r = 0;

    /// a == 0: both factors are empty.
    bool degenerate() const noexcept { return r == 0; }
};

/// SVD based: b = u_r diag(s_r), c = vt_r.
FullRankFactorization full_rank_factorize(const CMatrix& a, const Tolerance& tol = {});

/// b^+_{e,f} and c^+_{f,h}, each computed directly from its own factor and
/// then cross-checked against the a^+_{e,h} expressions c a^+ and a^+ b.
struct FactorParts {
    CMatrix b_dag;
    CMatrix c_dag;
    WmpResult b_wmp;
    WmpResult c_wmp;
    WmpResult a_wmp;
    double res_left_identity = 0.0;   ///< ‖b^+ b - I_r‖ (relative)
    double res_right_identity = 0.0;  ///< ‖c c^+ - I_r‖ (relative)
    double res_b_dag_route = 0.0;     ///< b^+ vs c a^+
    double res_c_dag_route = 0.0;     ///< c^+ vs a^+ b
    bool valid = false;

    double worst_residual() const noexcept;
};

/// Weights: e, h are n x n (codomain and domain of a), f is r x r.
FactorParts factor_parts_wmp(const CMatrix& a, const FullRankFactorization& fr, const Weight& e, const Weight& f,
                             const Weight& h, const Tolerance& tol = {});

struct ReverseOrderReport {
    CMatrix product;             ///< c^+ b^+
    double res_direct = 0.0;     ///< c^+ b^+ vs a^+_{e,h}
    double res_range_side = 0.0; ///< a a^+ vs b b^+
    double res_domain_side = 0.0;///< a^+ a vs c^+ c
    double res_a_c_dag = 0.0;    ///< a c^+ vs b
    double res_b_dag_a = 0.0;    ///< b^+ a vs c
    bool holds = false;

    double worst_residual() const noexcept;
};

/// c^+_{f,h} b^+_{e,f} against the directly computed a^+_{e,h}. holds == false
/// means an invariant of the construction was violated upstream.
ReverseOrderReport reverse_order_wmp(const CMatrix& a, const FullRankFactorization& fr, const FactorParts& parts,
                                     const Tolerance& tol = {});

/// a = J (T1 + 0) J^{-1} with J = [x1 | x2] built from bases of range(p) and
/// null(p), p = a a^+_{e,f}.
struct EpBlockDecomposition {
    CMatrix x1_basis;
    CMatrix x2_basis;
    CMatrix t1;
    CMatrix j;
    CMatrix j_inv;
    double res_reconstruct = 0.0;  ///< J (T1 + 0) J^{-1} vs a
    double res_pinv = 0.0;         ///< J (T1^{-1} + 0) J^{-1} vs a^+_{e,f}
    double herm_q1_dev = 0.0;      ///< J (I + 0) J^{-1} in A^e
    double herm_q2_dev = 0.0;      ///< J (0 + I) J^{-1} in A^f
    bool t1_invertible = false;
    bool verified = false;
};

/// Throws NotWeightedEpError when a is not weighted EP with weights e, f.
EpBlockDecomposition ep_block_decomposition(const CMatrix& a, const Weight& e, const Weight& f,
                                            const Tolerance& tol = {});

/// a = c p (p a p) p c^{-1}, p idempotent, c p c^{-1} hermitian in A^e and A^f,
/// p a p invertible in the corner algebra pAp.
struct EpDecomposition {
    CMatrix c;
    CMatrix p;
    CMatrix core;
    CMatrix core_inv;  ///< inverse of core in pAp
    double res_idempotent = 0.0;
    double res_reconstruct = 0.0;
    double herm_e_dev = 0.0;
    double herm_f_dev = 0.0;
    double res_corner = 0.0;
    /// p == 0, so the corner algebra is {0}.
    bool degenerate = false;
    bool verified = false;
};

/// Returns c = 1, p = a a^+_{e,f}, core = p a p. Throws NotWeightedEpError.
EpDecomposition canonical_ep_decomposition(const CMatrix& a, const Weight& e, const Weight& f,
                                           const Tolerance& tol = {});

/// x = p x p with (p a p) x = x (p a p) = p. Throws SingularError when p a p is
/// not invertible in the corner algebra.
CMatrix pAp_inverse(const CMatrix& a, const CMatrix& p, const Tolerance& tol = {});

/// a = c p core_seed p c^{-1}. Throws PreconditionError naming the failed
/// condition (c singular, p not idempotent, c p c^{-1} not hermitian in A^e or
/// A^f, corner not invertible).
CMatrix ep_synthesize_from_decomposition(const CMatrix& c, const CMatrix& p, const CMatrix& core_seed,
                                         const Weight& e, const Weight& f, const Tolerance& tol = {});

/// Predicate form of t = s (t1 + 0) u with s injective, u surjective and an
/// idempotent p hermitian in A^e and A^f with range(p) = s(X1 + 0) and
/// null(p) = u^{-1}(0 + X2). X1 has dimension t1.rows().
struct InjSurjFormReport {
    double res_factor = 0.0;
    bool s_injective = false;
    bool u_surjective = false;
    bool t1_invertible = false;
    double res_idempotent = 0.0;
    double herm_e_dev = 0.0;
    double herm_f_dev = 0.0;
    double range_gap = 0.0;
    double null_gap = 0.0;
    bool holds = false;
};

InjSurjFormReport check_injective_surjective_form(const CMatrix& t, const CMatrix& t1, const CMatrix& s,
                                                  const CMatrix& u, const CMatrix& p, const Weight& e,
                                                  const Weight& f, const Tolerance& tol = {});

}  // namespace wep
