#pragma once

// Moore-Penrose, weighted Moore-Penrose and group inverses.
//
// The weighted inverse a^+_{e,f} of an m x n matrix uses e (m x m) on the
// codomain and f (n x n) on the domain. The candidate comes from the
// congruence formula f^{-1/2} (e^{1/2} a f^{-1/2})^+ e^{1/2}; every candidate
// is then re-verified against the four defining conditions
//
//   a s a = a,  s a s = s,  a s hermitian in A^e,  s a hermitian in A^f,
//
// so validity never rests on the formula alone.

#include <string>
#include <string_view>

#include "wep/hermitian.hpp"
#include "wep/matcore.hpp"
#include "wep/matrix.hpp"

namespace wep {

class NotGroupInvertibleError : public Error {
public:
    using Error::Error;
};

/// Idempotent witness rejected: names the equality or property that failed.
class WitnessError : public Error {
public:
    using Error::Error;
};

/// SVD-based pseudoinverse with the rank cutoff of `tol`.
CMatrix mp_inverse(const CMatrix& a, const Tolerance& tol = {});

enum class WmpStatus {
    Valid,
    Invalid,
    /// l1/linf only: the algebraic conditions hold but the sampled hermitian
    /// test failed, so existence is undetermined rather than refuted.
    Undetermined,
};

std::string_view to_string(WmpStatus s);

struct WmpResult {
    CMatrix pinv;
    double res_aba = 0.0;
    double res_bab = 0.0;
    /// Deviation of a * pinv from hermitian in A^e.
    double herm_left_dev = 0.0;
    /// Deviation of pinv * a from hermitian in A^f.
    double herm_right_dev = 0.0;
    WmpStatus status = WmpStatus::Invalid;

    bool valid() const noexcept { return status == WmpStatus::Valid; }
    double worst_residual() const noexcept;
};

/// Checks the four defining conditions for a candidate s.
WmpResult verify_wmp(const CMatrix& a, CMatrix s, const Weight& e, const Weight& f, const Tolerance& tol = {},
                     const NormContext& ctx = NormContext::l2());

WmpResult wmp_inverse(const CMatrix& a, const Weight& e, const Weight& f, const Tolerance& tol = {},
                      const NormContext& ctx = NormContext::l2());

/// Idempotents p (hermitian in A^e, range(p) = range(a)) and q (hermitian in
/// A^f, null(q) = null(a)).
struct IdempotentWitness {
    CMatrix p;
    CMatrix q;
};

/// Builds the witness directly from orthonormal bases of range(a) and null(a),
/// without going through any pseudoinverse.
IdempotentWitness idempotent_witness(const CMatrix& a, const Weight& e, const Weight& f, const Tolerance& tol = {});

/// The idempotent with range span(basis) that is hermitian in A^w (l2).
CMatrix hermitian_idempotent_onto(const CMatrix& basis, const Weight& w, const Tolerance& tol = {});

/// Solves a s = p, s = q s by inverting a restricted to range(q) onto range(p).
/// Throws WitnessError naming the first violated witness property.
WmpResult wmp_from_idempotents(const CMatrix& a, const IdempotentWitness& w, const Weight& e, const Weight& f,
                               const Tolerance& tol = {});

/// rank(a) == rank(a^2)
bool is_group_invertible(const CMatrix& a, const Tolerance& tol = {});

/// Group inverse through the core-nilpotent splitting C^n = range(a) + null(a).
/// Throws NotGroupInvertibleError when rank(a^2) < rank(a).
CMatrix group_inverse(const CMatrix& a, const Tolerance& tol = {});

struct DoubleDaggerResult {
    bool holds = false;
    /// rel_diff((a^+_{e,f})^+_{f,e}, a)
    double residual = 0.0;
};

/// (a^+_{e,f})^+_{f,e} == a. Note the swapped weight order on the outer inverse.
DoubleDaggerResult double_dagger_check(const CMatrix& a, const Weight& e, const Weight& f, const Tolerance& tol = {});

}  // namespace wep
