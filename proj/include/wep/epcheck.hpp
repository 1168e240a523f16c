#pragma once

// Weighted-EP decision: the direct commuting test is the oracle, and every
// equivalent characterization is evaluated independently and compared to it.
//
// Statement ids:
//   bc.ii .. bc.xiii    characterizations through a full-rank factorization a = b c
//   sa.ii .. sa.ix      characterizations through a^+ = s a = a t
//   swap.fe, swap.ee, swap.ff, swap.ee_ff
//                       weight-order symmetry
//   cstar               l2 congruences E^{-1} P^* E = P, F^{-1} P^* F = P with
//                       the block form of a and a^+ over range(P) + null(P)
//   canon               a = c p (p a p) p c^{-1} with c = 1, p = a a^+

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wep/factor.hpp"
#include "wep/hermitian.hpp"
#include "wep/matrix.hpp"
#include "wep/wmp.hpp"

namespace wep {

struct EpVerdict {
    bool ep = false;
    /// ‖a a^+ - a^+ a‖_F / (1 + ‖a a^+‖_F)
    double residual = 0.0;
    WmpResult wmp;
};

/// a^+_{e,f} exists and commutes with a. Throws Error if the weighted inverse
/// fails verification (cannot happen for l2 with valid weights).
EpVerdict is_weighted_ep(const CMatrix& a, const Weight& e, const Weight& f, const Tolerance& tol = {});

enum class Side {
    Left,      ///< target = X * generator
    Right,     ///< target = generator * X
    TwoSided,  ///< both
};

struct MembershipQuery {
    CMatrix target;
    Side side = Side::Right;
    CMatrix generator;
};

struct MembershipResult {
    bool solvable = false;
    /// Largest MP-projector residual among the requested sides.
    double residual = 0.0;
    /// MP-based witnesses for the requested sides.
    std::optional<CMatrix> right_witness;
    std::optional<CMatrix> left_witness;
};

MembershipResult membership_solvable(const MembershipQuery& q, const Tolerance& tol = {});

/// Searches the affine solution set of a one-sided query for a witness of full
/// rank (the witness space must be square). Returns the best witness found
/// and whether it has full rank.
struct RankedWitness {
    bool solvable = false;
    bool full_rank = false;
    double residual = 0.0;
    CMatrix witness;
};
RankedWitness full_rank_witness(const MembershipQuery& q, const Tolerance& tol = {});

/// target = left * Z * right, decided by consistency of the vectorized system
/// (right^T kron left) vec(Z) = vec(target).
struct SandwichResult {
    bool solvable = false;
    double residual = 0.0;
    CMatrix witness;
};
SandwichResult sandwich_solvable(const CMatrix& left, const CMatrix& right, const CMatrix& target,
                                 const Tolerance& tol = {});

struct Statement {
    std::string id;
    bool verdict = false;
    double residual = 0.0;
    std::vector<CMatrix> witnesses;
    std::string note;
};

struct EpReport {
    bool direct = false;
    double direct_residual = 0.0;
    std::vector<Statement> statements;
    bool consistent = false;

    /// Recomputes `consistent` from the current statements.
    void finalize();
    const Statement* find(std::string_view id) const;
    /// Appends other's statements and re-finalizes. Both must share `direct`.
    void merge(const EpReport& other);
};

/// a weighted EP with weights (e, h); f is the r x r middle weight of a = b c.
/// Throws Error if the factor parts fail verification.
EpReport ep_statement_suite_bc(const CMatrix& a, const FullRankFactorization& fr, const Weight& e, const Weight& f,
                               const Weight& h, const Tolerance& tol = {});

EpReport ep_statement_suite_sa(const CMatrix& a, const Weight& e, const Weight& f, const Tolerance& tol = {});

/// Verdicts for (f, e), (e, e), (f, f) and the conjunction (e, e) & (f, f).
EpReport weight_swap_suite(const CMatrix& a, const Weight& e, const Weight& f, const Tolerance& tol = {});

struct CongruenceResult {
    bool holds = false;
    double res_e = 0.0;      ///< E^{-1} P^* E vs P
    double res_f = 0.0;      ///< F^{-1} P^* F vs P
    double res_block = 0.0;  ///< a and a^+ vanish off range(P) + null(P) blocks
    bool t1_invertible = false;
    double residual() const noexcept;
};

/// With P = a a^+_{e,f}. Returns holds == false (rather than throwing) when a
/// is not weighted EP, so it can sit in a report next to the other suites.
CongruenceResult cstar_congruence_check(const CMatrix& a, const Weight& e, const Weight& f, const Tolerance& tol = {});

/// The canonical corner-algebra form evaluated as a predicate.
Statement canonical_form_statement(const CMatrix& a, const Weight& e, const Weight& f, const Tolerance& tol = {});

/// Every suite against the direct oracle. `f_mid` is the r x r middle weight
/// for the bc suite; identity when omitted.
EpReport ep_check_all(const CMatrix& a, const Weight& e, const Weight& f, const std::optional<Weight>& f_mid = {},
                      const Tolerance& tol = {});

/// Three-way equivalence for t = J (t1 + 0) J^{-1}, t' = J (t1^{-1} + 0) J^{-1}:
///   (i)   a^+_{e,f} exists and equals t'
///   (ii)  t is weighted EP and a^+_{e,f} == t'
///   (iii) J (I + 0) J^{-1} hermitian in A^e and J (0 + I) J^{-1} hermitian in A^f
struct BlockEquivalence {
    bool wmp_is_block_inverse = false;
    bool ep_with_block_inverse = false;
    bool idempotents_hermitian = false;
    CMatrix t;
    bool agree() const noexcept {
        return wmp_is_block_inverse == ep_with_block_inverse && ep_with_block_inverse == idempotents_hermitian;
    }
};
BlockEquivalence block_form_equivalence(const CMatrix& t1, const CMatrix& j, const Weight& e, const Weight& f,
                                        const Tolerance& tol = {});

enum class NonEpKind {
    Auto,      ///< chosen from the seed among the feasible kinds
    OffBlock,  ///< group invertible, but a a^# is oblique (needs 0 < rank < n)
    Nilpotent, ///< rank(a^2) < rank(a) (needs n - rank >= 2)
};

struct Instance {
    CMatrix a;
    Weight e;
    Weight f;
    /// The decomposition the matrix was synthesized from.
    CMatrix c;
    CMatrix p;
    bool ep = false;
};

/// Deterministic per seed. EP instances are c p core p c^{-1} with c p c^{-1}
/// hermitian in both weighted algebras; non-EP ones add an off-block or a
/// nilpotent term and reject draws within 10x residual of EP. `rank` is the
/// rank of the invertible core. Throws ShapeError for infeasible non-EP
/// requests (n = 1, or rank = n).
Instance generate_instance(std::size_t n, std::size_t rank, bool ep, std::uint64_t seed,
                           NonEpKind kind = NonEpKind::Auto, const Tolerance& tol = {});

}  // namespace wep
