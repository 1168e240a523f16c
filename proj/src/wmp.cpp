#include "wep/wmp.hpp"

#include <algorithm>
#include <cmath>

namespace wep {

std::string_view to_string(WmpStatus s) {
    switch (s) {
        case WmpStatus::Valid: return "valid";
        case WmpStatus::Invalid: return "invalid";
        case WmpStatus::Undetermined: return "undetermined";
    }
    return "?";
}

double WmpResult::worst_residual() const noexcept {
    return std::max({res_aba, res_bab, herm_left_dev, herm_right_dev});
}

CMatrix mp_inverse(const CMatrix& a, const Tolerance& tol) {
    const SvdResult d = svd(a);
    const std::size_t r = rank_of(d.s, tol);
    CMatrix v = d.vt.rows_range(0, r).adjoint();  // n x r
    for (std::size_t j = 0; j < r; ++j) {
        const double inv = 1.0 / d.s[j];
        for (std::size_t i = 0; i < v.rows(); ++i) v(i, j) *= inv;
    }
    return v * d.u.cols_range(0, r).adjoint();
}

WmpResult verify_wmp(const CMatrix& a, CMatrix s, const Weight& e, const Weight& f, const Tolerance& tol,
                     const NormContext& ctx) {
    if (s.rows() != a.cols() || s.cols() != a.rows()) {
        throw ShapeError("verify_wmp: candidate " + shape_str(s) + " for " + shape_str(a));
    }
    if (e.size() != a.rows() || f.size() != a.cols()) {
        throw ShapeError("weighted inverse: weights must be " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.rows()) + " (codomain) and " + std::to_string(a.cols()) + "x" +
                         std::to_string(a.cols()) + " (domain)");
    }
    WmpResult r;
    const CMatrix as = a * s;
    const CMatrix sa = s * a;
    r.res_aba = rel_diff(as * a, a);
    r.res_bab = rel_diff(s * as, s);
    r.herm_left_dev = is_hermitian_weighted(as, e, ctx, tol).deviation;
    r.herm_right_dev = is_hermitian_weighted(sa, f, ctx, tol).deviation;
    r.pinv = std::move(s);

    const bool algebraic = r.res_aba <= tol.residual_rel && r.res_bab <= tol.residual_rel;
    const double herm_cut = ctx.kind == NormKind::L2 ? tol.residual_rel : tol.herm_abs;
    const bool herm = r.herm_left_dev <= herm_cut && r.herm_right_dev <= herm_cut;
    if (algebraic && herm) {
        r.status = WmpStatus::Valid;
    } else if (algebraic && ctx.kind != NormKind::L2) {
        r.status = WmpStatus::Undetermined;
    } else {
        r.status = WmpStatus::Invalid;
    }
    return r;
}

WmpResult wmp_inverse(const CMatrix& a, const Weight& e, const Weight& f, const Tolerance& tol,
                      const NormContext& ctx) {
    if (e.size() != a.rows() || f.size() != a.cols()) {
        throw ShapeError("wmp_inverse: weights " + std::to_string(e.size()) + "/" + std::to_string(f.size()) +
                         " do not match " + shape_str(a));
    }
    const CMatrix scaled = e.half() * a * f.half_inv();
    CMatrix s = f.half_inv() * mp_inverse(scaled, tol) * e.half();
    return verify_wmp(a, std::move(s), e, f, tol, ctx);
}

CMatrix hermitian_idempotent_onto(const CMatrix& basis, const Weight& w, const Tolerance& tol) {
    if (basis.rows() != w.size()) throw ShapeError("hermitian_idempotent_onto: basis/weight size mismatch");
    const CMatrix q = range_basis(w.half() * basis, tol);
    if (q.cols() == 0) return CMatrix(w.size(), w.size());
    if (q.cols() == w.size()) return CMatrix::identity(w.size());
    return w.half_inv() * orth_projector(q) * w.half();
}

IdempotentWitness idempotent_witness(const CMatrix& a, const Weight& e, const Weight& f, const Tolerance& tol) {
    if (e.size() != a.rows() || f.size() != a.cols()) throw ShapeError("idempotent_witness: weight sizes");
    IdempotentWitness w;
    w.p = hermitian_idempotent_onto(range_basis(a, tol), e, tol);
    w.q = CMatrix::identity(a.cols()) - hermitian_idempotent_onto(null_basis(a, tol), f, tol);
    return w;
}

WmpResult wmp_from_idempotents(const CMatrix& a, const IdempotentWitness& w, const Weight& e, const Weight& f,
                               const Tolerance& tol) {
    const std::size_t m = a.rows(), n = a.cols();
    if (w.p.rows() != m || w.p.cols() != m || w.q.rows() != n || w.q.cols() != n) {
        throw ShapeError("wmp_from_idempotents: witness shapes do not match " + shape_str(a));
    }
    if (rel_diff(w.p * w.p, w.p) > tol.residual_rel) throw WitnessError("witness: p is not idempotent");
    if (rel_diff(w.q * w.q, w.q) > tol.residual_rel) throw WitnessError("witness: q is not idempotent");
    const NormContext l2 = NormContext::l2();
    if (!is_hermitian_weighted(w.p, e, l2, tol).hermitian) throw WitnessError("witness: p is not hermitian in A^e");
    if (!is_hermitian_weighted(w.q, f, l2, tol).hermitian) throw WitnessError("witness: q is not hermitian in A^f");

    const CMatrix range_p = range_basis(w.p, tol);
    const CMatrix range_a = range_basis(a, tol);
    if (range_p.cols() != range_a.cols() || subspace_distance(range_p, range_a) > tol.residual_rel * (1.0 + m)) {
        throw WitnessError("witness: range(p) != range(a)");
    }
    const CMatrix null_q = null_basis(w.q, tol);
    const CMatrix null_a = null_basis(a, tol);
    if (null_q.cols() != null_a.cols() || subspace_distance(null_q, null_a) > tol.residual_rel * (1.0 + n)) {
        throw WitnessError("witness: null(q) != null(a)");
    }

    // a maps range(q) bijectively onto range(p); invert that restriction.
    const CMatrix range_q = range_basis(w.q, tol);
    const CMatrix restricted = range_p.adjoint() * a * range_q;
    CMatrix s;
    try {
        s = range_q * solve(restricted, range_p.adjoint() * w.p, tol);
    } catch (const SingularError&) {
        throw WitnessError("witness: a restricted to range(q) is not invertible onto range(p)");
    }
    return verify_wmp(a, std::move(s), e, f, tol);
}

bool is_group_invertible(const CMatrix& a, const Tolerance& tol) {
    require_square(a, "is_group_invertible");
    return rank(a, tol) == rank(a * a, tol);
}

CMatrix group_inverse(const CMatrix& a, const Tolerance& tol) {
    require_square(a, "group_inverse");
    const std::size_t n = a.rows();
    const std::size_t r = rank(a, tol);
    if (rank(a * a, tol) != r) {
        throw NotGroupInvertibleError("group inverse does not exist: rank(a^2) < rank(a)");
    }
    if (r == 0) return CMatrix(n, n);
    const CMatrix j = hstack(range_basis(a, tol), null_basis(a, tol));
    CMatrix j_inv;
    try {
        j_inv = inverse(j, tol);
    } catch (const SingularError&) {
        throw NotGroupInvertibleError("group inverse does not exist: range(a) and null(a) are not complementary");
    }
    const CMatrix core = (j_inv * a * j).block(0, 0, r, r);
    CMatrix core_inv;
    try {
        core_inv = inverse(core, tol);
    } catch (const SingularError&) {
        throw NotGroupInvertibleError("group inverse does not exist: core block is singular");
    }
    return j * block_diag(core_inv, CMatrix(n - r, n - r)) * j_inv;
}

DoubleDaggerResult double_dagger_check(const CMatrix& a, const Weight& e, const Weight& f, const Tolerance& tol) {
    const WmpResult inner = wmp_inverse(a, e, f, tol);
    const WmpResult outer = wmp_inverse(inner.pinv, f, e, tol);
    DoubleDaggerResult r;
    r.residual = rel_diff(outer.pinv, a);
    r.holds = inner.valid() && outer.valid() && r.residual <= tol.residual_rel;
    return r;
}

}  // namespace wep
