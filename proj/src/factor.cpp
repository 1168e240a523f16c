#include "wep/factor.hpp"

#include <algorithm>

#include "wep/epcheck.hpp"

namespace wep {

FullRankFactorization full_rank_factorize(const CMatrix& a, const Tolerance& tol) {
    const SvdResult d = svd(a);
    FullRankFactorization fr;
    fr.r = rank_of(d.s, tol);
    fr.b = d.u.cols_range(0, fr.r);
    for (std::size_t j = 0; j < fr.r; ++j)
        for (std::size_t i = 0; i < fr.b.rows(); ++i) fr.b(i, j) *= d.s[j];
    fr.c = d.vt.rows_range(0, fr.r);
    return fr;
}

double FactorParts::worst_residual() const noexcept {
    return std::max({b_wmp.worst_residual(), c_wmp.worst_residual(), a_wmp.worst_residual(), res_left_identity,
                     res_right_identity, res_b_dag_route, res_c_dag_route});
}

FactorParts factor_parts_wmp(const CMatrix& a, const FullRankFactorization& fr, const Weight& e, const Weight& f,
                             const Weight& h, const Tolerance& tol) {
    if (fr.b.rows() != a.rows() || fr.c.cols() != a.cols() || fr.b.cols() != fr.r || fr.c.rows() != fr.r) {
        throw ShapeError("factor_parts_wmp: factorization shapes do not match " + shape_str(a));
    }
    if (f.size() != fr.r) {
        throw ShapeError("factor_parts_wmp: middle weight must be " + std::to_string(fr.r) + "x" + std::to_string(fr.r));
    }
    FactorParts out;
    out.a_wmp = wmp_inverse(a, e, h, tol);
    out.b_wmp = wmp_inverse(fr.b, e, f, tol);
    out.c_wmp = wmp_inverse(fr.c, f, h, tol);
    out.b_dag = out.b_wmp.pinv;
    out.c_dag = out.c_wmp.pinv;

    const CMatrix id_r = CMatrix::identity(fr.r);
    out.res_left_identity = rel_diff(out.b_dag * fr.b, id_r);
    out.res_right_identity = rel_diff(fr.c * out.c_dag, id_r);
    out.res_b_dag_route = rel_diff(out.b_dag, fr.c * out.a_wmp.pinv);
    out.res_c_dag_route = rel_diff(out.c_dag, out.a_wmp.pinv * fr.b);

    out.valid = out.a_wmp.valid() && out.b_wmp.valid() && out.c_wmp.valid() &&
                std::max({out.res_left_identity, out.res_right_identity, out.res_b_dag_route, out.res_c_dag_route}) <=
                    tol.residual_rel;
    return out;
}

double ReverseOrderReport::worst_residual() const noexcept {
    return std::max({res_direct, res_range_side, res_domain_side, res_a_c_dag, res_b_dag_a});
}

ReverseOrderReport reverse_order_wmp(const CMatrix& a, const FullRankFactorization& fr, const FactorParts& parts,
                                     const Tolerance& tol) {
    ReverseOrderReport r;
    const CMatrix& a_dag = parts.a_wmp.pinv;
    r.product = parts.c_dag * parts.b_dag;
    r.res_direct = rel_diff(r.product, a_dag);
    r.res_range_side = rel_diff(a * a_dag, fr.b * parts.b_dag);
    r.res_domain_side = rel_diff(a_dag * a, parts.c_dag * fr.c);
    r.res_a_c_dag = rel_diff(a * parts.c_dag, fr.b);
    r.res_b_dag_a = rel_diff(parts.b_dag * a, fr.c);
    r.holds = parts.valid && r.worst_residual() <= tol.residual_rel;
    return r;
}

EpBlockDecomposition ep_block_decomposition(const CMatrix& a, const Weight& e, const Weight& f,
                                            const Tolerance& tol) {
    require_square(a, "ep_block_decomposition");
    const EpVerdict ev = is_weighted_ep(a, e, f, tol);
    if (!ev.ep) throw NotWeightedEpError("ep_block_decomposition: matrix is not weighted EP with the given weights");

    const std::size_t n = a.rows();
    const CMatrix& a_dag = ev.wmp.pinv;
    const CMatrix p = a * a_dag;
    const SvdResult d = svd(p);
    const std::size_t r = rank_of(d.s, tol);

    EpBlockDecomposition out;
    out.x1_basis = d.u.cols_range(0, r);
    out.x2_basis = d.vt.rows_range(r, n - r).adjoint();
    out.j = hstack(out.x1_basis, out.x2_basis);
    out.j_inv = inverse(out.j, tol);
    out.t1 = (out.j_inv * a * out.j).block(0, 0, r, r);
    out.t1_invertible = r == 0 || rank(out.t1, tol) == r;

    const CMatrix zero_tail(n - r, n - r);
    out.res_reconstruct = rel_diff(out.j * block_diag(out.t1, zero_tail) * out.j_inv, a);
    if (out.t1_invertible) {
        const CMatrix t1_inv = r == 0 ? CMatrix() : inverse(out.t1, tol);
        out.res_pinv = rel_diff(out.j * block_diag(t1_inv, zero_tail) * out.j_inv, a_dag);
    } else {
        out.res_pinv = 1.0;
    }
    const CMatrix q1 = out.j * block_diag(CMatrix::identity(r), zero_tail) * out.j_inv;
    const CMatrix q2 = out.j * block_diag(CMatrix(r, r), CMatrix::identity(n - r)) * out.j_inv;
    const NormContext l2 = NormContext::l2();
    const auto h1 = is_hermitian_weighted(q1, e, l2, tol);
    const auto h2 = is_hermitian_weighted(q2, f, l2, tol);
    out.herm_q1_dev = h1.deviation;
    out.herm_q2_dev = h2.deviation;
    out.verified = out.t1_invertible && h1.hermitian && h2.hermitian &&
                   std::max(out.res_reconstruct, out.res_pinv) <= tol.residual_rel;
    return out;
}

CMatrix pAp_inverse(const CMatrix& a, const CMatrix& p, const Tolerance& tol) {
    require_square(a, "pAp_inverse");
    require_same_shape(a, p, "pAp_inverse");
    if (rel_diff(p * p, p) > tol.residual_rel) throw PreconditionError("pAp_inverse: p is not idempotent");
    const std::size_t n = a.rows();
    const CMatrix x1 = range_basis(p, tol);
    if (x1.cols() == 0) return CMatrix(n, n);
    // p = x1 k with k = x1^* p; p a p acts on range(p) as k a x1 in x1-coordinates.
    const CMatrix k = x1.adjoint() * p;
    const CMatrix restricted = k * a * x1;
    try {
        return x1 * inverse(restricted, tol) * k;
    } catch (const SingularError&) {
        throw SingularError("pAp_inverse: p a p is not invertible in the corner algebra pAp");
    }
}

EpDecomposition canonical_ep_decomposition(const CMatrix& a, const Weight& e, const Weight& f,
                                           const Tolerance& tol) {
    require_square(a, "canonical_ep_decomposition");
    const EpVerdict ev = is_weighted_ep(a, e, f, tol);
    if (!ev.ep) throw NotWeightedEpError("canonical_ep_decomposition: matrix is not weighted EP with the given weights");

    const std::size_t n = a.rows();
    EpDecomposition out;
    out.c = CMatrix::identity(n);
    out.p = a * ev.wmp.pinv;
    out.core = out.p * a * out.p;
    out.degenerate = rank(out.p, tol) == 0;
    out.res_idempotent = rel_diff(out.p * out.p, out.p);
    // c = 1, so c p a p c^{-1} = p a p.
    out.res_reconstruct = rel_diff(out.core, a);

    const NormContext l2 = NormContext::l2();
    const auto he = is_hermitian_weighted(out.p, e, l2, tol);
    const auto hf = is_hermitian_weighted(out.p, f, l2, tol);
    out.herm_e_dev = he.deviation;
    out.herm_f_dev = hf.deviation;

    bool corner_ok = true;
    try {
        out.core_inv = pAp_inverse(a, out.p, tol);
        out.res_corner = std::max(rel_diff(out.core * out.core_inv, out.p), rel_diff(out.core_inv * out.core, out.p));
    } catch (const SingularError&) {
        corner_ok = false;
        out.res_corner = 1.0;
    }
    out.verified = corner_ok && he.hermitian && hf.hermitian &&
                   std::max({out.res_idempotent, out.res_reconstruct, out.res_corner}) <= tol.residual_rel;
    return out;
}

CMatrix ep_synthesize_from_decomposition(const CMatrix& c, const CMatrix& p, const CMatrix& core_seed,
                                         const Weight& e, const Weight& f, const Tolerance& tol) {
    require_square(c, "ep_synthesize_from_decomposition");
    require_same_shape(c, p, "ep_synthesize_from_decomposition");
    require_same_shape(c, core_seed, "ep_synthesize_from_decomposition");
    CMatrix c_inv;
    try {
        c_inv = inverse(c, tol);
    } catch (const SingularError&) {
        throw PreconditionError("ep_synthesize_from_decomposition: c is not invertible");
    }
    if (rel_diff(p * p, p) > tol.residual_rel) {
        throw PreconditionError("ep_synthesize_from_decomposition: p is not idempotent");
    }
    const CMatrix conj_p = c * p * c_inv;
    const NormContext l2 = NormContext::l2();
    if (!is_hermitian_weighted(conj_p, e, l2, tol).hermitian) {
        throw PreconditionError("ep_synthesize_from_decomposition: c p c^{-1} is not hermitian in A^e");
    }
    if (!is_hermitian_weighted(conj_p, f, l2, tol).hermitian) {
        throw PreconditionError("ep_synthesize_from_decomposition: c p c^{-1} is not hermitian in A^f");
    }
    try {
        (void)pAp_inverse(core_seed, p, tol);
    } catch (const SingularError&) {
        throw PreconditionError("ep_synthesize_from_decomposition: p core p is not invertible in pAp");
    }
    return c * p * core_seed * p * c_inv;
}

InjSurjFormReport check_injective_surjective_form(const CMatrix& t, const CMatrix& t1, const CMatrix& s,
                                                  const CMatrix& u, const CMatrix& p, const Weight& e,
                                                  const Weight& f, const Tolerance& tol) {
    require_square(t, "check_injective_surjective_form");
    require_square(t1, "check_injective_surjective_form");
    const std::size_t n = t.rows();
    const std::size_t k = s.cols();
    const std::size_t r = t1.rows();
    if (s.rows() != n || u.rows() != k || u.cols() != n || r > k || p.rows() != n || p.cols() != n) {
        throw ShapeError("check_injective_surjective_form: incompatible shapes");
    }
    InjSurjFormReport out;
    out.res_factor = rel_diff(s * block_diag(t1, CMatrix(k - r, k - r)) * u, t);
    out.s_injective = rank(s, tol) == k;
    out.u_surjective = rank(u, tol) == k;
    out.t1_invertible = r == 0 || rank(t1, tol) == r;
    out.res_idempotent = rel_diff(p * p, p);
    const NormContext l2 = NormContext::l2();
    const auto he = is_hermitian_weighted(p, e, l2, tol);
    const auto hf = is_hermitian_weighted(p, f, l2, tol);
    out.herm_e_dev = he.deviation;
    out.herm_f_dev = hf.deviation;

    const CMatrix range_p = range_basis(p, tol);
    const CMatrix range_s1 = range_basis(s.cols_range(0, r), tol);
    out.range_gap = range_p.cols() == range_s1.cols() ? subspace_distance(range_p, range_s1) : 1.0;
    const CMatrix null_p = null_basis(p, tol);
    const CMatrix null_u1 = null_basis(u.rows_range(0, r), tol);
    out.null_gap = null_p.cols() == null_u1.cols() ? subspace_distance(null_p, null_u1) : 1.0;

    const double gap_cut = tol.residual_rel * (1.0 + static_cast<double>(n));
    out.holds = out.s_injective && out.u_surjective && out.t1_invertible && he.hermitian && hf.hermitian &&
                std::max(out.res_factor, out.res_idempotent) <= tol.residual_rel && out.range_gap <= gap_cut &&
                out.null_gap <= gap_cut;
    return out;
}

}  // namespace wep
