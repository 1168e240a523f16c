#include "wep/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wep {

double sampled_hermitian_deviation(const CMatrix& a, const NormContext& ctx) {
    require_square(a, "sampled_hermitian_deviation");
    double worst = 0.0;
    for (double t : ctx.t_grid) {
        const CMatrix e = mat_exp(cplx(0.0, t) * a);
        worst = std::max(worst, std::abs(op_norm(e, ctx) - 1.0));
    }
    return worst;
}

HermitianVerdict is_hermitian(const CMatrix& a, const NormContext& ctx, const Tolerance& tol) {
    require_square(a, "is_hermitian");
    if (ctx.kind == NormKind::L2) {
        const double dev = rel_diff(a, a.adjoint());
        return {dev <= tol.residual_rel, dev};
    }
    const double dev = sampled_hermitian_deviation(a, ctx);
    return {dev <= tol.herm_abs, dev};
}

PositivityVerdict check_positive(const CMatrix& a, const NormContext& ctx, const Tolerance& tol) {
    require_square(a, "is_positive");
    PositivityVerdict v;
    v.hermitian = is_hermitian(a, ctx, tol);
    if (!v.hermitian.hermitian) {
        v.failed_criterion = "not hermitian (deviation " + std::to_string(v.hermitian.deviation) + ")";
        return v;
    }
    if (a.empty()) {
        v.positive = true;
        return v;
    }
    const double slack = tol.residual_rel * (1.0 + frobenius_norm(a));
    v.min_real = std::numeric_limits<double>::infinity();
    v.max_abs_imag = 0.0;
    if (ctx.kind == NormKind::L2) {
        for (double w : eigh(a).w) v.min_real = std::min(v.min_real, w);
    } else {
        for (const cplx& z : eigenvalues(a)) {
            v.min_real = std::min(v.min_real, z.real());
            v.max_abs_imag = std::max(v.max_abs_imag, std::abs(z.imag()));
        }
    }
    if (v.max_abs_imag > slack) {
        v.failed_criterion = "spectrum not real (max |Im| " + std::to_string(v.max_abs_imag) + ")";
    } else if (v.min_real < -slack) {
        v.failed_criterion = "spectrum has a negative eigenvalue (" + std::to_string(v.min_real) + ")";
    } else {
        v.positive = true;
    }
    return v;
}

Weight Weight::make(CMatrix u, const NormContext& ctx, const Tolerance& tol) {
    require_square(u, "weight");
    const PositivityVerdict pv = check_positive(u, ctx, tol);
    if (!pv.positive) throw NotPositiveError("weight is not positive: " + pv.failed_criterion);
    const std::size_t n = u.rows();
    if (n == 0) return Weight(u, u, u, u);

    CMatrix half, half_inv, inv;
    if (rel_diff(u, u.adjoint()) <= tol.residual_rel) {
        const EighResult e = eigh(u);
        const double wmax = e.w.back();
        if (!(e.w.front() > tol.rank_rel * wmax)) {
            throw NotPositiveError("weight is not invertible (smallest eigenvalue " + std::to_string(e.w.front()) + ")");
        }
        CMatrix dh(n, n), dhi(n, n), di(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const double s = std::sqrt(e.w[i]);
            dh(i, i) = s;
            dhi(i, i) = 1.0 / s;
            di(i, i) = 1.0 / e.w[i];
        }
        const CMatrix vh = e.v.adjoint();
        half = e.v * dh * vh;
        half_inv = e.v * dhi * vh;
        inv = e.v * di * vh;
    } else {
        try {
            half = principal_sqrt(u, ctx, tol);
            half_inv = inverse(half, tol);
            inv = inverse(u, tol);
        } catch (const SingularError&) {
            throw NotPositiveError("weight is not invertible");
        }
    }
    const CMatrix id = CMatrix::identity(n);
    if (rel_diff(half * half, u) > tol.residual_rel || rel_diff(half * half_inv, id) > tol.residual_rel) {
        throw ConvergenceError("weight: square root failed verification");
    }
    return Weight(std::move(u), std::move(half), std::move(half_inv), std::move(inv));
}

Weight Weight::identity(std::size_t n) {
    const CMatrix id = CMatrix::identity(n);
    return Weight(id, id, id, id);
}

CMatrix weighted_similarity(const CMatrix& x, const Weight& w) {
    if (x.rows() != w.size() || x.cols() != w.size()) {
        throw ShapeError("weighted algebra: element " + shape_str(x) + " vs weight of size " + std::to_string(w.size()));
    }
    return w.half() * x * w.half_inv();
}

double weighted_norm(const CMatrix& x, const Weight& w, const NormContext& ctx) {
    return op_norm(weighted_similarity(x, w), ctx);
}

WeightedHermitianVerdict is_hermitian_weighted(const CMatrix& x, const Weight& w, const NormContext& ctx,
                                               const Tolerance& tol) {
    const HermitianVerdict hv = is_hermitian(weighted_similarity(x, w), ctx, tol);
    WeightedHermitianVerdict v;
    v.hermitian = hv.hermitian;
    v.deviation = hv.deviation;
    if (ctx.kind == NormKind::L2) {
        v.congruence_deviation = rel_diff(w.inv() * x.adjoint() * w.u(), x);
        v.routes_agree = (v.congruence_deviation <= tol.residual_rel) == v.hermitian;
    }
    return v;
}

std::vector<cplx> numerical_range(const CMatrix& a, std::size_t samples) {
    require_square(a, "numerical_range");
    std::vector<cplx> out;
    if (a.empty()) return out;
    out.reserve(samples);
    const CMatrix ah = a.adjoint();
    for (std::size_t k = 0; k < samples; ++k) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples);
        const cplx rot = std::polar(1.0, theta);
        const CMatrix h = 0.5 * (rot * a + std::conj(rot) * ah);
        const EighResult e = eigh(h);
        const CMatrix v = e.v.cols_range(a.rows() - 1, 1);
        out.push_back((v.adjoint() * a * v)(0, 0));
    }
    return out;
}

}  // namespace wep
