#include "wep/matcore.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <string>

#include "eigen_bridge.hpp"
#include "wep/hermitian.hpp"
#include "wep/kernels.hpp"

namespace wep {

using detail::EMat;
using detail::from_eigen;
using detail::to_eigen;

std::string_view to_string(NormKind k) {
    switch (k) {
        case NormKind::L1: return "l1";
        case NormKind::L2: return "l2";
        case NormKind::Linf: return "linf";
    }
    return "?";
}

NormKind parse_norm_kind(std::string_view s) {
    std::string lower(s);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "l1") return NormKind::L1;
    if (lower == "l2") return NormKind::L2;
    if (lower == "linf") return NormKind::Linf;
    throw ShapeError("unknown norm '" + std::string(s) + "' (expected l1, l2 or linf)");
}

std::vector<double> NormContext::default_t_grid() { return {-5.0, -2.0, -1.0, -0.5, -0.1, 0.1, 0.5, 1.0, 2.0, 5.0}; }

void NormContext::validate() const {
    if (t_grid.empty()) throw ShapeError("norm context: t_grid is empty");
    const bool neg = std::any_of(t_grid.begin(), t_grid.end(), [](double t) { return t < 0; });
    const bool pos = std::any_of(t_grid.begin(), t_grid.end(), [](double t) { return t > 0; });
    const bool big = std::any_of(t_grid.begin(), t_grid.end(), [](double t) { return std::abs(t) >= 1.0; });
    if (!neg || !pos) throw ShapeError("norm context: t_grid needs both signs");
    if (!big) throw ShapeError("norm context: t_grid needs some |t| >= 1");
}

double op_norm(const CMatrix& a, NormKind kind) {
    if (a.empty()) return 0.0;
    const auto& k = kernels::active();
    switch (kind) {
        case NormKind::L1: {
            std::vector<double> sums(a.cols());
            k.col_abs_sums(a.rows(), a.cols(), a.data().data(), sums.data());
            return *std::max_element(sums.begin(), sums.end());
        }
        case NormKind::Linf: {
            std::vector<double> sums(a.rows());
            k.row_abs_sums(a.rows(), a.cols(), a.data().data(), sums.data());
            return *std::max_element(sums.begin(), sums.end());
        }
        case NormKind::L2: {
            Eigen::JacobiSVD<EMat> jsvd(to_eigen(a));
            return jsvd.singularValues()(0);
        }
    }
    return 0.0;
}

SvdResult svd(const CMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    if (m == 0 || n == 0) return {CMatrix::identity(m), {}, CMatrix::identity(n)};
    Eigen::JacobiSVD<EMat> jsvd(to_eigen(a), Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (jsvd.info() != Eigen::Success) throw ConvergenceError("svd: iteration did not converge");
    SvdResult r;
    r.u = from_eigen(jsvd.matrixU());
    r.vt = from_eigen(jsvd.matrixV().adjoint());
    const auto& sv = jsvd.singularValues();
    r.s.assign(sv.data(), sv.data() + sv.size());
    if (!r.u.all_finite() || !r.vt.all_finite() ||
        !std::all_of(r.s.begin(), r.s.end(), [](double x) { return std::isfinite(x); })) {
        throw ConvergenceError("svd: non-finite result");
    }
    return r;
}

std::size_t rank_of(std::span<const double> s, const Tolerance& tol) {
    if (s.empty() || s[0] <= 0.0) return 0;
    const double cut = tol.rank_rel * s[0];
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [cut](double x) { return x > cut; }));
}

std::size_t rank(const CMatrix& a, const Tolerance& tol) {
    if (a.empty()) return 0;
    Eigen::JacobiSVD<EMat> jsvd(to_eigen(a));
    const auto& sv = jsvd.singularValues();
    return rank_of(std::span<const double>(sv.data(), static_cast<std::size_t>(sv.size())), tol);
}

CMatrix range_basis(const CMatrix& a, const Tolerance& tol) {
    const SvdResult d = svd(a);
    return d.u.cols_range(0, rank_of(d.s, tol));
}

CMatrix null_basis(const CMatrix& a, const Tolerance& tol) {
    const SvdResult d = svd(a);
    const std::size_t r = rank_of(d.s, tol);
    return d.vt.rows_range(r, a.cols() - r).adjoint();
}

CMatrix left_null_basis(const CMatrix& a, const Tolerance& tol) {
    const SvdResult d = svd(a);
    const std::size_t r = rank_of(d.s, tol);
    return d.u.cols_range(r, a.rows() - r);
}

CMatrix orth_projector(const CMatrix& q) { return q * q.adjoint(); }

double subspace_distance(const CMatrix& q1, const CMatrix& q2) {
    if (q1.rows() != q2.rows()) throw ShapeError("subspace_distance: ambient dimension mismatch");
    return frobenius_norm(orth_projector(q1) - orth_projector(q2));
}

EighResult eigh(const CMatrix& a) {
    require_square(a, "eigh");
    if (a.empty()) return {{}, CMatrix()};
    const EMat m = to_eigen(a);
    const EMat h = (m + m.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<EMat> es(h);
    if (es.info() != Eigen::Success) throw ConvergenceError("eigh: iteration did not converge");
    const auto& w = es.eigenvalues();
    return {std::vector<double>(w.data(), w.data() + w.size()), from_eigen(es.eigenvectors())};
}

std::vector<cplx> eigenvalues(const CMatrix& a) {
    require_square(a, "eigenvalues");
    if (a.empty()) return {};
    Eigen::ComplexEigenSolver<EMat> es(to_eigen(a), false);
    if (es.info() != Eigen::Success) throw ConvergenceError("eigenvalues: Schur iteration did not converge");
    const auto& ev = es.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

namespace {

void require_nonsingular(const CMatrix& a, const Tolerance& tol, const char* what) {
    require_square(a, what);
    if (a.empty()) return;
    Eigen::JacobiSVD<EMat> jsvd(to_eigen(a));
    const auto& sv = jsvd.singularValues();
    const double smax = sv(0), smin = sv(sv.size() - 1);
    if (!(smin > tol.rank_rel * smax)) {
        throw SingularError(std::string(what) + ": matrix is numerically singular (smin/smax = " +
                            std::to_string(smax > 0 ? smin / smax : 0.0) + ")");
    }
}

}  // namespace

CMatrix inverse(const CMatrix& a, const Tolerance& tol) {
    require_nonsingular(a, tol, "inverse");
    if (a.empty()) return a;
    return from_eigen(to_eigen(a).partialPivLu().inverse());
}

CMatrix solve(const CMatrix& a, const CMatrix& b, const Tolerance& tol) {
    require_nonsingular(a, tol, "solve");
    if (a.rows() != b.rows()) throw ShapeError("solve: " + shape_str(a) + " vs rhs " + shape_str(b));
    if (a.empty() || b.empty()) return CMatrix(a.cols(), b.cols());
    return from_eigen(to_eigen(a).partialPivLu().solve(to_eigen(b)));
}

CMatrix mat_exp(const CMatrix& a) {
    require_square(a, "mat_exp");
    const std::size_t n = a.rows();
    if (n == 0) return a;
    if (!a.all_finite()) throw ConvergenceError("mat_exp: non-finite input");
    if (max_abs(a) == 0.0) return CMatrix::identity(n);

    constexpr double theta13 = 5.371920351148152;
    constexpr std::array<double, 14> b{64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                       1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                       670442572800.0,      33522128640.0,       1323241920.0,
                                       40840800.0,          960960.0,            16380.0,
                                       182.0,               1.0};

    const double norm1 = op_norm(a, NormKind::L1);
    int squarings = 0;
    if (norm1 > theta13) squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
    // exp overflows double long before 2^1000 scaling is needed
    if (squarings > 1000) throw ConvergenceError("mat_exp: input norm beyond scaling capacity");

    const CMatrix x = std::ldexp(1.0, -squarings) * a;
    const CMatrix id = CMatrix::identity(n);
    const CMatrix x2 = x * x;
    const CMatrix x4 = x2 * x2;
    const CMatrix x6 = x4 * x2;

    const CMatrix u_inner = x6 * (b[13] * x6 + b[11] * x4 + b[9] * x2) + b[7] * x6 + b[5] * x4 +
                            b[3] * x2 + b[1] * id;
    const CMatrix u = x * u_inner;
    const CMatrix v =
        x6 * (b[12] * x6 + b[10] * x4 + b[8] * x2) + b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * id;

    const EMat num = to_eigen(v + u);
    const EMat den = to_eigen(v - u);
    CMatrix r = from_eigen(den.partialPivLu().solve(num));
    for (int i = 0; i < squarings; ++i) {
        r = r * r;
        if (!r.all_finite()) break;
    }
    if (!r.all_finite()) throw ConvergenceError("mat_exp: overflow while squaring");
    return r;
}

CMatrix principal_sqrt(const CMatrix& a, const NormContext& ctx, const Tolerance& tol) {
    require_square(a, "principal_sqrt");
    const PositivityVerdict pv = check_positive(a, ctx, tol);
    if (!pv.positive) throw NotPositiveError("principal_sqrt: " + pv.failed_criterion);
    if (a.empty()) return a;

    const double scale = 1.0 + frobenius_norm(a);
    if (rel_norm(a - a.adjoint(), scale - 1.0) <= tol.residual_rel) {
        const EighResult e = eigh(a);
        CMatrix d(a.rows(), a.rows());
        for (std::size_t i = 0; i < e.w.size(); ++i) d(i, i) = std::sqrt(std::max(e.w[i], 0.0));
        return e.v * d * e.v.adjoint();
    }

    // Denman-Beavers iteration; converges for spectra off the closed negative axis.
    CMatrix y = a;
    CMatrix z = CMatrix::identity(a.rows());
    for (int it = 0; it < 100; ++it) {
        const CMatrix y_next = 0.5 * (y + inverse(z, tol));
        const CMatrix z_next = 0.5 * (z + inverse(y, tol));
        const double change = rel_diff(y_next, y);
        y = y_next;
        z = z_next;
        if (change <= 1e-15) return y;
    }
    if (rel_diff(y * y, a) <= tol.residual_rel) return y;
    throw ConvergenceError("principal_sqrt: Denman-Beavers iteration did not converge");
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q) k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    return k;
}

CMatrix vec(const CMatrix& a) {
    CMatrix v(a.rows() * a.cols(), 1);
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) v(j * a.rows() + i, 0) = a(i, j);
    return v;
}

}  // namespace wep
