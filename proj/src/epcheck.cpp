#include "wep/epcheck.hpp"

#include <algorithm>
#include <cmath>

#include "wep/random.hpp"

namespace wep {

EpVerdict is_weighted_ep(const CMatrix& a, const Weight& e, const Weight& f, const Tolerance& tol) {
    require_square(a, "is_weighted_ep");
    EpVerdict v;
    v.wmp = wmp_inverse(a, e, f, tol);
    if (!v.wmp.valid()) {
        throw Error("is_weighted_ep: weighted inverse failed verification (worst residual " +
                    std::to_string(v.wmp.worst_residual()) + ")");
    }
    const CMatrix left = a * v.wmp.pinv;
    const CMatrix right = v.wmp.pinv * a;
    v.residual = frobenius_norm(left - right) / (1.0 + frobenius_norm(left));
    v.ep = v.residual <= tol.residual_rel;
    return v;
}

// ---------------------------------------------------------------------------
// linear-system membership

namespace {

MembershipResult solve_right(const CMatrix& target, const CMatrix& gen, const Tolerance& tol) {
    if (target.rows() != gen.rows()) {
        throw ShapeError("membership (target = g X): " + shape_str(target) + " vs generator " + shape_str(gen));
    }
    MembershipResult r;
    CMatrix x = mp_inverse(gen, tol) * target;
    r.residual = rel_diff(gen * x, target);
    r.solvable = r.residual <= tol.residual_rel;
    r.right_witness = std::move(x);
    return r;
}

MembershipResult solve_left(const CMatrix& target, const CMatrix& gen, const Tolerance& tol) {
    if (target.cols() != gen.cols()) {
        throw ShapeError("membership (target = X g): " + shape_str(target) + " vs generator " + shape_str(gen));
    }
    MembershipResult r;
    CMatrix x = target * mp_inverse(gen, tol);
    r.residual = rel_diff(x * gen, target);
    r.solvable = r.residual <= tol.residual_rel;
    r.left_witness = std::move(x);
    return r;
}

CMatrix unvec(const CMatrix& v, std::size_t rows, std::size_t cols) {
    CMatrix m(rows, cols);
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = v(j * rows + i, 0);
    return m;
}

// Vectorized systems beyond this many unknowns use the factored projector
// L L^+ T R^+ R, which is the same test.
constexpr std::size_t kMaxVectorizedUnknowns = 144;

}  // namespace

MembershipResult membership_solvable(const MembershipQuery& q, const Tolerance& tol) {
    switch (q.side) {
        case Side::Right: return solve_right(q.target, q.generator, tol);
        case Side::Left: return solve_left(q.target, q.generator, tol);
        case Side::TwoSided: {
            MembershipResult r = solve_right(q.target, q.generator, tol);
            MembershipResult l = solve_left(q.target, q.generator, tol);
            r.left_witness = std::move(l.left_witness);
            r.residual = std::max(r.residual, l.residual);
            r.solvable = r.solvable && l.solvable;
            return r;
        }
    }
    return {};
}

RankedWitness full_rank_witness(const MembershipQuery& q, const Tolerance& tol) {
    if (q.side == Side::TwoSided) throw ShapeError("full_rank_witness: needs a one-sided query");
    const MembershipResult base = membership_solvable(q, tol);
    const CMatrix& x0 = q.side == Side::Right ? *base.right_witness : *base.left_witness;
    if (!x0.is_square()) throw ShapeError("full_rank_witness: witness space is not square (" + shape_str(x0) + ")");
    const std::size_t k = x0.rows();

    RankedWitness best;
    best.solvable = base.solvable;
    best.residual = base.residual;
    best.witness = x0;
    std::size_t best_rank = rank(x0, tol);
    if (!base.solvable || best_rank == k) {
        best.full_rank = best_rank == k;
        return best;
    }

    // Homogeneous part: (I - g^+ g) Y for right systems, Y (I - g g^+) for left.
    const CMatrix g_pinv = mp_inverse(q.generator, tol);
    const CMatrix kernel_proj = q.side == Side::Right ? CMatrix::identity(k) - g_pinv * q.generator
                                                      : CMatrix::identity(k) - q.generator * g_pinv;
    const double scale = std::max(1.0, frobenius_norm(x0) / std::sqrt(static_cast<double>(k)));
    Rng rng(0x5eedULL);
    for (int attempt = 0; attempt < 4 && best_rank < k; ++attempt) {
        const CMatrix y = scale * random_gaussian(k, k, rng);
        CMatrix x = q.side == Side::Right ? x0 + kernel_proj * y : x0 + y * kernel_proj;
        const std::size_t rk = rank(x, tol);
        if (rk > best_rank) {
            best_rank = rk;
            best.witness = std::move(x);
            const CMatrix& g = q.generator;
            best.residual = q.side == Side::Right ? rel_diff(g * best.witness, q.target)
                                                  : rel_diff(best.witness * g, q.target);
        }
    }
    best.solvable = best.residual <= tol.residual_rel;
    best.full_rank = best_rank == k;
    return best;
}

SandwichResult sandwich_solvable(const CMatrix& left, const CMatrix& right, const CMatrix& target,
                                 const Tolerance& tol) {
    if (left.rows() != target.rows() || right.cols() != target.cols()) {
        throw ShapeError("sandwich: " + shape_str(left) + " Z " + shape_str(right) + " = " + shape_str(target));
    }
    SandwichResult r;
    const std::size_t zr = left.cols(), zc = right.rows();
    if (zr * zc <= kMaxVectorizedUnknowns) {
        const CMatrix k = kron(right.transpose(), left);
        const CMatrix z = mp_inverse(k, tol) * vec(target);
        r.residual = rel_diff(k * z, vec(target));
        r.witness = unvec(z, zr, zc);
    } else {
        r.witness = mp_inverse(left, tol) * target * mp_inverse(right, tol);
        r.residual = rel_diff(left * r.witness * right, target);
    }
    r.solvable = r.residual <= tol.residual_rel;
    return r;
}

// ---------------------------------------------------------------------------
// reports

void EpReport::finalize() {
    consistent = std::all_of(statements.begin(), statements.end(),
                             [this](const Statement& s) { return s.verdict == direct; });
}

const Statement* EpReport::find(std::string_view id) const {
    for (const auto& s : statements)
        if (s.id == id) return &s;
    return nullptr;
}

void EpReport::merge(const EpReport& other) {
    if (other.direct != direct) throw Error("EpReport::merge: reports disagree on the direct verdict");
    statements.insert(statements.end(), other.statements.begin(), other.statements.end());
    finalize();
}

namespace {

class StatementList {
public:
    explicit StatementList(const Tolerance& tol) : tol_(tol) {}

    Statement& add(std::string id, double residual, bool extra_ok = true, std::vector<CMatrix> witnesses = {},
                   std::string note = {}) {
        Statement s;
        s.id = std::move(id);
        s.residual = residual;
        s.verdict = residual <= tol_.residual_rel && extra_ok;
        s.witnesses = std::move(witnesses);
        s.note = std::move(note);
        list_.push_back(std::move(s));
        return list_.back();
    }

    std::vector<Statement> take() { return std::move(list_); }

private:
    const Tolerance& tol_;
    std::vector<Statement> list_;
};

MembershipResult right_of(const CMatrix& target, const CMatrix& gen, const Tolerance& tol) {
    return membership_solvable({target, Side::Right, gen}, tol);
}

MembershipResult left_of(const CMatrix& target, const CMatrix& gen, const Tolerance& tol) {
    return membership_solvable({target, Side::Left, gen}, tol);
}

double normalized_gap(const CMatrix& q1, const CMatrix& q2) {
    const double n = static_cast<double>(q1.rows());
    if (q1.cols() != q2.cols()) return 1.0;
    return subspace_distance(q1, q2) / (1.0 + n);
}

bool has_rank(const CMatrix& x, std::size_t want, const Tolerance& tol) { return rank(x, tol) == want; }

}  // namespace

EpReport ep_statement_suite_bc(const CMatrix& a, const FullRankFactorization& fr, const Weight& e, const Weight& f,
                               const Weight& h, const Tolerance& tol) {
    require_square(a, "ep_statement_suite_bc");
    const FactorParts parts = factor_parts_wmp(a, fr, e, f, h, tol);
    if (!parts.valid) {
        throw Error("ep_statement_suite_bc: factor parts failed verification (worst residual " +
                    std::to_string(parts.worst_residual()) + ")");
    }
    const std::size_t n = a.rows();
    const std::size_t r = fr.r;
    const CMatrix& b = fr.b;
    const CMatrix& c = fr.c;
    const CMatrix& bd = parts.b_dag;
    const CMatrix& cd = parts.c_dag;
    const CMatrix& ad = parts.a_wmp.pinv;
    const CMatrix id_n = CMatrix::identity(n);
    const CMatrix id_r = CMatrix::identity(r);
    const CMatrix bbd = b * bd;
    const CMatrix cdc = cd * c;

    EpReport rep;
    const EpVerdict direct = is_weighted_ep(a, e, h, tol);
    rep.direct = direct.ep;
    rep.direct_residual = direct.residual;

    StatementList st(tol);
    st.add("bc.ii", rel_diff(bbd, cdc));

    {
        const auto m1 = right_of(b, cd, tol);
        const auto m2 = right_of(cd, b, tol);
        const double gap = normalized_gap(null_basis(bd, tol), null_basis(c, tol));
        st.add("bc.iii", std::max({m1.residual, m2.residual, gap}));
    }

    const double bnorm = frobenius_norm(b);
    const double cnorm = frobenius_norm(c);
    const double bdnorm = frobenius_norm(bd);
    const double cdnorm = frobenius_norm(cd);
    st.add("bc.iv", std::max(rel_norm((id_n - cdc) * b, bnorm), rel_norm(c * (id_n - bbd), cnorm)));
    st.add("bc.v", std::max(rel_norm(bd * (id_n - cdc), bdnorm), rel_norm((id_n - bbd) * cd, cdnorm)));

    // u = c b with c = u b^+, b = c^+ u; z = b^+ c^+ inverts u.
    const CMatrix u = c * b;
    const CMatrix z = bd * cd;
    const double res_vi = std::max({rel_diff(c, u * bd), rel_diff(b, cd * u), rel_diff(u * z, id_r), rel_diff(z * u, id_r)});
    const bool u_invertible = has_rank(u, r, tol);
    st.add("bc.vi", res_vi, u_invertible, {u, z});

    {
        const auto m_u1 = right_of(b, cd, tol);  // b = c^+ u1, u1 surjective
        const auto m_u2 = left_of(c, bd, tol);   // c = u2 b^+, u2 injective
        const bool ranks = has_rank(*m_u1.right_witness, r, tol) && has_rank(*m_u2.left_witness, r, tol);
        st.add("bc.vii", std::max(m_u1.residual, m_u2.residual), ranks, {*m_u1.right_witness, *m_u2.left_witness},
               "square witnesses: surjective/injective collapse to invertible");
    }
    {
        const auto m5 = left_of(c, bd, tol);
        const auto m6 = left_of(bd, c, tol);
        const auto m3 = right_of(b, cd, tol);
        const auto m4 = right_of(cd, b, tol);
        st.add("bc.viii", std::max({m3.residual, m4.residual, m5.residual, m6.residual}), true,
               {*m3.right_witness, *m4.right_witness, *m5.left_witness, *m6.left_witness});
    }
    {
        const auto m8 = left_of(bd, c, tol);   // b^+ = u8 c, u8 injective
        const auto m7 = right_of(cd, b, tol);  // c^+ = b u7, u7 surjective
        const bool ranks = has_rank(*m8.left_witness, r, tol) && has_rank(*m7.right_witness, r, tol);
        st.add("bc.ix", std::max(m7.residual, m8.residual), ranks, {*m7.right_witness, *m8.left_witness});
    }
    {
        const auto mr = right_of(a, cd, tol);
        const auto ml = left_of(a, bd, tol);
        st.add("bc.x", std::max(mr.residual, ml.residual));
    }
    {
        const auto mr = right_of(ad, b, tol);
        const auto ml = left_of(ad, c, tol);
        st.add("bc.xi", std::max(mr.residual, ml.residual));
    }
    st.add("bc.xii", res_vi, u_invertible, {u}, "decided through the invertible witness of bc.vi");
    {
        const double gap = normalized_gap(left_null_basis(b, tol), left_null_basis(cd, tol));
        const auto m1 = left_of(c, bd, tol);
        const auto m2 = left_of(bd, c, tol);
        st.add("bc.xiii", std::max({gap, m1.residual, m2.residual}));
    }

    rep.statements = st.take();
    rep.finalize();
    return rep;
}

EpReport ep_statement_suite_sa(const CMatrix& a, const Weight& e, const Weight& f, const Tolerance& tol) {
    require_square(a, "ep_statement_suite_sa");
    const std::size_t n = a.rows();
    const EpVerdict direct = is_weighted_ep(a, e, f, tol);
    const CMatrix& ad = direct.wmp.pinv;
    const CMatrix ada = ad * a;
    const CMatrix aad = a * ad;

    EpReport rep;
    rep.direct = direct.ep;
    rep.direct_residual = direct.residual;
    StatementList st(tol);

    {
        const auto s = full_rank_witness({ad, Side::Left, a}, tol);   // a^+ = s a
        const auto t = full_rank_witness({ad, Side::Right, a}, tol);  // a^+ = a t
        st.add("sa.ii", std::max(s.residual, t.residual), s.full_rank && t.full_rank, {s.witness, t.witness});
    }
    {
        const auto s = left_of(ad, a, tol);
        const auto t = right_of(ad, a, tol);
        st.add("sa.iii", std::max(s.residual, t.residual), true, {*s.left_witness, *t.right_witness});
    }
    {
        const auto m_u = left_of(ada, ad, tol);
        const auto m_v = right_of(ada, a, tol);
        const auto m_u1 = right_of(aad, ad, tol);
        const auto m_v1 = left_of(aad, a, tol);
        st.add("sa.iv", std::max({m_u.residual, m_v.residual, m_u1.residual, m_v1.residual}));
    }
    {
        const auto m_u2 = left_of(ada, ad, tol);
        const auto m_u3 = right_of(aad, ad, tol);
        const auto m_v2 = right_of(ad, a, tol);
        const auto m_v3 = left_of(ad, a, tol);
        st.add("sa.v", std::max({m_u2.residual, m_u3.residual, m_v2.residual, m_v3.residual}));
    }
    {
        const auto x = full_rank_witness({ada, Side::Left, aad}, tol);   // a^+ a = x a a^+
        const auto y = full_rank_witness({ada, Side::Right, aad}, tol);  // a^+ a = a a^+ y
        const double res = std::max(x.residual, y.residual);
        st.add("sa.vi", res, x.full_rank && y.full_rank, {x.witness, y.witness});
        st.add("sa.vii", res, x.full_rank && y.full_rank, {x.witness, y.witness},
               "square witnesses: injective/surjective collapse to invertible");
        const auto y_any = right_of(ada, aad, tol);
        st.add("sa.viii", std::max(x.residual, y_any.residual), x.full_rank, {x.witness, *y_any.right_witness});
    }
    {
        const auto z1 = sandwich_solvable(a, ad, ada, tol);  // a^+ a = a z1 a^+
        const auto z2 = sandwich_solvable(ad, a, aad, tol);  // a a^+ = a^+ z2 a
        st.add("sa.ix", std::max(z1.residual, z2.residual), true, {z1.witness, z2.witness});
    }
    (void)n;

    rep.statements = st.take();
    rep.finalize();
    return rep;
}

EpReport weight_swap_suite(const CMatrix& a, const Weight& e, const Weight& f, const Tolerance& tol) {
    EpReport rep;
    const EpVerdict ef = is_weighted_ep(a, e, f, tol);
    const EpVerdict fe = is_weighted_ep(a, f, e, tol);
    const EpVerdict ee = is_weighted_ep(a, e, e, tol);
    const EpVerdict ff = is_weighted_ep(a, f, f, tol);
    rep.direct = ef.ep;
    rep.direct_residual = ef.residual;
    StatementList st(tol);
    st.add("swap.fe", fe.residual);
    st.add("swap.ee", ee.residual);
    st.add("swap.ff", ff.residual);
    st.add("swap.ee_ff", std::max(ee.residual, ff.residual));
    rep.statements = st.take();
    rep.finalize();
    return rep;
}

double CongruenceResult::residual() const noexcept { return std::max({res_e, res_f, res_block}); }

CongruenceResult cstar_congruence_check(const CMatrix& a, const Weight& e, const Weight& f, const Tolerance& tol) {
    require_square(a, "cstar_congruence_check");
    const WmpResult w = wmp_inverse(a, e, f, tol);
    const CMatrix& ad = w.pinv;
    const CMatrix p = a * ad;
    const CMatrix p_star = p.adjoint();
    CongruenceResult r;
    r.res_e = rel_diff(e.inv() * p_star * e.u(), p);
    r.res_f = rel_diff(f.inv() * p_star * f.u(), p);
    const CMatrix comp = CMatrix::identity(a.rows()) - p;
    const double an = frobenius_norm(a), adn = frobenius_norm(ad);
    r.res_block = std::max({rel_norm(a * comp, an), rel_norm(comp * a, an), rel_norm(ad * comp, adn),
                            rel_norm(comp * ad, adn)});
    r.t1_invertible = rank(a, tol) == rank(p, tol);
    r.holds = w.valid() && r.t1_invertible && r.residual() <= tol.residual_rel;
    return r;
}

Statement canonical_form_statement(const CMatrix& a, const Weight& e, const Weight& f, const Tolerance& tol) {
    require_square(a, "canonical_form_statement");
    const WmpResult w = wmp_inverse(a, e, f, tol);
    const CMatrix p = a * w.pinv;
    const NormContext l2 = NormContext::l2();
    const auto he = is_hermitian_weighted(p, e, l2, tol);
    const auto hf = is_hermitian_weighted(p, f, l2, tol);
    const CMatrix core = p * a * p;
    double res_corner = 1.0;
    bool corner_ok = false;
    try {
        const CMatrix core_inv = pAp_inverse(a, p, tol);
        res_corner = std::max(rel_diff(core * core_inv, p), rel_diff(core_inv * core, p));
        corner_ok = true;
    } catch (const SingularError&) {
    }
    Statement s;
    s.id = "canon";
    s.residual = std::max({rel_diff(p * p, p), rel_diff(core, a), he.deviation, hf.deviation, res_corner});
    s.verdict = corner_ok && s.residual <= tol.residual_rel;
    s.witnesses = {CMatrix::identity(a.rows()), p};
    s.note = "c = 1, p = a a^+";
    return s;
}

EpReport ep_check_all(const CMatrix& a, const Weight& e, const Weight& f, const std::optional<Weight>& f_mid,
                      const Tolerance& tol) {
    require_square(a, "ep_check_all");
    if (e.size() != a.rows() || f.size() != a.rows()) {
        throw ShapeError("ep_check_all: weights must match the " + shape_str(a) + " input");
    }
    EpReport rep = ep_statement_suite_sa(a, e, f, tol);
    const FullRankFactorization fr = full_rank_factorize(a, tol);
    const Weight mid = f_mid ? *f_mid : Weight::identity(fr.r);
    if (mid.size() != fr.r) {
        throw ShapeError("ep_check_all: middle weight must be " + std::to_string(fr.r) + "x" + std::to_string(fr.r));
    }
    rep.merge(ep_statement_suite_bc(a, fr, e, mid, f, tol));
    rep.merge(weight_swap_suite(a, e, f, tol));

    StatementList st(tol);
    const CongruenceResult cr = cstar_congruence_check(a, e, f, tol);
    st.add("cstar", cr.residual(), cr.t1_invertible);
    rep.statements.push_back(st.take().front());
    rep.statements.push_back(canonical_form_statement(a, e, f, tol));
    rep.finalize();
    return rep;
}

BlockEquivalence block_form_equivalence(const CMatrix& t1, const CMatrix& j, const Weight& e, const Weight& f,
                                        const Tolerance& tol) {
    require_square(t1, "block_form_equivalence");
    require_square(j, "block_form_equivalence");
    const std::size_t n = j.rows(), r = t1.rows();
    if (r > n) throw ShapeError("block_form_equivalence: core larger than the space");
    const CMatrix j_inv = inverse(j, tol);
    const CMatrix zero_tail(n - r, n - r);
    BlockEquivalence out;
    out.t = j * block_diag(t1, zero_tail) * j_inv;
    const CMatrix t_prime = j * block_diag(r == 0 ? CMatrix() : inverse(t1, tol), zero_tail) * j_inv;

    const WmpResult w = wmp_inverse(out.t, e, f, tol);
    const bool matches = w.valid() && rel_diff(w.pinv, t_prime) <= tol.residual_rel;
    out.wmp_is_block_inverse = matches;
    out.ep_with_block_inverse = matches && is_weighted_ep(out.t, e, f, tol).ep;

    const CMatrix q1 = j * block_diag(CMatrix::identity(r), zero_tail) * j_inv;
    const CMatrix q2 = j * block_diag(CMatrix(r, r), CMatrix::identity(n - r)) * j_inv;
    const NormContext l2 = NormContext::l2();
    out.idempotents_hermitian =
        is_hermitian_weighted(q1, e, l2, tol).hermitian && is_hermitian_weighted(q2, f, l2, tol).hermitian;
    return out;
}

// ---------------------------------------------------------------------------
// instance generation

Instance generate_instance(std::size_t n, std::size_t rank, bool ep, std::uint64_t seed, NonEpKind kind,
                           const Tolerance& tol) {
    if (n == 0) throw ShapeError("generate_instance: n must be positive");
    if (rank > n) throw ShapeError("generate_instance: rank exceeds n");
    const bool offblock_ok = rank > 0 && rank < n;
    const bool nilpotent_ok = n - rank >= 2;
    if (!ep) {
        if (kind == NonEpKind::OffBlock && !offblock_ok) throw ShapeError("generate_instance: off-block kind needs 0 < rank < n");
        if (kind == NonEpKind::Nilpotent && !nilpotent_ok) throw ShapeError("generate_instance: nilpotent kind needs n - rank >= 2");
        if (!offblock_ok && !nilpotent_ok) throw ShapeError("generate_instance: no non-EP matrix with this rank and size");
    }

    Rng rng(seed);
    const CMatrix u = random_unitary(n, rng);
    const Weight twist = Weight::make(random_pd(n, rng));

    // Block-diagonal in the basis c = w^{-1/2} u.
    auto weight_in_basis = [&](Rng& g) {
        const CMatrix inner = u * block_diag(random_pd(rank, g), random_pd(n - rank, g)) * u.adjoint();
        const CMatrix w = twist.half() * inner * twist.half();
        return Weight::make(0.5 * (w + w.adjoint()), NormContext::l2(), tol);
    };
    Weight e = weight_in_basis(rng);
    Weight f = weight_in_basis(rng);

    const CMatrix c = twist.half_inv() * u;
    const CMatrix c_inv = u.adjoint() * twist.half();
    CMatrix p(n, n);
    for (std::size_t i = 0; i < rank; ++i) p(i, i) = 1.0;

    CMatrix core_seed = random_gaussian(n, n, rng);
    core_seed.set_block(0, 0, random_rank(rank, rank, rank, rng));

    if (ep) {
        CMatrix a = ep_synthesize_from_decomposition(c, p, core_seed, e, f, tol);
        return Instance{std::move(a), std::move(e), std::move(f), c, p, true};
    }

    const CMatrix core = p * core_seed * p;
    const CMatrix comp = CMatrix::identity(n) - p;
    for (int attempt = 0; attempt < 64; ++attempt) {
        NonEpKind k = kind;
        if (k == NonEpKind::Auto) {
            if (offblock_ok && nilpotent_ok) {
                k = uniform_index(rng, 0, 1) == 0 ? NonEpKind::OffBlock : NonEpKind::Nilpotent;
            } else {
                k = offblock_ok ? NonEpKind::OffBlock : NonEpKind::Nilpotent;
            }
        }
        CMatrix term(n, n);
        if (k == NonEpKind::OffBlock) {
            term = p * random_gaussian(n, n, rng) * comp;
        } else {
            const std::size_t m = n - rank;
            CMatrix nil = random_gaussian(m, m, rng);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j <= i; ++j) nil(i, j) = 0.0;
            term.set_block(rank, rank, nil);
        }
        CMatrix a = c * (core + term) * c_inv;
        const EpVerdict v = is_weighted_ep(a, e, f, tol);
        if (!v.ep && v.residual >= 10.0 * tol.residual_rel) {
            return Instance{std::move(a), std::move(e), std::move(f), c, p, false};
        }
    }
    throw Error("generate_instance: could not draw a separated non-EP instance");
}

}  // namespace wep
