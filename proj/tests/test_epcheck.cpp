#include <algorithm>

#include "doctest.h"
#include "wep/epcheck.hpp"
#include "wep/random.hpp"

using namespace wep;

namespace {

std::size_t count_true(const EpReport& r) {
    return std::count_if(r.statements.begin(), r.statements.end(), [](const Statement& s) { return s.verdict; });
}

}  // namespace

TEST_CASE("orthogonal projection with identity weights: everything true") {
    const CMatrix p{{0.5, 0.5}, {0.5, 0.5}};
    const Weight id = Weight::identity(2);
    const EpReport r = ep_check_all(p, id, id);
    CHECK(r.direct);
    CHECK(r.consistent);
    CHECK(count_true(r) == r.statements.size());
    const EpReport bc = ep_statement_suite_bc(p, full_rank_factorize(p), id, Weight::identity(1), id);
    CHECK(bc.statements.size() == 12);
    CHECK(count_true(bc) == 12);
}

TEST_CASE("nilpotent shift: everything false") {
    const CMatrix a{{0, 1}, {0, 0}};
    const Weight id = Weight::identity(2);
    const EpReport r = ep_check_all(a, id, id);
    CHECK_FALSE(r.direct);
    CHECK(r.consistent);
    CHECK(count_true(r) == 0);
}

TEST_CASE("statement ids are stable") {
    const Instance inst = generate_instance(4, 2, true, 1);
    const EpReport r = ep_check_all(inst.a, inst.e, inst.f);
    for (const char* id : {"bc.ii", "bc.vi", "bc.xiii", "sa.ii", "sa.ix", "swap.fe", "swap.ee_ff", "cstar", "canon"}) {
        CHECK_MESSAGE(r.find(id) != nullptr, id);
    }
    CHECK(r.find("nope") == nullptr);
    CHECK(r.statements.size() == 12 + 8 + 4 + 2);
}

TEST_CASE("generated instances: every suite agrees with the direct verdict") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const bool ep = seed % 2 == 0;
        const std::size_t n = 2 + seed % 6;
        const std::size_t r = ep ? seed % (n + 1) : 1 + seed % (n - 1);
        const Instance inst = generate_instance(n, r, ep, seed);
        Rng rng(seed);
        const EpReport rep = ep_check_all(inst.a, inst.e, inst.f, random_weight(rank(inst.a), rng));
        CHECK(rep.direct == ep);
        CHECK(rep.consistent);
    }
}

TEST_CASE("identity weights reduce to the classical test") {
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const CMatrix a = random_rank(4, 4, 2, rng);
        const CMatrix ad = mp_inverse(a);
        const bool classical = rel_diff(a * ad, ad * a) < 1e-9;
        const Weight id = Weight::identity(4);
        CHECK(is_weighted_ep(a, id, id).ep == classical);
        const CMatrix h = a * a.adjoint();
        CHECK(is_weighted_ep(h, id, id).ep);
    }
}

TEST_CASE("weight swap suite") {
    const Instance ep = generate_instance(5, 3, true, 4);
    const EpReport yes = weight_swap_suite(ep.a, ep.e, ep.f);
    CHECK(yes.direct);
    CHECK(count_true(yes) == 4);
    const Instance non = generate_instance(5, 3, false, 4);
    const EpReport no = weight_swap_suite(non.a, non.e, non.f);
    CHECK_FALSE(no.direct);
    CHECK(count_true(no) == 0);
}

TEST_CASE("congruence check") {
    const Weight id = Weight::identity(2);
    CHECK(cstar_congruence_check(CMatrix{{1, 0}, {0, 0}}, id, id).holds);
    const CMatrix oblique{{1, 1}, {0, 0}};
    CHECK_FALSE(cstar_congruence_check(oblique, id, id).holds);
    CHECK_FALSE(is_weighted_ep(oblique, id, id).ep);
    const Instance inst = generate_instance(6, 3, true, 9);
    const CongruenceResult c = cstar_congruence_check(inst.a, inst.e, inst.f);
    CHECK(c.holds);
    CHECK(c.res_e < 1e-10);
    CHECK(c.res_f < 1e-10);
}

TEST_CASE("membership systems") {
    Rng rng(5);
    const CMatrix g = random_rank(4, 4, 2, rng);
    const CMatrix x = random_gaussian(4, 3, rng);
    const MembershipResult in = membership_solvable({g * x, Side::Right, g});
    CHECK(in.solvable);
    CHECK(rel_diff(g * *in.right_witness, g * x) < 1e-10);
    CHECK_FALSE(membership_solvable({random_gaussian(4, 3, rng), Side::Right, g}).solvable);
    const CMatrix y = random_gaussian(4, 4, rng);
    CHECK(membership_solvable({y * g, Side::Left, g}).solvable);
    CHECK_FALSE(membership_solvable({y * g, Side::TwoSided, g}).solvable);
    CHECK(membership_solvable({g * y * g, Side::TwoSided, g}).solvable);
    CHECK_THROWS_AS(membership_solvable({CMatrix(3, 3), Side::Right, g}), ShapeError);
}

TEST_CASE("full-rank witnesses") {
    Rng rng(6);
    const CMatrix g = random_rank(4, 4, 2, rng);
    const RankedWitness w = full_rank_witness({g, Side::Right, g});
    CHECK(w.solvable);
    CHECK(w.full_rank);
    CHECK(rel_diff(g * w.witness, g) < 1e-9);
    const RankedWitness none = full_rank_witness({CMatrix(4, 4), Side::Left, CMatrix::identity(4)});
    CHECK(none.solvable);
    CHECK_FALSE(none.full_rank);
    CHECK_THROWS_AS(full_rank_witness({g * random_gaussian(4, 3, rng), Side::Right, g}), ShapeError);
}

TEST_CASE("sandwich systems") {
    Rng rng(7);
    const CMatrix l = random_rank(4, 4, 2, rng), r = random_rank(4, 4, 3, rng);
    const CMatrix z = random_gaussian(4, 4, rng);
    const SandwichResult in = sandwich_solvable(l, r, l * z * r);
    CHECK(in.solvable);
    CHECK(rel_diff(l * in.witness * r, l * z * r) < 1e-9);
    CHECK_FALSE(sandwich_solvable(l, r, random_gaussian(4, 4, rng)).solvable);

    const CMatrix bl = random_rank(14, 14, 5, rng), br = random_rank(14, 14, 9, rng);
    const CMatrix bz = random_gaussian(14, 14, rng);
    CHECK(sandwich_solvable(bl, br, bl * bz * br).solvable);
    CHECK_FALSE(sandwich_solvable(bl, br, random_gaussian(14, 14, rng)).solvable);
}

TEST_CASE("block form equivalence with hermitian idempotents toggled") {
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 5, r = 1 + trial % (n - 1);
        const CMatrix j = random_gaussian(n, n, rng);
        const CMatrix t1 = random_rank(r, r, r, rng);
        const CMatrix ji = inverse(j);
        auto adapted = [&] {
            const CMatrix d = block_diag(random_pd(r, rng), random_pd(n - r, rng));
            const CMatrix w = ji.adjoint() * d * ji;
            return Weight::make(0.5 * (w + w.adjoint()));
        };
        const bool on = trial % 2 == 0;
        const Weight e = on ? adapted() : random_weight(n, rng);
        const Weight f = on ? adapted() : random_weight(n, rng);
        const BlockEquivalence b = block_form_equivalence(t1, j, e, f);
        CHECK(b.agree());
        CHECK(b.idempotents_hermitian == on);
        CHECK(rel_diff(b.t, j * block_diag(t1, CMatrix(n - r, n - r)) * ji) < 1e-12);
    }
}

TEST_CASE("instance generator") {
    const Instance a = generate_instance(2, 2, true, 0);
    CHECK(rank(a.a) == 2);
    CHECK(is_weighted_ep(a.a, a.e, a.f).ep);
    const Instance b = generate_instance(4, 2, false, 0);
    CHECK_FALSE(is_weighted_ep(b.a, b.e, b.f).ep);
    const Instance nil = generate_instance(5, 2, false, 1, NonEpKind::Nilpotent);
    CHECK_FALSE(is_group_invertible(nil.a));
    const Instance off = generate_instance(5, 2, false, 1, NonEpKind::OffBlock);
    CHECK(is_group_invertible(off.a));
    CHECK(generate_instance(4, 2, true, 5).a == generate_instance(4, 2, true, 5).a);
    CHECK_THROWS_AS(generate_instance(1, 0, false, 0), ShapeError);
    CHECK_THROWS_AS(generate_instance(3, 3, false, 0), ShapeError);
    CHECK_THROWS_AS(generate_instance(3, 2, false, 0, NonEpKind::Nilpotent), ShapeError);
    CHECK_THROWS_AS(generate_instance(3, 4, true, 0), ShapeError);
    CHECK(generate_instance(3, 0, true, 0).a == CMatrix(3, 3));
}

TEST_CASE("without a group inverse every suite is false") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Instance inst = generate_instance(6, seed % 4, false, seed, NonEpKind::Nilpotent);
        REQUIRE_FALSE(is_group_invertible(inst.a));
        const EpReport r = ep_check_all(inst.a, inst.e, inst.f);
        CHECK(count_true(r) == 0);
    }
}
