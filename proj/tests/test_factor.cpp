#include "doctest.h"
#include "oracles.hpp"
#include "wep/epcheck.hpp"
#include "wep/factor.hpp"
#include "wep/random.hpp"

using namespace wep;

TEST_CASE("full-rank factorization") {
    Rng rng(1);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t m = uniform_index(rng, 1, 7), n = uniform_index(rng, 1, 7);
        const std::size_t r = uniform_index(rng, 0, std::min(m, n));
        const CMatrix a = random_rank(m, n, r, rng);
        const FullRankFactorization fr = full_rank_factorize(a);
        CHECK(fr.r == r);
        CHECK(fr.b.cols() == r);
        CHECK(fr.c.rows() == r);
        CHECK(rank(fr.b) == r);
        CHECK(rank(fr.c) == r);
        CHECK(rel_diff(fr.b * fr.c, a) < 1e-12);
        CHECK(fr.degenerate() == (r == 0));
    }
    const CMatrix one{{1, 2}, {2, 4}};
    const FullRankFactorization fr = full_rank_factorize(one);
    CHECK(fr.r == 1);
    CHECK(rel_diff(fr.b * fr.c, one) < 1e-14);
}

TEST_CASE("reverse-order law with three independent weights") {
    Rng rng(2);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t m = uniform_index(rng, 1, 7), n = uniform_index(rng, 1, 7);
        const CMatrix a = random_rank(m, n, uniform_index(rng, 0, std::min(m, n)), rng);
        const FullRankFactorization fr = full_rank_factorize(a);
        const Weight e = random_weight(m, rng), f = random_weight(fr.r, rng), h = random_weight(n, rng);
        const FactorParts parts = factor_parts_wmp(a, fr, e, f, h);
        REQUIRE(parts.valid);
        const ReverseOrderReport ro = reverse_order_wmp(a, fr, parts);
        CHECK(ro.holds);
        CHECK(ro.res_direct < 1e-9);
        CHECK(rel_diff(ro.product, oracle::weighted_pinv(a, e.u(), h.u())) < 1e-8);
    }
}

TEST_CASE("reverse-order law also holds for an elimination factorization") {
    Rng rng(3);
    const CMatrix a = random_rank(5, 4, 2, rng);
    FullRankFactorization fr;
    oracle::rref_factor(a, fr.b, fr.c);
    fr.r = fr.b.cols();
    const Weight e = random_weight(5, rng), f = random_weight(2, rng), h = random_weight(4, rng);
    const FactorParts parts = factor_parts_wmp(a, fr, e, f, h);
    CHECK(reverse_order_wmp(a, fr, parts).holds);
}

TEST_CASE("block decomposition of generated EP instances") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::size_t n = 2 + seed % 6, r = seed % (n + 1);
        const Instance inst = generate_instance(n, r, true, seed);
        const EpBlockDecomposition d = ep_block_decomposition(inst.a, inst.e, inst.f);
        CHECK(d.verified);
        CHECK(d.t1.rows() == r);
        CHECK(d.t1_invertible);
        CHECK(d.res_reconstruct < 1e-9);
        CHECK(d.res_pinv < 1e-9);
    }
    CHECK_THROWS_AS(ep_block_decomposition(CMatrix{{0, 1}, {0, 0}}, Weight::identity(2), Weight::identity(2)),
                    NotWeightedEpError);
}

TEST_CASE("canonical decomposition") {
    const CMatrix proj{{1, 0}, {0, 0}};
    const EpDecomposition d = canonical_ep_decomposition(proj, Weight::identity(2), Weight::identity(2));
    CHECK(d.verified);
    CHECK(d.c == CMatrix::identity(2));
    CHECK(rel_diff(d.p, proj) < 1e-15);

    const EpDecomposition z = canonical_ep_decomposition(CMatrix(3, 3), Weight::identity(3), Weight::identity(3));
    CHECK(z.degenerate);
    CHECK(z.verified);

    const Instance inst = generate_instance(5, 3, true, 17);
    const EpDecomposition g = canonical_ep_decomposition(inst.a, inst.e, inst.f);
    CHECK(g.verified);
    CHECK(g.res_corner < 1e-9);
    CHECK_THROWS_AS(canonical_ep_decomposition(generate_instance(5, 3, false, 17).a, inst.e, inst.f),
                    NotWeightedEpError);
}

TEST_CASE("corner inverse") {
    Rng rng(4);
    const CMatrix j = random_gaussian(4, 4, rng);
    const CMatrix p = j * block_diag(CMatrix::identity(2), CMatrix(2, 2)) * inverse(j);
    const CMatrix a = random_gaussian(4, 4, rng);
    const CMatrix x = pAp_inverse(a, p);
    CHECK(rel_diff(p * a * p * x, p) < 1e-10);
    CHECK(rel_diff(x * p * a * p, p) < 1e-10);
    CHECK(rel_diff(p * x * p, x) < 1e-10);
    CHECK_THROWS_AS(pAp_inverse(a, 2.0 * p), PreconditionError);
    CHECK_THROWS_AS(pAp_inverse(CMatrix(4, 4), p), SingularError);
}

TEST_CASE("synthesis rejects violated preconditions by name") {
    Rng rng(5);
    const Instance inst = generate_instance(4, 2, true, 3);
    const CMatrix seed = random_gaussian(4, 4, rng);
    CHECK_NOTHROW(ep_synthesize_from_decomposition(inst.c, inst.p, seed, inst.e, inst.f));
    CHECK_THROWS_WITH_AS(ep_synthesize_from_decomposition(CMatrix(4, 4), inst.p, seed, inst.e, inst.f),
                         doctest::Contains("c is not invertible"), PreconditionError);
    CHECK_THROWS_WITH_AS(ep_synthesize_from_decomposition(inst.c, 2.0 * inst.p, seed, inst.e, inst.f),
                         doctest::Contains("idempotent"), PreconditionError);
    CHECK_THROWS_WITH_AS(ep_synthesize_from_decomposition(random_gaussian(4, 4, rng), inst.p, seed, inst.e, inst.f),
                         doctest::Contains("hermitian"), PreconditionError);
    CHECK_THROWS_WITH_AS(ep_synthesize_from_decomposition(inst.c, inst.p, CMatrix(4, 4), inst.e, inst.f),
                         doctest::Contains("p core p"), PreconditionError);
}

TEST_CASE("injective/surjective form") {
    Rng rng(6);
    const Instance inst = generate_instance(5, 2, true, 8);
    const EpBlockDecomposition d = ep_block_decomposition(inst.a, inst.e, inst.f);
    const CMatrix p = inst.a * wmp_inverse(inst.a, inst.e, inst.f).pinv;
    const InjSurjFormReport ok = check_injective_surjective_form(inst.a, d.t1, d.j, d.j_inv, p, inst.e, inst.f);
    CHECK(ok.holds);

    const InjSurjFormReport wrong_p =
        check_injective_surjective_form(inst.a, d.t1, d.j, d.j_inv, CMatrix::identity(5) - p, inst.e, inst.f);
    CHECK_FALSE(wrong_p.holds);
    const InjSurjFormReport rank_def =
        check_injective_surjective_form(inst.a, d.t1, random_rank(5, 5, 4, rng), d.j_inv, p, inst.e, inst.f);
    CHECK_FALSE(rank_def.s_injective);
    CHECK_FALSE(rank_def.holds);
}
