#include <cmath>

#include "doctest.h"
#include "wep/hermitian.hpp"
#include "wep/random.hpp"

using namespace wep;

TEST_CASE("hermitian verdicts on small matrices") {
    const CMatrix swap{{0, 1}, {1, 0}};
    const CMatrix shift{{0, 1}, {0, 0}};
    const CMatrix d = CMatrix::diagonal({1, 2});
    const NormContext l2 = NormContext::l2();

    CHECK(is_hermitian(swap, l2).hermitian);
    CHECK_FALSE(is_positive(swap, l2));
    for (NormKind k : {NormKind::L1, NormKind::L2, NormKind::Linf}) {
        const NormContext ctx = NormContext::with(k);
        CHECK(is_hermitian(d, ctx).hermitian);
        CHECK(is_positive(d, ctx));
        const HermitianVerdict v = is_hermitian(shift, ctx);
        CHECK_FALSE(v.hermitian);
        CHECK(v.deviation > 1e-3);
    }
}

TEST_CASE("sampled criterion is sharp for hermitian input under l2") {
    Rng rng(3);
    const CMatrix g = random_gaussian(5, 5, rng);
    const CMatrix h = 0.5 * (g + g.adjoint());
    CHECK(sampled_hermitian_deviation(h, NormContext::l2()) < 1e-10);
    CHECK(sampled_hermitian_deviation(g, NormContext::l2()) > 1e-3);
}

TEST_CASE("a symmetric matrix need not be hermitian under l1") {
    const CMatrix sym{{1, 0.5}, {0.5, 1}};
    CHECK(is_hermitian(sym, NormContext::l2()).hermitian);
    CHECK_FALSE(is_hermitian(sym, NormContext::with(NormKind::L1)).hermitian);
}

TEST_CASE("positivity failures name the criterion") {
    const PositivityVerdict v = check_positive(CMatrix::diagonal({1, -1}), NormContext::l2());
    CHECK_FALSE(v.positive);
    CHECK_FALSE(v.failed_criterion.empty());
    CHECK(v.min_real == doctest::Approx(-1.0));
    CHECK_THROWS_AS(Weight::make(CMatrix::diagonal({1, 0})), NotPositiveError);
    CHECK_THROWS_AS(Weight::make(CMatrix{{1, 1}, {0, 1}}), NotPositiveError);
    CHECK_THROWS_AS(Weight::make(CMatrix(2, 3)), ShapeError);
}

TEST_CASE("weight caches consistent roots") {
    Rng rng(12);
    const Weight w = random_weight(4, rng);
    CHECK(rel_diff(w.half() * w.half(), w.u()) < 1e-13);
    CHECK(rel_diff(w.half() * w.half_inv(), CMatrix::identity(4)) < 1e-13);
    CHECK(rel_diff(w.u() * w.inv(), CMatrix::identity(4)) < 1e-13);
    const Weight id = Weight::identity(3);
    CHECK(id.half() == CMatrix::identity(3));
}

TEST_CASE("weighted hermitian: similarity and congruence routes agree") {
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const Weight w = random_weight(4, rng);
        const CMatrix g = random_gaussian(4, 4, rng);
        const CMatrix h = 0.5 * (g + g.adjoint());
        // x = u^{-1/2} h u^{1/2} is hermitian in A^u.
        const CMatrix x = w.half_inv() * h * w.half();
        const auto yes = is_hermitian_weighted(x, w, NormContext::l2());
        CHECK(yes.hermitian);
        CHECK(yes.routes_agree);
        CHECK(yes.congruence_deviation < 1e-12);
        const auto no = is_hermitian_weighted(h + w.half_inv() * g * w.half(), w, NormContext::l2());
        CHECK_FALSE(no.hermitian);
        CHECK(no.routes_agree);
    }
}

TEST_CASE("weighted norm is the similarity norm") {
    Rng rng(4);
    const Weight w = random_weight(3, rng);
    const CMatrix x = random_gaussian(3, 3, rng);
    CHECK(weighted_norm(x, w, NormContext::l2()) ==
          doctest::Approx(op_norm(w.half() * x * w.half_inv(), NormKind::L2)));
    CHECK(weighted_norm(CMatrix::identity(3), w, NormContext::with(NormKind::L1)) == doctest::Approx(1.0));
}

TEST_CASE("numerical range") {
    const auto pts = numerical_range(CMatrix::diagonal({1, 3}), 8);
    REQUIRE(pts.size() == 8);
    for (auto z : pts) {
        CHECK(std::abs(z.imag()) < 1e-12);
        CHECK(z.real() >= 1 - 1e-12);
        CHECK(z.real() <= 3 + 1e-12);
    }
    const auto disk = numerical_range(CMatrix{{0, 2}, {0, 0}}, 16);
    for (auto z : disk) CHECK(std::abs(z) == doctest::Approx(1.0));
}
