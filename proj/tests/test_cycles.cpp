#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcycle/cycles.hpp"

using namespace qcycle;

namespace {

RatMat diag2(const Rat& a, const Rat& b) {
    return RatMat{{a, Rat(0)}, {Rat(0), b}};
}

AntispecialPair pair_of(long a1, long a2, int chi_eta_eps1, const Int& p) {
    AntispecialPair r;
    r.alpha1 = a1;
    r.alpha2 = a2;
    r.eps1_class = chi_eta_eps1;
    r.eps2_class = 1;
    r.eta_star_class = 1;
    r.p = p;
    return r;
}

}  // namespace

TEST_CASE("invariants from a rank-2 Gram matrix") {
    const PAdicContext ctx = PAdicContext::make(7);
    for (int e1 : {1, -1})
        for (int e2 : {1, -1})
            for (int eta : {1, -1}) {
                const Rat u1 = e1 == 1 ? Rat(1) : Rat(ctx.delta);
                const Rat u2 = e2 == 1 ? Rat(1) : Rat(ctx.delta);
                const SymmetricForm t =
                    SymmetricForm::make(diag2(u1 * 7, u2 * 7), ctx);
                const AntispecialPair pair = invariants_from_gram(t, eta);
                CHECK(pair.alpha1 == 0);
                CHECK(pair.alpha2 == 0);
                // chi(eta_* eps_1) = chi(eta_1): independent of eta_*
                CHECK(pair.eta_star_class * pair.eps1_class == e1);
            }

    const SymmetricForm t =
        SymmetricForm::make(diag2(Rat(49), Rat(ctx.delta) * 343), ctx);
    const AntispecialPair pair = invariants_from_gram(t, 1);
    CHECK(pair.alpha1 == 1);
    CHECK(pair.alpha2 == 2);
    CHECK(pair.eps1_class == 1);
    CHECK(pair.eps2_class == -1);

    // beta_1 = 0 is below the theorem range
    const SymmetricForm low = SymmetricForm::make(diag2(Rat(1), Rat(7)), ctx);
    CHECK_THROWS_AS(invariants_from_gram(low, 1), std::domain_error);
}

TEST_CASE("square-unit scaling leaves the pair unchanged") {
    const PAdicContext ctx = PAdicContext::make(5);
    const SymmetricForm t = SymmetricForm::make(diag2(Rat(5), Rat(ctx.delta) * 125), ctx);
    const SymmetricForm scaled =
        SymmetricForm::make(diag2(Rat(5 * 9), Rat(ctx.delta) * 125 * 9), ctx);
    const AntispecialPair a = invariants_from_gram(t, -1);
    const AntispecialPair b = invariants_from_gram(scaled, -1);
    CHECK(intersection_number(a).value == intersection_number(b).value);
    CHECK(a.eps1_class == b.eps1_class);
    CHECK(a.eps2_class == b.eps2_class);
}

TEST_CASE("closed-form intersection numbers") {
    // alpha_1 = 0: case term is always 2
    for (Int p : {5, 7, 11})
        for (long a2 : {0L, 1L, 4L})
            for (int cls : {1, -1})
                CHECK(intersection_number(pair_of(0, a2, cls, p)).value == a2 + 1);

    const IntersectionResult r = intersection_number(pair_of(1, 1, -1, 5));
    CHECK(r.value == -2);
    CHECK(r.negative);

    // alpha_1 = alpha_2: both odd-case branches coincide
    for (Int p : {3, 5, 7})
        for (long a : {1L, 3L, 5L})
            CHECK(intersection_number(pair_of(a, a, 1, p)).value ==
                  intersection_number(pair_of(a, a, -1, p)).value);

    CHECK_THROWS_AS(intersection_number(pair_of(2, 1, 1, 5)), std::invalid_argument);
    CHECK_THROWS_AS(intersection_number(pair_of(0, 0, 1, 3)), std::domain_error);
    CHECK(intersection_number(pair_of(1, 1, 1, 3)).value == 5 - 3 - 2);
}

TEST_CASE("triple product reduction") {
    for (Int p : {5, 7, 11, 13}) {
        const PAdicContext ctx = PAdicContext::make(p);
        // beta_2 = beta_3 = 1 with chi(-eps1 eps2) = +1 gives 3 - p
        HZTriple t;
        t.p = p;
        t.beta2 = t.beta3 = 1;
        t.eps1_class = ctx.chi_minus_one();
        t.eps2_class = 1;
        t.eps3_class = 1;
        CHECK(hz_triple_product(t).value == 3 - p);
    }

    // even beta_2: independent of the eps_1, eps_2 classes
    for (Int p : {3, 5, 7}) {
        Int ref;
        bool first = true;
        for (int e1 : {1, -1})
            for (int e2 : {1, -1}) {
                HZTriple t;
                t.p = p;
                t.beta2 = 2;
                t.beta3 = 3;
                t.eps1_class = e1;
                t.eps2_class = e2;
                t.eps3_class = 1;
                const Int v = hz_triple_product(t).value;
                if (first) {
                    ref = v;
                    first = false;
                }
                CHECK(v == ref);
            }
    }

    HZTriple strict;
    strict.p = 3;
    strict.beta2 = strict.beta3 = 1;
    strict.strict_p3_intro = true;
    CHECK_THROWS_AS(hz_triple_product(strict), std::domain_error);
    strict.strict_p3_intro = false;
    CHECK_NOTHROW(hz_triple_product(strict));

    HZTriple bad;
    bad.p = 5;
    bad.beta2 = 2;
    bad.beta3 = 1;
    CHECK_THROWS_AS(hz_triple_product(bad), std::invalid_argument);
}
