#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcycle/density.hpp"

using namespace qcycle;

namespace {

std::vector<TernaryShape> grid(long beta_max) {
    std::vector<TernaryShape> out;
    for (long b2 = 1; b2 <= beta_max; ++b2)
        for (long b3 = b2; b3 <= beta_max; ++b3)
            for (int e1 : {1, -1})
                for (int e2 : {1, -1})
                    for (int e3 : {1, -1}) out.push_back(TernaryShape{b2, b3, e1, e2, e3});
    return out;
}

}  // namespace

TEST_CASE("polynomial helpers") {
    DensityPolynomial f{{Rat(1), Rat(2), Rat(3)}};
    CHECK(f.degree() == 2);
    CHECK(f.eval(Rat(2)) == 17);
    CHECK(f.derivative().coeffs == std::vector<Rat>{Rat(2), Rat(6)});
    CHECK(f.negate_variable().eval(Rat(1)) == f.eval(Rat(-1)));
    const DensityPolynomial g{{Rat(1), Rat(1)}};
    CHECK((f * g).eval(Rat(3)) == f.eval(Rat(3)) * g.eval(Rat(3)));
}

TEST_CASE("gamma factor") {
    for (Int p : {3, 5, 7}) {
        const PAdicContext ctx = PAdicContext::make(p);
        const DensityPolynomial g = gamma_tilde(ctx);
        const Rat p2 = Rat(p * p);
        CHECK(g.coeffs[0] == 1);
        CHECK(g.eval(Rat(-1)) == (1 + 1 / p2) * (1 - 1 / p2));
        CHECK(g.eval(p2) == 0);
    }
}

TEST_CASE("worked small case") {
    const PAdicContext ctx = PAdicContext::make(5);
    const TernaryShape shape{1, 1, 1, 1, 1};  // chi(-eps1 eps2) = chi(-1) = +1 at p = 5
    const DensityInvariants inv = density_invariants(shape, ctx);
    CHECK(inv.sigma == 2);
    CHECK(inv.xi_tilde == 1);
    CHECK(inv.eta == 1);
    const FTildeResult ft = f_tilde(shape, ctx);
    CHECK(ft.poly.coeffs == std::vector<Rat>{Rat(1), Rat(5), Rat(5), Rat(1)});
    CHECK(ft.representable);
    CHECK(katsurada_f(shape, ctx).degree() == ft.poly.degree() + 3);

    // first case: (d/dX F~(-X))|_1 = p - 3 and the full derivative identity
    CHECK(case_derivative_expression(shape, ctx) == 2);
    CHECK(alpha_prime(shape, ctx) == Rat(26, 25) * Rat(24, 25) * 2);
    CHECK(a_st(shape, ctx).eval(Rat(1)) == 0);
}

TEST_CASE("root and case-derivative identities on a grid") {
    for (Int p : {3, 5, 7}) {
        const PAdicContext ctx = PAdicContext::make(p);
        for (const TernaryShape& shape : grid(5)) {
            const FTildeResult ft = f_tilde(shape, ctx);
            const bool representable = is_represented_by_vprime(shape.jordan(), ctx);
            CHECK(ft.representable == representable);
            // vanishing at -1 detects exactly the representable shapes
            CHECK((ft.poly.eval(Rat(-1)) == 0) == representable);
            // the closed-form case expressions hold on the theorem's domain
            if (representable)
                CHECK(ft.poly.negate_variable().derivative().eval(Rat(1)) ==
                      case_derivative_expression(shape, ctx));

            const DensityInvariants inv = density_invariants(shape, ctx);
            if (inv.eta == 1 && inv.xi_tilde >= 0)
                for (const Rat& c : ft.poly.coeffs) {
                    CHECK(c >= 0);
                    CHECK(denominator(c) == 1);
                }
        }
    }
}

TEST_CASE("isotropy flag matches the quadform criterion") {
    for (Int p : {3, 5, 7}) {
        const PAdicContext ctx = PAdicContext::make(p);
        for (const TernaryShape& shape : grid(4)) {
            const DensityInvariants inv = density_invariants(shape, ctx);
            CHECK((inv.eta == 1) == is_isotropic_ternary(shape.jordan(), ctx));
        }
    }
}

TEST_CASE("theorem verification reports") {
    ThmCReport r = verify_theorem_c(5, TernaryShape{1, 1, 1, 1, 1});
    CHECK(!r.skipped);
    CHECK(r.passed);
    CHECK(r.lhs == -2);
    CHECK(r.rhs == -2);
    CHECK(r.derivative_case_ok);
    CHECK(r.f_tilde_root_ok);

    // beta = (1,2) with chi(-eps1 eps3) = +1 is out of hypothesis
    const PAdicContext c5 = PAdicContext::make(5);
    TernaryShape skip{1, 2, 1, 1, c5.chi_minus_one()};
    REQUIRE(c5.chi_minus_one() * skip.eps1_class * skip.eps3_class == 1);
    const ThmCReport s = verify_theorem_c(5, skip);
    CHECK(s.skipped);

    const ThmCReport strict = verify_theorem_c(3, TernaryShape{1, 1, 1, 1, 1}, true);
    CHECK(strict.skipped);

    const SweepSummary sweep = thmc_sweep({3, 5}, 3);
    CHECK(sweep.failed == 0);
    CHECK(sweep.passed > 0);
    CHECK(sweep.checked == 2 * 6 * 8);
}
