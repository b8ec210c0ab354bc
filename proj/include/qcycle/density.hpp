#pragma once

#include "qcycle/cycles.hpp"
#include "qcycle/quadform.hpp"

#include <string>
#include <vector>

namespace qcycle {

// Local representation densities in closed form: the explicit polynomial
// f_T = gamma~ * F~ with f_T(p^{-r}) = alpha_p(S(1)_r, T), its twist
// A_{S,T}(X) = f_T(-X) for S = diag(1,-1,1,-Delta), and the derivative
// alpha'_p(S,T) entering the triple-product identity.

struct DensityPolynomial {
    std::vector<Rat> coeffs;  // ascending degree; exact rationals

    int degree() const;
    Rat eval(const Rat& x) const;
    DensityPolynomial derivative() const;
    DensityPolynomial negate_variable() const;  // X -> -X
    friend DensityPolynomial operator*(const DensityPolynomial& a,
                                       const DensityPolynomial& b);
    bool operator==(const DensityPolynomial&) const = default;
};

struct TernaryShape {
    long beta2 = 1, beta3 = 1;  // T = diag(eps1 p, eps2 p^beta2, eps3 p^beta3)
    int eps1_class = 1, eps2_class = 1, eps3_class = 1;

    JordanInvariants jordan() const;
};

struct DensityInvariants {
    int xi_tilde = 0;  // chi(-eps1 eps2) if beta2 odd, else 0
    int sigma = 1;     // 2 if beta2 odd, else 1
    int eta = 1;       // +1 iff T isotropic
};

DensityInvariants density_invariants(const TernaryShape& t, const PAdicContext& ctx);

struct FTildeResult {
    DensityPolynomial poly;
    bool representable = true;  // warning flag; the polynomial is defined regardless
};

// The explicit triple sum for F~_p(T; X); empty sums contribute 0.
FTildeResult f_tilde(const TernaryShape& t, const PAdicContext& ctx);

// gamma~_p(X) = (1 - p^{-2} X)(1 - p^{-2} X^2)
DensityPolynomial gamma_tilde(const PAdicContext& ctx);

DensityPolynomial katsurada_f(const TernaryShape& t, const PAdicContext& ctx);
DensityPolynomial a_st(const TernaryShape& t, const PAdicContext& ctx);

// d/dX A_{S,T}(X) at X = 1
Rat alpha_prime(const TernaryShape& t, const PAdicContext& ctx);

// The closed-form case expression for d/dX F~(T;-X)|_{X=1}; the second
// case's displayed exponent carries a bare beta which is read as beta2.
Rat case_derivative_expression(const TernaryShape& t, const PAdicContext& ctx);

struct ThmCReport {
    Int p;
    TernaryShape shape;
    bool skipped = false;
    std::string skip_reason;
    bool passed = false;
    Int lhs;        // closed-form triple product
    Rat rhs;        // -p^4 / ((p^2+1)(p^2-1)) * alpha'_p(S,T)
    bool derivative_case_ok = false;  // polynomial derivative vs case expression
    bool f_tilde_root_ok = false;     // F~(-1) = 0
};

ThmCReport verify_theorem_c(const Int& p, const TernaryShape& shape,
                            bool strict_p3_intro = false);

struct SweepSummary {
    long checked = 0, passed = 0, skipped = 0, failed = 0;
    std::vector<ThmCReport> reports;
};

SweepSummary thmc_sweep(const std::vector<Int>& primes, long beta_max,
                        bool strict_p3_intro = false, bool keep_reports = false);

std::string poly_to_json(const DensityPolynomial& p);

}  // namespace qcycle
