#include "qcycle/density.hpp"

#include <nlohmann/json.hpp>

namespace qcycle {

int DensityPolynomial::degree() const {
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
        if (coeffs[i] != 0) return i;
    return -1;
}

Rat DensityPolynomial::eval(const Rat& x) const {
    Rat r = 0;
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) r = r * x + coeffs[i];
    return r;
}

DensityPolynomial DensityPolynomial::derivative() const {
    DensityPolynomial d;
    for (size_t i = 1; i < coeffs.size(); ++i) d.coeffs.push_back(Rat(Int(i)) * coeffs[i]);
    return d;
}

DensityPolynomial DensityPolynomial::negate_variable() const {
    DensityPolynomial r = *this;
    for (size_t i = 1; i < r.coeffs.size(); i += 2) r.coeffs[i] = -r.coeffs[i];
    return r;
}

DensityPolynomial operator*(const DensityPolynomial& a, const DensityPolynomial& b) {
    DensityPolynomial r;
    if (a.coeffs.empty() || b.coeffs.empty()) return r;
    r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, Rat(0));
    for (size_t i = 0; i < a.coeffs.size(); ++i)
        for (size_t j = 0; j < b.coeffs.size(); ++j) r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    return r;
}

JordanInvariants TernaryShape::jordan() const {
    JordanInvariants inv;
    inv.betas = {1, beta2, beta3};
    inv.classes = {eps1_class, eps2_class, eps3_class};
    return inv;
}

DensityInvariants density_invariants(const TernaryShape& t, const PAdicContext& ctx) {
    if (t.beta2 < 1 || t.beta2 > t.beta3)
        throw std::invalid_argument("need 1 <= beta2 <= beta3");
    DensityInvariants inv;
    if (t.beta2 % 2 != 0) {
        inv.sigma = 2;
        inv.xi_tilde = ctx.chi_minus_one() * t.eps1_class * t.eps2_class;
    } else {
        inv.sigma = 1;
        inv.xi_tilde = 0;
    }
    inv.eta = is_isotropic_ternary(t.jordan(), ctx) ? 1 : -1;
    return inv;
}

namespace {

int sgn_pow(int s, long e) { return (e % 2 == 0) ? 1 : s; }

void add_term(DensityPolynomial& poly, long deg, const Rat& c) {
    if (deg < 0) throw std::logic_error("negative exponent in density polynomial");
    if (static_cast<long>(poly.coeffs.size()) <= deg) poly.coeffs.resize(deg + 1, Rat(0));
    poly.coeffs[deg] += c;
}

}  // namespace

FTildeResult f_tilde(const TernaryShape& t, const PAdicContext& ctx) {
    const DensityInvariants inv = density_invariants(t, ctx);
    const long b2 = t.beta2, b3 = t.beta3;
    const long h = (1 + b2 - inv.sigma) / 2;  // integral for both parities
    DensityPolynomial f;

    for (long i = 0; i <= 1; ++i)
        for (long j = 0; j <= h - i; ++j)
            add_term(f, i + 2 * j, Rat(ctx.pow_p(i + j)));

    for (long i = 0; i <= 1; ++i)
        for (long j = 0; j <= h - i; ++j)
            add_term(f, b3 + inv.sigma + i + 2 * j, Rat(inv.eta) * Rat(ctx.pow_p(h - j)));

    if (inv.xi_tilde != 0) {
        const Rat lead = Rat(ctx.pow_p((1 + b2 - inv.sigma + 2) / 2));
        for (long i = 0; i <= 1; ++i)
            for (long j = 0; j <= b3 - b2 + 2 * inv.sigma - 4; ++j)
                add_term(f, b2 - inv.sigma + 2 + i + j,
                         lead * Rat(sgn_pow(inv.xi_tilde, j)));
    }

    FTildeResult r;
    r.poly = std::move(f);
    r.representable = is_represented_by_vprime(t.jordan(), ctx);
    return r;
}

DensityPolynomial gamma_tilde(const PAdicContext& ctx) {
    const Rat q = Rat(1) / Rat(ctx.p * ctx.p);
    DensityPolynomial a{{Rat(1), -q}};
    DensityPolynomial b{{Rat(1), Rat(0), -q}};
    return a * b;
}

DensityPolynomial katsurada_f(const TernaryShape& t, const PAdicContext& ctx) {
    return gamma_tilde(ctx) * f_tilde(t, ctx).poly;
}

DensityPolynomial a_st(const TernaryShape& t, const PAdicContext& ctx) {
    return katsurada_f(t, ctx).negate_variable();
}

Rat alpha_prime(const TernaryShape& t, const PAdicContext& ctx) {
    return a_st(t, ctx).derivative().eval(Rat(1));
}

Rat case_derivative_expression(const TernaryShape& t, const PAdicContext& ctx) {
    const long b2 = t.beta2, b3 = t.beta3;
    const Rat p(ctx.p);
    Rat base = Rat(-b2 - b3 - 3);
    if (b2 % 2 != 0) {
        const Int ph = ctx.pow_p((b2 + 1) / 2);
        const Rat tail = Rat(2 * (ph - 1)) / Rat(ctx.p - 1);
        const int chi_pair = ctx.chi_minus_one() * t.eps1_class * t.eps2_class;
        if (chi_pair == 1)
            return base + Rat(ph) + tail;  // first case
        return base + Rat(b3 - b2 + 1) * Rat(ph) + tail;  // second case
    }
    const Int ph = ctx.pow_p(b2 / 2 + 1);
    return base + Rat(2 * (ph - 1)) / Rat(ctx.p - 1);  // third case
}

ThmCReport verify_theorem_c(const Int& p, const TernaryShape& shape, bool strict_p3_intro) {
    const PAdicContext ctx = PAdicContext::make(p);
    ThmCReport rep;
    rep.p = p;
    rep.shape = shape;

    if (!is_represented_by_vprime(shape.jordan(), ctx)) {
        rep.skipped = true;
        rep.skip_reason = "not representable by V'";
        return rep;
    }
    if (strict_p3_intro && p == 3 && shape.beta2 < 2) {
        rep.skipped = true;
        rep.skip_reason = "p = 3 excluded under strict domain reading";
        return rep;
    }

    HZTriple triple;
    triple.eps1_class = shape.eps1_class;
    triple.beta2 = shape.beta2;
    triple.beta3 = shape.beta3;
    triple.eps2_class = shape.eps2_class;
    triple.eps3_class = shape.eps3_class;
    triple.p = p;
    rep.lhs = hz_triple_product(triple).value;

    const Rat ap = alpha_prime(shape, ctx);
    const Rat p2(p * p);
    rep.rhs = -Rat(p2 * p2) / ((p2 + 1) * (p2 - 1)) * ap;

    const FTildeResult ft = f_tilde(shape, ctx);
    const DensityPolynomial fneg = ft.poly.negate_variable();
    rep.f_tilde_root_ok = ft.poly.eval(Rat(-1)) == 0;
    rep.derivative_case_ok =
        fneg.derivative().eval(Rat(1)) == case_derivative_expression(shape, ctx);

    rep.passed = (Rat(rep.lhs) == rep.rhs) && rep.f_tilde_root_ok && rep.derivative_case_ok;
    return rep;
}

SweepSummary thmc_sweep(const std::vector<Int>& primes, long beta_max,
                        bool strict_p3_intro, bool keep_reports) {
    SweepSummary s;
    for (const Int& p : primes)
        for (long b2 = 1; b2 <= beta_max; ++b2)
            for (long b3 = b2; b3 <= beta_max; ++b3)
                for (int e1 : {1, -1})
                    for (int e2 : {1, -1})
                        for (int e3 : {1, -1}) {
                            TernaryShape shape{b2, b3, e1, e2, e3};
                            ThmCReport r = verify_theorem_c(p, shape, strict_p3_intro);
                            ++s.checked;
                            if (r.skipped)
                                ++s.skipped;
                            else if (r.passed)
                                ++s.passed;
                            else
                                ++s.failed;
                            if (keep_reports || (!r.skipped && !r.passed))
                                s.reports.push_back(std::move(r));
                        }
    return s;
}

std::string poly_to_json(const DensityPolynomial& p) {
    nlohmann::json j = nlohmann::json::array();
    for (const Rat& c : p.coeffs) j.push_back(c.str());
    return j.dump();
}

}  // namespace qcycle
