#include "qcycle/padic.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

namespace qcycle {

bool is_prime(const Int& n) {
    return boost::multiprecision::miller_rabin_test(n, 32);
}

PAdicContext PAdicContext::make(const Int& p, int precision,
                                std::optional<Int> delta) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw std::invalid_argument("p must be an odd prime");
    if (precision < 1)
        throw std::invalid_argument("precision must be positive");
    PAdicContext ctx;
    ctx.p = p;
    ctx.precision = precision;
    if (delta) {
        Int d = mod_reduce(*delta, p);
        if (d == 0)
            throw std::invalid_argument("delta must be a unit mod p");
        ctx.delta = *delta;
        if (chi(d, ctx) != -1)
            throw std::invalid_argument("delta must be a non-square mod p");
    } else {
        // least positive non-residue
        for (Int d = 2;; ++d) {
            ctx.delta = d;
            if (chi(d, ctx) == -1) break;
        }
    }
    return ctx;
}

Int PAdicContext::pow_p(long e) const {
    if (e < 0) throw std::invalid_argument("negative exponent");
    Int r = 1;
    for (long i = 0; i < e; ++i) r *= p;
    return r;
}

int PAdicContext::chi_minus_one() const {
    return ((p - 1) / 2) % 2 == 0 ? 1 : -1;
}

long valuation(const Int& x, const Int& p) {
    if (x == 0) throw std::domain_error("zero has no valuation");
    Int y = x;
    long v = 0;
    while (y % p == 0) {
        y /= p;
        ++v;
    }
    return v;
}

long valuation(const Rat& x, const Int& p) {
    if (x == 0) throw std::domain_error("zero has no valuation");
    return valuation(numerator(x), p) - valuation(denominator(x), p);
}

Int mod_reduce(const Int& x, const Int& m) {
    Int r = x % m;
    if (r < 0) r += m;
    return r;
}

Int inv_mod(const Int& x, const Int& m) {
    // extended Euclid
    Int a = mod_reduce(x, m), b = m;
    Int u = 1, v = 0;
    while (b != 0) {
        Int q = a / b;
        Int t = a - q * b; a = b; b = t;
        t = u - q * v; u = v; v = t;
    }
    if (a != 1) throw std::domain_error("element not invertible");
    return mod_reduce(u, m);
}

Int rat_mod(const Rat& x, const Int& m, const Int& p) {
    const Int num = numerator(x), den = denominator(x);
    if (den % p == 0)
        throw std::domain_error("denominator not coprime to p");
    return mod_reduce(num * inv_mod(mod_reduce(den, m), m), m);
}

int chi(const Int& u, const PAdicContext& ctx) {
    Int r = mod_reduce(u, ctx.p);
    if (r == 0) throw std::domain_error("not a unit");
    Int e = boost::multiprecision::powm(r, (ctx.p - 1) / 2, ctx.p);
    return e == 1 ? 1 : -1;
}

UnitValuation valuate(const Rat& x, const PAdicContext& ctx) {
    if (x == 0) throw std::domain_error("zero has no valuation");
    UnitValuation r;
    r.valuation = valuation(x, ctx.p);
    Rat unit = x;
    if (r.valuation >= 0)
        unit /= Rat(ctx.pow_p(r.valuation));
    else
        unit *= Rat(ctx.pow_p(-r.valuation));
    const Int modulus = ctx.pow_p(ctx.precision);
    r.unit_rep = rat_mod(unit, modulus, ctx.p);
    r.unit_class = chi(r.unit_rep, ctx);
    return r;
}

int hilbert_symbol(const Rat& a, const Rat& b, const PAdicContext& ctx) {
    if (a == 0 || b == 0) throw std::domain_error("hilbert symbol needs nonzero arguments");
    const UnitValuation va = valuate(a, ctx);
    const UnitValuation vb = valuate(b, ctx);
    // odd p: (a,b)_p = chi(-1)^{alpha beta} chi(u)^beta chi(v)^alpha
    int s = 1;
    if ((va.valuation % 2 != 0) && (vb.valuation % 2 != 0)) s *= ctx.chi_minus_one();
    if (vb.valuation % 2 != 0) s *= va.unit_class;
    if (va.valuation % 2 != 0) s *= vb.unit_class;
    return s;
}

}  // namespace qcycle
