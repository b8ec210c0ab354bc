#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace qcycle {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Exact p-adic scalar arithmetic for an odd prime p.  All values are
// rationals with arbitrary-precision integer parts; unit representatives
// are reported modulo p^precision.

struct PAdicContext {
    Int p;            // odd prime
    int precision;    // working modulus p^precision for unit representatives
    Int delta;        // fixed non-square unit mod p

    static PAdicContext make(const Int& p, int precision = 24,
                             std::optional<Int> delta = std::nullopt);

    Int pow_p(long e) const;  // p^e, e >= 0
    int chi_minus_one() const;
};

struct UnitValuation {
    long valuation = 0;
    int unit_class = 1;  // chi of the unit part
    Int unit_rep;        // unit part mod p^precision
};

// valuation of a nonzero integer / rational
long valuation(const Int& x, const Int& p);
long valuation(const Rat& x, const Int& p);

Int mod_reduce(const Int& x, const Int& m);          // representative in [0, m)
Int inv_mod(const Int& x, const Int& m);             // inverse mod m, gcd(x,m)=1
Int rat_mod(const Rat& x, const Int& m, const Int& p);  // x mod m, denominator coprime to p

// Legendre symbol chi(u mod p); throws if p | u.
int chi(const Int& u, const PAdicContext& ctx);

// x = p^v * u with u a unit; throws on x = 0.
UnitValuation valuate(const Rat& x, const PAdicContext& ctx);

// Hilbert symbol (a, b)_p for the odd prime of the context.
int hilbert_symbol(const Rat& a, const Rat& b, const PAdicContext& ctx);

bool is_prime(const Int& n);

}  // namespace qcycle
