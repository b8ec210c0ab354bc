#include "qcycle/cycles.hpp"

namespace qcycle {

namespace {

Int int_pow(const Int& p, long e) {
    Int r = 1;
    for (long i = 0; i < e; ++i) r *= p;
    return r;
}

// 2 (p^k - 1)/(p - 1), always an integer
Int twice_geometric(const Int& p, long k) {
    Int num = 2 * (int_pow(p, k) - 1);
    return num / (p - 1);
}

}  // namespace

void AntispecialPair::validate() const {
    if (alpha1 < 0 || alpha1 > alpha2)
        throw std::invalid_argument("need 0 <= alpha1 <= alpha2");
    if (eps1_class * eps1_class != 1 || eps2_class * eps2_class != 1 ||
        eta_star_class * eta_star_class != 1)
        throw std::invalid_argument("classes must be +/-1");
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("p must be an odd prime");
    if (p == 3 && alpha1 < 1)
        throw std::domain_error("outside proven range: p = 3 requires alpha1 >= 1");
}

AntispecialPair invariants_from_gram(const SymmetricForm& t, int eta_star_class) {
    if (t.n != 2) throw std::invalid_argument("rank-2 form expected");
    const JordanInvariants inv = jordan_diagonalize(t).invariants;
    if (inv.betas[0] < 1)
        throw std::domain_error("valuation below theorem range");
    AntispecialPair pair;
    pair.alpha1 = inv.betas[0] - 1;
    pair.alpha2 = inv.betas[1] - 1;
    pair.eps1_class = eta_star_class * inv.classes[0];
    pair.eps2_class = eta_star_class * inv.classes[1];
    pair.eta_star_class = eta_star_class;
    pair.p = t.ctx.p;
    pair.validate();
    return pair;
}

IntersectionResult intersection_number(const AntispecialPair& pair) {
    pair.validate();
    const Int& p = pair.p;
    const long a1 = pair.alpha1, a2 = pair.alpha2;
    Int case_term;
    if (a1 % 2 == 1) {
        const long h = (a1 + 1) / 2;
        const int chi_eta_eps1 = pair.eta_star_class * pair.eps1_class;
        if (chi_eta_eps1 == -1)
            case_term = int_pow(p, h) + twice_geometric(p, h);
        else
            case_term = Int(a2 - a1 + 1) * int_pow(p, h) + twice_geometric(p, h);
    } else {
        case_term = twice_geometric(p, a1 / 2 + 1);
    }
    IntersectionResult r;
    r.value = Int(a1 + a2 + 3) - case_term;
    r.negative = r.value < 0;
    return r;
}

void HZTriple::validate() const {
    if (beta2 < 1 || beta2 > beta3)
        throw std::invalid_argument("need 1 <= beta2 <= beta3");
    if (eps1_class * eps1_class != 1 || eps2_class * eps2_class != 1 ||
        eps3_class * eps3_class != 1)
        throw std::invalid_argument("classes must be +/-1");
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("p must be an odd prime");
    if (strict_p3_intro && p == 3 && beta2 < 2)
        throw std::domain_error("outside proven range: strict reading requires beta2 >= 2 at p = 3");
}

IntersectionResult hz_triple_product(const HZTriple& t) {
    t.validate();
    const int chi_m1 = (((t.p - 1) / 2) % 2 == 0) ? 1 : -1;
    AntispecialPair pair;
    pair.alpha1 = t.beta2;
    pair.alpha2 = t.beta3;
    pair.eps1_class = t.eps2_class;
    pair.eps2_class = t.eps3_class;
    // eta_* = -Delta eps_1, and chi(Delta) = -1
    pair.eta_star_class = -chi_m1 * t.eps1_class;
    pair.p = t.p;
    return intersection_number(pair);
}

}  // namespace qcycle
