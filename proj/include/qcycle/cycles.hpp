#pragma once

#include "qcycle/quadform.hpp"

namespace qcycle {

// Closed-form local intersection numbers of antispecial cycles, and the
// degenerate Hirzebruch-Zagier triple product obtained from them.

struct AntispecialPair {
    long alpha1 = 0, alpha2 = 0;  // alpha1 <= alpha2
    int eps1_class = 1, eps2_class = 1;
    int eta_star_class = 1;
    Int p;

    void validate() const;  // p > 3, or p = 3 with alpha1 >= 1
};

struct IntersectionResult {
    Int value;
    bool negative = false;  // warning flag; negative values are legitimate
};

// Invariants (alpha_i, chi(eps_i)) of a rank-2 form with Jordan valuations
// beta_i >= 1, relative to the unit class of eta_*.
AntispecialPair invariants_from_gram(const SymmetricForm& t, int eta_star_class);

// The two-cycle intersection formula:
//   alpha1 + alpha2 + 3 minus a case term depending on the parity of
//   alpha1 and on chi(eta_* eps_1).
IntersectionResult intersection_number(const AntispecialPair& pair);

struct HZTriple {
    int eps1_class = 1;           // Q(j_1) = eps_1 p
    long beta2 = 1, beta3 = 1;    // 1 <= beta2 <= beta3
    int eps2_class = 1, eps3_class = 1;
    Int p;
    bool strict_p3_intro = false;  // alternative domain reading: p = 3 needs beta2 >= 2

    void validate() const;
};

// Triple product via the reduction to the two-cycle formula with
// alpha_i = beta_{i+1} and eta_* = -Delta eps_1 (so chi(eta_*) = -chi(-eps_1)).
IntersectionResult hz_triple_product(const HZTriple& t);

}  // namespace qcycle
