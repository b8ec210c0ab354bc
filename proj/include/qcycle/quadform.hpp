#pragma once

#include "qcycle/matrix.hpp"
#include "qcycle/padic.hpp"

#include <vector>

namespace qcycle {

// Symmetric bilinear forms over Z_p (p odd): Jordan diagonalization,
// GL_n(Z_p)-equivalence, ternary isotropy, and the local representability
// predicate for the four-dimensional quaternionic space.

struct SymmetricForm {
    int n = 0;
    RatMat gram;       // symmetric, nondegenerate, denominators coprime to p
    PAdicContext ctx;

    static SymmetricForm make(RatMat gram, const PAdicContext& ctx);
};

struct JordanInvariants {
    std::vector<long> betas;     // nondecreasing valuations
    std::vector<int> classes;    // chi of the unit parts
    std::vector<Int> unit_reps;  // unit representatives mod p^precision

    int n() const { return static_cast<int>(betas.size()); }
};

struct JordanDecomposition {
    RatMat basis_change;  // U, unimodular over Z_p: U^T gram U diagonal
    JordanInvariants invariants;
};

JordanDecomposition jordan_diagonalize(const SymmetricForm& f);

bool is_equivalent(const SymmetricForm& f, const SymmetricForm& g);

// Ternary isotropy by the diagonal criterion: for i != j with
// beta_i = beta_j (mod 2) and {i,j,k} = {1,2,3}, the form is isotropic iff
// chi(-eps_i eps_j) = 1 or beta_k = beta_j (mod 2).  All admissible pairs
// are evaluated; a disagreement would be a logic error.
bool is_isotropic_ternary(const JordanInvariants& d, const PAdicContext& ctx);

// Independent route to the same answer through Hilbert symbols: a ternary
// form is isotropic iff its Hasse invariant equals (-1, -det)_p.
bool is_isotropic_ternary_hasse(const JordanInvariants& d, const PAdicContext& ctx);

// Local sign condition deciding representability of
// diag(eps_1 p, eps_2 p^{beta_2}, eps_3 p^{beta_3}) by the quaternionic
// four-space; requires beta_1 = 1.
bool is_represented_by_vprime(const JordanInvariants& t, const PAdicContext& ctx);

// JSON wire format (see the CLI): {"p": int, "gram": [[rational-as-string]]}
std::string symmetric_form_to_json(const SymmetricForm& f);
SymmetricForm symmetric_form_from_json(const std::string& text, int precision = 24);
std::string jordan_invariants_to_json(const JordanInvariants& d);

}  // namespace qcycle
