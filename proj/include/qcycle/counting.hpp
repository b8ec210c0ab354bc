#pragma once

#include "qcycle/padic.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace qcycle {

// Brute-force oracle for the local representation density
//   alpha_p(S, T) = lim_t p^{-t n(2m-n-1)/2} #{x in M_{m,n}(Z/p^t) : x^T S x = T mod p^t}.
// Desk scale only: p^t must fit a machine word; work is budget-guarded.

using IntMat = std::vector<std::vector<Int>>;

struct CountJob {
    Int p;
    int t = 1;
    IntMat s;       // m x m integral symmetric
    IntMat target;  // n x n integral symmetric
    Int budget = Int("10000000000");
    int threads = 0;  // 0 = hardware concurrency; 1 = serial
};

struct CountResult {
    Int raw;
    Rat normalized;  // p^{-t n(2m-n-1)/2} raw
    int t = 0;
};

struct BudgetExceeded : std::runtime_error {
    Int estimated_ops;
    explicit BudgetExceeded(const Int& est)
        : std::runtime_error("work budget exceeded; estimated ops = " + est.str()),
          estimated_ops(est) {}
};

struct NotStabilized : std::runtime_error {
    Rat previous, last;
    NotStabilized(const Rat& a, const Rat& b)
        : std::runtime_error("normalized count did not stabilize: " + a.str() + " vs " + b.str()),
          previous(a),
          last(b) {}
};

// Worst-case primitive-op estimate for the column-recursive path.
Int estimate_ops(const CountJob& job);

// Column-recursive count with per-column candidate lists and cross-congruence
// filtering; parallel over column-1 candidates.
CountResult count_generic(const CountJob& job);

// Orbit-reduced count for n = 3 with diagonal T and diagonal unit S (m >= 3):
// column-1 candidates collapse into isometry classes keyed by content and
// scaled value, and each class contributes class-size times one pair count.
CountResult count_orbit(const CountJob& job);
bool orbit_path_applicable(const CountJob& job);

// Full p^{mnt} enumeration; tiny instances only (equality oracle for tests).
CountResult count_naive(const CountJob& job);

// Orbit path when applicable, column-recursive otherwise.
CountResult count(const CountJob& job);

struct StabilizedDensity {
    Rat value;
    int t = 0;  // the confirming level
};

// Runs count at t = t_min..t_max and requires the last two normalized values
// to agree exactly.
StabilizedDensity stabilized_density(const CountJob& base, int t_min, int t_max);

}  // namespace qcycle
