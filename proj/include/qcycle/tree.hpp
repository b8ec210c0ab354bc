#pragma once

#include "qcycle/matrix.hpp"
#include "qcycle/padic.hpp"

#include <compare>
#include <set>
#include <string>
#include <vector>

namespace qcycle {

// Finite-radius model of the Bruhat-Tits tree of PGL_2(Q_p).  A vertex is a
// homothety class of Z_p-lattices in Q_p^2; an edge (a pair of classes at
// distance 1) carries a lattice pair A_0 > A_1 of index p and models a
// superspecial point.

// Canonical vertex representative: the unique sublattice representative
// L < Z_p^2 with L not contained in p Z_p^2, written in Hermite form
// [[p^a, b], [0, p^c]] with 0 <= b < p^a.
struct VertexKey {
    long a = 0, c = 0;
    Int b = 0;

    bool operator==(const VertexKey& o) const { return a == o.a && c == o.c && b == o.b; }
    bool operator<(const VertexKey& o) const {
        if (a != o.a) return a < o.a;
        if (c != o.c) return c < o.c;
        return b < o.b;
    }
};

struct TreeEdge {
    VertexKey v0, v1;  // stored with v0 < v1

    bool operator==(const TreeEdge& o) const { return v0 == o.v0 && v1 == o.v1; }
    bool operator<(const TreeEdge& o) const {
        if (!(v0 == o.v0)) return v0 < o.v0;
        return v1 < o.v1;
    }
};

// A_0 > A_1 with [A_0 : A_1] = p; concrete bases for one edge orientation.
struct LatticePair {
    Mat2 a0, a1;
};

struct SpecialEndo {
    Mat2 m;  // traceless, det != 0

    static SpecialEndo make(const Mat2& m);
    long det_valuation(const Int& p) const;
};

class Tree {
  public:
    explicit Tree(const PAdicContext& ctx) : ctx_(ctx) {}

    const PAdicContext& ctx() const { return ctx_; }

    VertexKey canonical_vertex(const Mat2& basis) const;
    Mat2 basis_of(const VertexKey& v) const;

    std::vector<VertexKey> neighbors(const VertexKey& v) const;
    long distance(const VertexKey& u, const VertexKey& v) const;

    std::vector<VertexKey> ball(long radius) const;       // around the standard vertex
    std::vector<TreeEdge> ball_edges(long radius) const;  // edges with both ends in the ball

    // Bases (A_0, A_1) for the orientation with A_0 the v0-representative.
    LatticePair lattice_pair(const TreeEdge& e) const;
    LatticePair lattice_pair(const VertexKey& head, const VertexKey& tail) const;

    // g maps the lattice with the given basis into itself.
    bool stabilizes(const Mat2& g, const Mat2& basis) const;
    // g maps the src lattice into the dst lattice.
    bool maps_into(const Mat2& g, const Mat2& src, const Mat2& dst) const;

    // The inclusion condition for the twisted endomorphism:
    // p s A_0 < A_1 and s A_1 < A_0 (the mirrored orientation gives the
    // same condition and is checked as well).
    bool antispecial_condition(const SpecialEndo& s, const TreeEdge& e) const;
    std::set<TreeEdge> antispecial_superspecial_points(const SpecialEndo& s, long radius) const;

    // Membership for the untwisted endomorphism: g stabilizes both lattices.
    bool special_condition(const Mat2& g, const TreeEdge& e) const;
    std::set<TreeEdge> special_superspecial_points(const Mat2& g, long radius) const;

    struct FixedSet {
        std::set<VertexKey> vertices;
        std::set<TreeEdge> midpoints;  // edges whose two classes are swapped
        bool empty() const { return vertices.empty() && midpoints.empty(); }
    };
    FixedSet fixed_set(const Mat2& g, long radius) const;

    // Doubled distance from a vertex to the fixed set (midpoints count 1/2).
    long doubled_distance_to(const VertexKey& v, const FixedSet& f) const;

    enum class EquationCase { i, ii, iii };

    struct LocalEquationReport {
        EquationCase tag;
        long m = 0;
        Int abar, bbar, cbar;  // p s = p^m [[abar, bbar], [cbar, -abar]] mod p^N
        Int b0 = 0;            // case ii only: bbar = p b0
        VertexKey closer_vertex;  // case i only
        std::vector<std::string> violations;  // matrix-side implications that failed
    };

    LocalEquationReport classify_local_equation(const SpecialEndo& s, const TreeEdge& e,
                                                long radius) const;
    // same, against a fixed set computed once by the caller
    LocalEquationReport classify_local_equation(const SpecialEndo& s, const TreeEdge& e,
                                                const FixedSet& fixed) const;

  private:
    PAdicContext ctx_;
};

std::string equation_case_name(Tree::EquationCase c);

}  // namespace qcycle
