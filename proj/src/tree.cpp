#include "qcycle/tree.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace qcycle {

namespace {

constexpr long kInfVal = std::numeric_limits<long>::max();

long val_or_inf(const Rat& x, const Int& p) {
    return x == 0 ? kInfVal : valuation(x, p);
}

long min_entry_valuation(const Mat2& m, const Int& p) {
    long v = kInfVal;
    for (const Rat* e : {&m.a, &m.b, &m.c, &m.d}) v = std::min(v, val_or_inf(*e, p));
    return v;
}

bool integral_entries(const Mat2& m, const Int& p) {
    return min_entry_valuation(m, p) >= 0;
}

Rat pow_p_rat(const PAdicContext& ctx, long e) {
    if (e >= 0) return Rat(ctx.pow_p(e));
    return Rat(1) / Rat(ctx.pow_p(-e));
}

TreeEdge make_edge(VertexKey u, VertexKey v) {
    if (v < u) std::swap(u, v);
    return TreeEdge{u, v};
}

}  // namespace

SpecialEndo SpecialEndo::make(const Mat2& m) {
    if (m.a + m.d != 0) throw std::invalid_argument("endomorphism must be traceless");
    if (m.det() == 0) throw std::invalid_argument("endomorphism must be invertible");
    return SpecialEndo{m};
}

long SpecialEndo::det_valuation(const Int& p) const { return valuation(m.det(), p); }

VertexKey Tree::canonical_vertex(const Mat2& basis) const {
    const Int& p = ctx_.p;
    Mat2 m = basis;
    if (m.det() == 0) throw std::invalid_argument("lattice basis must be invertible");
    // column-reduce to upper triangular over Z_(p)
    if (m.d == 0 || (m.c != 0 && val_or_inf(m.c, p) < val_or_inf(m.d, p))) {
        std::swap(m.a, m.b);
        std::swap(m.c, m.d);
    }
    if (m.c != 0) {
        const Rat t = m.c / m.d;  // in Z_(p) by the valuation choice
        m.a -= t * m.b;
        m.c = 0;
    }
    // homothety-normalize so the representative is primitive in Z_p^2
    const long h = std::min({val_or_inf(m.a, p), val_or_inf(m.b, p), val_or_inf(m.d, p)});
    const long a_exp = valuation(m.a, p) - h;
    const long c_exp = valuation(m.d, p) - h;
    VertexKey key{a_exp, c_exp, 0};
    if (m.b != 0 && a_exp > 0) {
        // unit-scale the second column to (y, p^c) and reduce y mod p^a
        const Rat y = (m.b / pow_p_rat(ctx_, h)) * (Rat(ctx_.pow_p(c_exp)) / (m.d / pow_p_rat(ctx_, h)));
        key.b = rat_mod(y, ctx_.pow_p(a_exp), p);
    }
    return key;
}

Mat2 Tree::basis_of(const VertexKey& v) const {
    return Mat2{Rat(ctx_.pow_p(v.a)), Rat(v.b), Rat(0), Rat(ctx_.pow_p(v.c))};
}

std::vector<VertexKey> Tree::neighbors(const VertexKey& v) const {
    const Mat2 b = basis_of(v);
    std::vector<VertexKey> result;
    // index-p sublattices: one per line in L / pL
    for (Int c = 0; c < ctx_.p; ++c) {
        const Mat2 line{Rat(1), Rat(0), Rat(c), Rat(ctx_.p)};
        result.push_back(canonical_vertex(b * line));
    }
    const Mat2 last{Rat(0), Rat(ctx_.p), Rat(1), Rat(0)};
    result.push_back(canonical_vertex(b * last));
    return result;
}

long Tree::distance(const VertexKey& u, const VertexKey& v) const {
    const Mat2 m = basis_of(u).inverse() * basis_of(v);
    const long r = min_entry_valuation(m, ctx_.p);
    return std::abs(valuation(m.det(), ctx_.p) - 2 * r);
}

std::vector<VertexKey> Tree::ball(long radius) const {
    std::vector<VertexKey> frontier{VertexKey{}};
    std::set<VertexKey> seen(frontier.begin(), frontier.end());
    for (long d = 0; d < radius; ++d) {
        std::vector<VertexKey> next;
        for (const VertexKey& v : frontier)
            for (const VertexKey& u : neighbors(v))
                if (seen.insert(u).second) next.push_back(u);
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

std::vector<TreeEdge> Tree::ball_edges(long radius) const {
    const std::vector<VertexKey> verts = ball(radius);
    const std::set<VertexKey> in_ball(verts.begin(), verts.end());
    std::set<TreeEdge> edges;
    for (const VertexKey& v : verts)
        for (const VertexKey& u : neighbors(v))
            if (in_ball.count(u)) edges.insert(make_edge(v, u));
    return {edges.begin(), edges.end()};
}

LatticePair Tree::lattice_pair(const TreeEdge& e) const { return lattice_pair(e.v0, e.v1); }

LatticePair Tree::lattice_pair(const VertexKey& head, const VertexKey& tail) const {
    const Mat2 c = basis_of(head);
    Mat2 d = basis_of(tail);
    const Mat2 m = c.inverse() * d;
    const long r = min_entry_valuation(m, ctx_.p);
    d = d * pow_p_rat(ctx_, -r);
    if (valuation(m.det(), ctx_.p) - 2 * r != 1)
        throw std::invalid_argument("vertices are not adjacent");
    return LatticePair{c, d};
}

bool Tree::stabilizes(const Mat2& g, const Mat2& basis) const {
    return integral_entries(basis.inverse() * g * basis, ctx_.p);
}

bool Tree::maps_into(const Mat2& g, const Mat2& src, const Mat2& dst) const {
    return integral_entries(dst.inverse() * g * src, ctx_.p);
}

bool Tree::antispecial_condition(const SpecialEndo& s, const TreeEdge& e) const {
    const LatticePair lp = lattice_pair(e);
    const Mat2 ps = s.m * Rat(ctx_.p);
    const bool direct = maps_into(ps, lp.a0, lp.a1) && maps_into(s.m, lp.a1, lp.a0);
    // mirrored orientation (A_0, A_1) -> (A_1, p A_0)
    const Mat2 pa0 = lp.a0 * Rat(ctx_.p);
    const bool mirrored = maps_into(ps, lp.a1, pa0) && maps_into(s.m, pa0, lp.a1);
    return direct || mirrored;
}

std::set<TreeEdge> Tree::antispecial_superspecial_points(const SpecialEndo& s,
                                                        long radius) const {
    std::set<TreeEdge> result;
    if (s.det_valuation(ctx_.p) < -1) return result;
    for (const TreeEdge& e : ball_edges(radius))
        if (antispecial_condition(s, e)) result.insert(e);
    return result;
}

bool Tree::special_condition(const Mat2& g, const TreeEdge& e) const {
    const LatticePair lp = lattice_pair(e);
    return stabilizes(g, lp.a0) && stabilizes(g, lp.a1);
}

std::set<TreeEdge> Tree::special_superspecial_points(const Mat2& g, long radius) const {
    std::set<TreeEdge> result;
    for (const TreeEdge& e : ball_edges(radius))
        if (special_condition(g, e)) result.insert(e);
    return result;
}

Tree::FixedSet Tree::fixed_set(const Mat2& g, long radius) const {
    if (g.det() == 0) throw std::invalid_argument("need det g != 0");
    FixedSet f;
    const long det_val = valuation(g.det(), ctx_.p);
    for (const VertexKey& v : ball(radius)) {
        const Mat2 b = basis_of(v);
        const Mat2 a = b.inverse() * g * b;
        if (2 * min_entry_valuation(a, ctx_.p) == det_val) f.vertices.insert(v);
    }
    for (const TreeEdge& e : ball_edges(radius)) {
        const Mat2 b0 = basis_of(e.v0);
        const Mat2 b1 = basis_of(e.v1);
        if (canonical_vertex(g * b0) == e.v1 && canonical_vertex(g * b1) == e.v0)
            f.midpoints.insert(e);
    }
    return f;
}

long Tree::doubled_distance_to(const VertexKey& v, const FixedSet& f) const {
    long best = kInfVal;
    for (const VertexKey& u : f.vertices) best = std::min(best, 2 * distance(v, u));
    for (const TreeEdge& e : f.midpoints) {
        const long d = std::min(distance(v, e.v0), distance(v, e.v1));
        best = std::min(best, 2 * d + 1);
    }
    return best;
}

Tree::LocalEquationReport Tree::classify_local_equation(const SpecialEndo& s,
                                                        const TreeEdge& e,
                                                        long radius) const {
    return classify_local_equation(s, e, fixed_set(s.m, radius));
}

Tree::LocalEquationReport Tree::classify_local_equation(const SpecialEndo& s,
                                                        const TreeEdge& e,
                                                        const FixedSet& fixed) const {
    const Int& p = ctx_.p;
    if (s.det_valuation(p) < -1) throw std::domain_error("determinant valuation below -1");
    if (!antispecial_condition(s, e)) throw std::domain_error("edge not on the cycle");

    if (fixed.empty())
        throw std::runtime_error("fixed point set not found within radius");
    const long d0 = doubled_distance_to(e.v0, fixed);
    const long d1 = doubled_distance_to(e.v1, fixed);

    LocalEquationReport rep;
    VertexKey head = e.v0, tail = e.v1;
    if (d0 == 0 && d1 == 0) {
        rep.tag = EquationCase::iii;
    } else if (d0 == 1 && d1 == 1 && fixed.midpoints.count(e)) {
        rep.tag = EquationCase::ii;
    } else if (d0 != d1) {
        rep.tag = EquationCase::i;
        rep.closer_vertex = d0 < d1 ? e.v0 : e.v1;
        if (d1 < d0) std::swap(head, tail);
    } else {
        throw std::runtime_error("edge equidistant from fixed set but not its midpoint");
    }

    // Adapted basis f_1, f_2 of A_0 with (p f_1, f_2) a basis of A_1.
    const LatticePair lp = lattice_pair(head, tail);
    const Mat2 n = lp.a0.inverse() * lp.a1;
    const Int n11 = rat_mod(n.a, p, p), n21 = rat_mod(n.c, p, p);
    Mat2 q;  // unimodular; first column spans the kernel of n mod p
    if (n11 == 0 && n21 == 0) {
        q = Mat2{Rat(1), Rat(0), Rat(0), Rat(1)};
    } else {
        const Int n12 = rat_mod(n.b, p, p), n22 = rat_mod(n.d, p, p);
        Int x;
        if (n11 != 0)
            x = mod_reduce(-n12 * inv_mod(n11, p), p);
        else
            x = mod_reduce(-n22 * inv_mod(n21, p), p);
        q = Mat2{Rat(x), Rat(1), Rat(1), Rat(0)};
    }
    const Mat2 scale{Rat(1) / Rat(p), Rat(0), Rat(0), Rat(1)};
    const Mat2 adapted = lp.a0 * (n * q * scale);

    const Mat2 m = adapted.inverse() * (s.m * Rat(p)) * adapted;
    rep.m = min_entry_valuation(m, p);
    const Rat unit = pow_p_rat(ctx_, -rep.m);
    const Mat2 mbar{m.a * unit, m.b * unit, m.c * unit, m.d * unit};
    const Int modulus = ctx_.pow_p(ctx_.precision);
    rep.abar = rat_mod(mbar.a, modulus, p);
    rep.bbar = rat_mod(mbar.b, modulus, p);
    rep.cbar = rat_mod(mbar.c, modulus, p);

    if (rep.tag == EquationCase::ii) {
        if (p == 3 && rep.m == 0)
            throw std::domain_error("outside proven range: p = 3 midpoint case with m = 0");
        if (mbar.b != 0 && val_or_inf(mbar.b, p) >= 1)
            rep.b0 = rat_mod(mbar.b / Rat(p), modulus, p);
        else if (mbar.b == 0)
            rep.b0 = 0;
        else
            rep.violations.push_back("case ii: bbar not divisible by p");
        if (rat_mod(mbar.a, p, p) != 0) rep.violations.push_back("case ii: abar not divisible by p");
        if (rep.b0 % p == 0 && mbar.b != 0)
            rep.violations.push_back("case ii: b0 not a unit");
        if (rep.cbar % p == 0) rep.violations.push_back("case ii: cbar not a unit");
    }
    if (rep.tag == EquationCase::i || rep.tag == EquationCase::iii) {
        if (rep.m < 1) rep.violations.push_back("case i/iii: m < 1");
    }
    if (rep.tag == EquationCase::iii) {
        if (rep.abar % p == 0) rep.violations.push_back("case iii: abar not a unit");
        if (rep.bbar % p != 0) rep.violations.push_back("case iii: bbar not divisible by p");
    }
    return rep;
}

std::string equation_case_name(Tree::EquationCase c) {
    switch (c) {
        case Tree::EquationCase::i: return "i";
        case Tree::EquationCase::ii: return "ii";
        case Tree::EquationCase::iii: return "iii";
    }
    return "?";
}

}  // namespace qcycle
