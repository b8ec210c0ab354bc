#include "qcycle/quadform.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

namespace qcycle {

namespace {

constexpr long kInfVal = std::numeric_limits<long>::max();

long val_or_inf(const Rat& x, const Int& p) {
    return x == 0 ? kInfVal : valuation(x, p);
}

}  // namespace

SymmetricForm SymmetricForm::make(RatMat gram, const PAdicContext& ctx) {
    const int n = mat_rows(gram);
    if (n == 0 || mat_cols(gram) != n)
        throw std::invalid_argument("gram matrix must be square and nonempty");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (gram[i][j] != gram[j][i])
                throw std::invalid_argument("gram matrix must be symmetric");
            if (denominator(gram[i][j]) % ctx.p == 0)
                throw std::invalid_argument("gram entries must have denominator coprime to p");
        }
    if (det(gram) == 0) throw std::invalid_argument("degenerate form");
    return SymmetricForm{n, std::move(gram), ctx};
}

JordanDecomposition jordan_diagonalize(const SymmetricForm& f) {
    const int n = f.n;
    const Int& p = f.ctx.p;
    RatMat a = f.gram;
    RatMat u = identity_mat(n);

    // Elementary congruence step: basis change e_i <- e_i + t e_j acts on the
    // Gram matrix as row_i += t row_j followed by col_i += t col_j.
    auto add_into = [&](int i, int j, const Rat& t) {
        for (int k = 0; k < n; ++k) a[i][k] += t * a[j][k];
        for (int k = 0; k < n; ++k) a[k][i] += t * a[k][j];
        for (int k = 0; k < n; ++k) u[k][i] += t * u[k][j];
    };
    auto swap_basis = [&](int i, int j) {
        if (i == j) return;
        std::swap(a[i], a[j]);
        for (int k = 0; k < n; ++k) std::swap(a[k][i], a[k][j]);
        for (int k = 0; k < n; ++k) std::swap(u[k][i], u[k][j]);
    };

    for (int k = 0; k < n; ++k) {
        // minimal-valuation pivot in the trailing block, diagonal preferred
        long best = kInfVal;
        int pi = -1, pj = -1;
        for (int i = k; i < n; ++i)
            for (int j = k; j < n; ++j) {
                long v = val_or_inf(a[i][j], p);
                if (v < best || (v == best && pi != pj && i == j)) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) throw std::domain_error("degenerate form");
        if (pi != pj) {
            // off-diagonal pivot: e_i <- e_i + e_j makes the (i,i) entry
            // have the minimal valuation (p odd)
            add_into(pi, pj, Rat(1));
            pj = pi;
        }
        swap_basis(k, pi);
        for (int r = k + 1; r < n; ++r) {
            if (a[r][k] == 0) continue;
            add_into(r, k, -a[r][k] / a[k][k]);
        }
    }

    // sort diagonal by valuation, stably
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return valuation(a[x][x], p) < valuation(a[y][y], p);
    });
    RatMat perm(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i) perm[order[i]][i] = 1;
    u = mat_mul(u, perm);

    JordanInvariants inv;
    for (int i = 0; i < n; ++i) {
        UnitValuation v = valuate(a[order[i]][order[i]], f.ctx);
        inv.betas.push_back(v.valuation);
        inv.classes.push_back(v.unit_class);
        inv.unit_reps.push_back(v.unit_rep);
    }
    return JordanDecomposition{std::move(u), std::move(inv)};
}

bool is_equivalent(const SymmetricForm& f, const SymmetricForm& g) {
    if (f.n != g.n) throw std::invalid_argument("dimension mismatch");
    if (f.ctx.p != g.ctx.p) throw std::invalid_argument("prime mismatch");
    const JordanInvariants a = jordan_diagonalize(f).invariants;
    const JordanInvariants b = jordan_diagonalize(g).invariants;
    if (a.betas != b.betas) return false;
    // per Jordan block of constant valuation, compare the determinant class
    std::map<long, int> ca, cb;
    for (int i = 0; i < a.n(); ++i) {
        auto [it, inserted] = ca.try_emplace(a.betas[i], 1);
        it->second *= a.classes[i];
    }
    for (int i = 0; i < b.n(); ++i) {
        auto [it, inserted] = cb.try_emplace(b.betas[i], 1);
        it->second *= b.classes[i];
    }
    return ca == cb;
}

bool is_isotropic_ternary(const JordanInvariants& d, const PAdicContext& ctx) {
    if (d.n() != 3) throw std::invalid_argument("ternary form expected");
    const int chi_m1 = ctx.chi_minus_one();
    bool have = false, result = false;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j || ((d.betas[i] - d.betas[j]) % 2 != 0)) continue;
            const int k = 3 - i - j;
            const int chi_pair = chi_m1 * d.classes[i] * d.classes[j];
            const bool iso =
                chi_pair == 1 || ((d.betas[k] - d.betas[j]) % 2 + 2) % 2 == 0;
            if (have && iso != result)
                throw std::logic_error("isotropy criterion disagrees across admissible pairs");
            have = true;
            result = iso;
        }
    if (!have) throw std::logic_error("no admissible index pair");  // impossible for n = 3
    return result;
}

bool is_isotropic_ternary_hasse(const JordanInvariants& d, const PAdicContext& ctx) {
    if (d.n() != 3) throw std::invalid_argument("ternary form expected");
    // Diagonal entries up to squares: class +1 -> p^beta, class -1 -> delta p^beta.
    std::vector<Rat> entries;
    for (int i = 0; i < 3; ++i) {
        Rat e = Rat(ctx.pow_p(d.betas[i] >= 0 ? d.betas[i] : 0));
        if (d.betas[i] < 0) e = Rat(1) / Rat(ctx.pow_p(-d.betas[i]));
        if (d.classes[i] == -1) e *= Rat(ctx.delta);
        entries.push_back(e);
    }
    int hasse = 1;
    Rat dd = 1;
    for (int i = 0; i < 3; ++i) {
        dd *= entries[i];
        for (int j = i + 1; j < 3; ++j) hasse *= hilbert_symbol(entries[i], entries[j], ctx);
    }
    return hasse == hilbert_symbol(Rat(-1), -dd, ctx);
}

bool is_represented_by_vprime(const JordanInvariants& t, const PAdicContext& ctx) {
    if (t.n() != 3) throw std::invalid_argument("ternary form expected");
    if (t.betas[0] != 1) throw std::domain_error("out of theorem shape");
    const long b2 = t.betas[1], b3 = t.betas[2];
    auto sgn_pow = [](int s, long e) { return (e % 2 == 0) ? 1 : s; };
    int rhs = sgn_pow(-1, 1 + b2 + b3);
    rhs *= sgn_pow(ctx.chi_minus_one(), 1 + b2 + b3 + b2 + b3 + b2 * b3);
    rhs *= sgn_pow(t.classes[0], b2 + b3);
    rhs *= sgn_pow(t.classes[1], 1 + b3);
    rhs *= sgn_pow(t.classes[2], 1 + b2);
    return rhs == -1;
}

std::string symmetric_form_to_json(const SymmetricForm& f) {
    nlohmann::json j;
    j["p"] = f.ctx.p.convert_to<long long>();
    auto& rows = j["gram"];
    for (const auto& row : f.gram) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& x : row) r.push_back(x.str());
        rows.push_back(r);
    }
    return j.dump();
}

SymmetricForm symmetric_form_from_json(const std::string& text, int precision) {
    const nlohmann::json j = nlohmann::json::parse(text);
    const PAdicContext ctx = PAdicContext::make(Int(j.at("p").get<long long>()), precision);
    RatMat gram;
    for (const auto& row : j.at("gram")) {
        std::vector<Rat> r;
        for (const auto& x : row) r.emplace_back(x.get<std::string>());
        gram.push_back(std::move(r));
    }
    return SymmetricForm::make(std::move(gram), ctx);
}

std::string jordan_invariants_to_json(const JordanInvariants& d) {
    nlohmann::json j;
    j["betas"] = d.betas;
    j["classes"] = d.classes;
    return j.dump();
}

}  // namespace qcycle
