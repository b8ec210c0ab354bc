// qcycle: local intersection numbers of antispecial cycles, representation
// density polynomials, the triple-product identity check, the brute-force
// counting oracle, and superspecial point sets on the Bruhat-Tits tree.

#include "qcycle/counting.hpp"
#include "qcycle/cycles.hpp"
#include "qcycle/density.hpp"
#include "qcycle/quadform.hpp"
#include "qcycle/tree.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace qcycle;
using nlohmann::json;

namespace {

Rat parse_rat(const std::string& s) { return Rat(s); }

RatMat parse_rat_matrix(const std::string& text) {
    const json j = json::parse(text);
    RatMat m;
    for (const auto& row : j) {
        std::vector<Rat> r;
        for (const auto& e : row)
            r.push_back(e.is_string() ? parse_rat(e.get<std::string>())
                                      : Rat(Int(e.get<long long>())));
        m.push_back(std::move(r));
    }
    return m;
}

IntMat parse_int_matrix(const std::string& text) {
    const json j = json::parse(text);
    IntMat m;
    for (const auto& row : j) {
        std::vector<Int> r;
        for (const auto& e : row) {
            if (e.is_string())
                r.push_back(Int(e.get<std::string>()));
            else if (e.is_number_integer())
                r.push_back(Int(e.get<long long>()));
            else
                throw std::invalid_argument("matrix entries must be integers");
        }
        m.push_back(std::move(r));
    }
    return m;
}

std::vector<int> parse_classes(const std::string& text, size_t want) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    if (out.size() != want)
        throw std::invalid_argument("expected " + std::to_string(want) + " signs");
    for (int c : out)
        if (c != 1 && c != -1) throw std::invalid_argument("signs must be +1 or -1");
    return out;
}

json poly_json(const DensityPolynomial& p) {
    json a = json::array();
    for (const Rat& c : p.coeffs) a.push_back(c.str());
    return a;
}

json vertex_json(const VertexKey& v) {
    return json::array({v.a, v.c, v.b.str()});
}

Int default_budget() {
    if (const char* env = std::getenv("QCYCLE_BUDGET")) return Int(env);
    return Int("10000000000");
}

int run(int argc, char** argv) {
    CLI::App app{"antispecial cycle intersection numbers and local densities"};
    app.require_subcommand(1);

    // intersect
    auto* cmd_int = app.add_subcommand("intersect", "two-cycle intersection number");
    std::string int_p = "5", int_gram;
    std::vector<long> int_alpha;
    int chi_eta_eps1 = 1, chi_eta = 1;
    cmd_int->add_option("--p", int_p, "odd prime");
    cmd_int->add_option("--alpha", int_alpha, "alpha_1 alpha_2")->expected(2);
    cmd_int->add_option("--chi-eta-eps1", chi_eta_eps1, "class of eta_* eps_1 (+1/-1)");
    cmd_int->add_option("--gram", int_gram, "2x2 Gram matrix as JSON (alternative input)");
    cmd_int->add_option("--chi-eta", chi_eta, "class of eta_* (with --gram)");

    // hz
    auto* cmd_hz = app.add_subcommand("hz", "degenerate triple product");
    std::string hz_p = "5";
    std::vector<long> hz_beta{1, 1};
    std::string hz_chi = "1,1,1";
    bool hz_strict = false;
    cmd_hz->add_option("--p", hz_p, "odd prime");
    cmd_hz->add_option("--beta", hz_beta, "beta_2 beta_3")->expected(2);
    cmd_hz->add_option("--chi", hz_chi, "classes of eps_1,eps_2,eps_3");
    cmd_hz->add_flag("--strict-p3-intro", hz_strict, "p = 3 requires beta_2 >= 2");

    // density
    auto* cmd_den = app.add_subcommand("density", "density polynomials for a ternary form");
    std::string den_p = "3", den_t = "1,1,1";
    std::vector<long> den_beta{1, 1};
    cmd_den->add_option("--p", den_p, "odd prime");
    cmd_den->add_option("--beta", den_beta, "beta_2 beta_3")->expected(2);
    cmd_den->add_option("--T", den_t, "classes of eps_1,eps_2,eps_3");

    // verify-thmc
    auto* cmd_ver = app.add_subcommand("verify-thmc", "sweep the triple-product identity");
    std::string ver_primes = "3,5,7,11,13", ver_format = "table", ver_out;
    long ver_beta_max = 9;
    bool ver_strict = false;
    cmd_ver->add_option("--p-list", ver_primes, "comma-separated odd primes");
    cmd_ver->add_option("--beta-max", ver_beta_max, "sweep 1 <= beta_2 <= beta_3 <= max");
    cmd_ver->add_flag("--strict-p3-intro", ver_strict, "p = 3 requires beta_2 >= 2");
    cmd_ver->add_option("--format", ver_format)->check(CLI::IsMember({"table", "json"}));
    cmd_ver->add_option("--output", ver_out, "write the report to a file");

    // count
    auto* cmd_cnt = app.add_subcommand("count", "brute-force density oracle");
    std::string cnt_p = "3", cnt_s, cnt_t;
    int cnt_level = 1, cnt_threads = 0;
    std::string cnt_budget;
    bool cnt_generic = false;
    cmd_cnt->add_option("--p", cnt_p, "odd prime");
    cmd_cnt->add_option("--t", cnt_level, "precision exponent");
    cmd_cnt->add_option("--S", cnt_s, "m x m integral symmetric matrix (JSON)")->required();
    cmd_cnt->add_option("--T", cnt_t, "n x n integral symmetric matrix (JSON)")->required();
    cmd_cnt->add_option("--budget", cnt_budget, "primitive-op budget");
    cmd_cnt->add_option("--threads", cnt_threads, "worker threads (0 = auto)");
    cmd_cnt->add_flag("--generic", cnt_generic, "force the column-recursive path");

    // tree
    auto* cmd_tree = app.add_subcommand("tree", "superspecial points of a twisted endomorphism");
    std::string tree_p = "3", tree_s;
    long tree_radius = 3;
    bool tree_dot = false;
    cmd_tree->add_option("--p", tree_p, "odd prime");
    cmd_tree->add_option("--radius", tree_radius, "ball radius around the standard vertex");
    cmd_tree->add_option("--s", tree_s, "traceless 2x2 matrix (JSON)")->required();
    cmd_tree->add_flag("--dot", tree_dot, "emit graphviz instead of JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;  // help/version exit 0, bad usage exit 2
    }

    if (*cmd_int) {
        const Int p(int_p);
        AntispecialPair pair;
        if (!int_gram.empty()) {
            const PAdicContext ctx = PAdicContext::make(p);
            const SymmetricForm form = SymmetricForm::make(parse_rat_matrix(int_gram), ctx);
            pair = invariants_from_gram(form, chi_eta);
        } else {
            if (int_alpha.size() != 2)
                throw std::invalid_argument("need --alpha a1 a2 or --gram");
            pair.alpha1 = int_alpha[0];
            pair.alpha2 = int_alpha[1];
            pair.eps1_class = chi_eta_eps1;  // only the product class enters
            pair.eta_star_class = 1;
            pair.eps2_class = 1;
            pair.p = p;
        }
        const IntersectionResult r = intersection_number(pair);
        json out{{"p", p.str()},
                 {"alpha", {pair.alpha1, pair.alpha2}},
                 {"chi_eta_eps1", pair.eta_star_class * pair.eps1_class},
                 {"value", r.value.str()}};
        std::cout << out.dump() << "\n";
        return 0;
    }

    if (*cmd_hz) {
        const std::vector<int> cls = parse_classes(hz_chi, 3);
        HZTriple t;
        t.p = Int(hz_p);
        t.beta2 = hz_beta[0];
        t.beta3 = hz_beta[1];
        t.eps1_class = cls[0];
        t.eps2_class = cls[1];
        t.eps3_class = cls[2];
        t.strict_p3_intro = hz_strict;
        const IntersectionResult r = hz_triple_product(t);
        json out{{"p", hz_p},
                 {"beta", {t.beta2, t.beta3}},
                 {"chi", cls},
                 {"value", r.value.str()}};
        std::cout << out.dump() << "\n";
        return 0;
    }

    if (*cmd_den) {
        const std::vector<int> cls = parse_classes(den_t, 3);
        const PAdicContext ctx = PAdicContext::make(Int(den_p));
        const TernaryShape shape{den_beta[0], den_beta[1], cls[0], cls[1], cls[2]};
        const FTildeResult ft = f_tilde(shape, ctx);
        const DensityPolynomial f = katsurada_f(shape, ctx);
        json out{{"p", den_p},
                 {"beta", {shape.beta2, shape.beta3}},
                 {"chi", cls},
                 {"f_tilde", poly_json(ft.poly)},
                 {"gamma_tilde", poly_json(gamma_tilde(ctx))},
                 {"f", poly_json(f)},
                 {"A", poly_json(f.negate_variable())},
                 {"alpha_prime", alpha_prime(shape, ctx).str()},
                 {"representable", ft.representable}};
        std::cout << out.dump() << "\n";
        return 0;
    }

    if (*cmd_ver) {
        std::vector<Int> primes;
        std::stringstream ss(ver_primes);
        std::string tok;
        while (std::getline(ss, tok, ',')) primes.emplace_back(tok);
        const bool want_json = ver_format == "json";
        const SweepSummary s = thmc_sweep(primes, ver_beta_max, ver_strict, want_json);
        std::ostream* out = &std::cout;
        std::ofstream file;
        if (!ver_out.empty()) {
            file.open(ver_out);
            out = &file;
        }
        if (want_json) {
            json rows = json::array();
            for (const ThmCReport& r : s.reports)
                rows.push_back({{"p", r.p.str()},
                                {"beta", {r.shape.beta2, r.shape.beta3}},
                                {"chi", {r.shape.eps1_class, r.shape.eps2_class, r.shape.eps3_class}},
                                {"status", r.skipped ? "skip" : (r.passed ? "pass" : "fail")},
                                {"reason", r.skip_reason},
                                {"lhs", r.lhs.str()},
                                {"rhs", r.rhs.str()}});
            json top{{"checked", s.checked},
                     {"passed", s.passed},
                     {"skipped", s.skipped},
                     {"failed", s.failed},
                     {"rows", rows}};
            *out << top.dump() << "\n";
        } else {
            *out << "checked " << s.checked << "  passed " << s.passed << "  skipped "
                 << s.skipped << "  failed " << s.failed << "\n";
            for (const ThmCReport& r : s.reports)
                *out << "p=" << r.p << " beta=(" << r.shape.beta2 << "," << r.shape.beta3
                     << ") chi=(" << r.shape.eps1_class << "," << r.shape.eps2_class << ","
                     << r.shape.eps3_class << ") "
                     << (r.skipped ? "skip: " + r.skip_reason
                                   : (r.passed ? "pass" : "FAIL lhs=" + r.lhs.str() +
                                                              " rhs=" + r.rhs.str()))
                     << "\n";
        }
        return s.failed == 0 ? 0 : 1;
    }

    if (*cmd_cnt) {
        CountJob job;
        job.p = Int(cnt_p);
        job.t = cnt_level;
        job.s = parse_int_matrix(cnt_s);
        job.target = parse_int_matrix(cnt_t);
        job.budget = cnt_budget.empty() ? default_budget() : Int(cnt_budget);
        job.threads = cnt_threads;
        const auto start = std::chrono::steady_clock::now();
        const CountResult r = cnt_generic ? count_generic(job) : count(job);
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
        json out{{"raw", r.raw.str()},
                 {"normalized", r.normalized.str()},
                 {"t", r.t},
                 {"wall_ms", ms}};
        std::cout << out.dump() << "\n";
        return 0;
    }

    if (*cmd_tree) {
        const PAdicContext ctx = PAdicContext::make(Int(tree_p));
        const RatMat sm = parse_rat_matrix(tree_s);
        if (sm.size() != 2 || sm[0].size() != 2)
            throw std::invalid_argument("--s must be a 2x2 matrix");
        const SpecialEndo s = SpecialEndo::make(Mat2{sm[0][0], sm[0][1], sm[1][0], sm[1][1]});
        const Tree tree(ctx);
        const std::set<TreeEdge> cycle = tree.antispecial_superspecial_points(s, tree_radius);
        if (tree_dot) {
            std::cout << "graph tree {\n";
            for (const TreeEdge& e : tree.ball_edges(tree_radius)) {
                const bool on = cycle.count(e) > 0;
                std::cout << "  \"" << vertex_json(e.v0).dump() << "\" -- \""
                          << vertex_json(e.v1).dump() << "\""
                          << (on ? " [color=red penwidth=2]" : "") << ";\n";
            }
            std::cout << "}\n";
        } else {
            json edges = json::array();
            for (const TreeEdge& e : cycle)
                edges.push_back(json::array({vertex_json(e.v0), vertex_json(e.v1)}));
            json out{{"p", tree_p}, {"radius", tree_radius}, {"edges", edges}};
            std::cout << out.dump() << "\n";
        }
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
