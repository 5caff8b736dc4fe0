// Acceptance suite: runs every criterion end to end and prints one PASS/FAIL
// line each. Criteria 1-4 drive the CLI binary (path given as argv[1]);
// the rest exercise the library directly.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "aodes/algsol.hpp"
#include "aodes/oracle.hpp"
#include "aodes/printer.hpp"
#include "aodes/puiseux.hpp"
#include "aodes/solveapi.hpp"

using namespace aodes;
using nlohmann::json;

namespace {

int g_failures = 0;
std::string g_cli;

#define ACC_CHECK(cond, msg)                                                   \
    do {                                                                       \
        if (!(cond)) {                                                         \
            std::cerr << "    [check failed] " << msg << " (" << __FILE__      \
                      << ":" << __LINE__ << ")\n";                             \
            ok = false;                                                        \
        }                                                                      \
    } while (0)

struct CliRun {
    int exit_code = -1;
    std::string output;
    double seconds = 0;
};

CliRun run_cli(const std::string& args, const std::string& stdin_text) {
    CliRun r;
    std::string tmp = "acceptance_input.txt";
    {
        FILE* f = std::fopen(tmp.c_str(), "w");
        std::fwrite(stdin_text.data(), 1, stdin_text.size(), f);
        std::fclose(f);
    }
    std::string cmd = g_cli + " " + args + " " + tmp + " 2>&1";
    auto start = std::chrono::steady_clock::now();
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    while (size_t n = std::fread(buf, 1, sizeof(buf), p)) r.output.append(buf, n);
    int status = pclose(p);
    auto end = std::chrono::steady_clock::now();
    r.seconds = std::chrono::duration<double>(end - start).count();
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::remove(tmp.c_str());
    return r;
}

void report(int n, const std::string& name, bool ok, double seconds) {
    std::printf("%s  criterion %d: %s (%.2f s)\n", ok ? "PASS" : "FAIL", n, name.c_str(), seconds);
    if (!ok) ++g_failures;
}

const char* kRunning =
    "y*y'*y'' + y'^3 - y*y'' - y'^2 = 0; y*y' - 1 - y'^2 - y*y'' = 0";
const char* kDim2 =
    "y'' + y''^2*y^2 - y''*y' + 4*y''*y'*y - y'^2 - 2*y''*y'^2*y - 4*y'^3*y + y'^4 = 0";

DiffSystem running_system() { return parse_system(kRunning).parsed; }

// ---------------------------------------------------------------------------

void criterion1() {
    bool ok = true;
    CliRun r = run_cli("--format json reduce", kRunning);
    ACC_CHECK(r.exit_code == 0, "reduce exited with " << "" << r.exit_code);
    double secs = r.seconds;
    try {
        json j = json::parse(r.output);
        ACC_CHECK(j["H"] == "y*y' - 1", "H != y*y' - 1: " << j["H"]);
        std::multiset<std::string> gcds;
        for (auto& pc : j["per_chain"]) gcds.insert(pc["h_chain"].get<std::string>());
        ACC_CHECK(gcds.count("y*y' - 1") == 1, "missing per-chain gcd y*y' - 1");
        ACC_CHECK(gcds.count("1") == 1, "missing per-chain gcd 1");
    } catch (const std::exception& e) {
        ACC_CHECK(false, "json parse: " << e.what());
    }
    ACC_CHECK(secs < 1.0, "runtime " << secs << " >= 1 s");
    report(1, "reduction golden (H = y*y' - 1, per-chain {y*y'-1} and {1}, < 1 s)", ok, secs);
}

void criterion2() {
    bool ok = true;
    CliRun r = run_cli("--format json solve --order 3", kRunning);
    ACC_CHECK(r.exit_code == 0, "solve exited with " << r.exit_code);
    try {
        json j = json::parse(r.output);
        auto fams = j["families"];
        ACC_CHECK(fams.size() == 1, "expected one family");
        auto terms = fams[0]["truncation"]["terms"];
        ACC_CHECK(terms.size() == 4, "family must show 4 terms at order 3");
        auto coeff_nd = [&](int i, const char* num, const char* den) {
            return terms[i]["coeff"]["num"] == num && terms[i]["coeff"]["den"] == den;
        };
        ACC_CHECK(terms[0]["exp"] == "0" && coeff_nd(0, "y0", "1"), "term 0 != y0");
        ACC_CHECK(terms[1]["exp"] == "1" && coeff_nd(1, "1", "y0"), "term 1 != x/y0");
        ACC_CHECK(terms[2]["exp"] == "2" && coeff_nd(2, "-1/2", "y0^3"), "term 2 != -x^2/(2 y0^3)");
        ACC_CHECK(terms[3]["exp"] == "3" && coeff_nd(3, "1/2", "y0^5"), "term 3 != x^3/(2 y0^5)");
        ACC_CHECK(fams[0]["constraints"].size() == 1 && fams[0]["constraints"][0] == "y0",
                  "constraint must be y0 != 0");
        auto crit = j["critical"];
        ACC_CHECK(crit.size() == 2, "expected the two ramified branches");
        int pos = 0, neg = 0;
        for (auto& c : crit) {
            ACC_CHECK(c["exact"] == true && c["unique_extension"] == true,
                      "sqrt branches must be exact and unique");
            ACC_CHECK(c["terms"].size() == 1 && c["terms"][0]["exp"] == "1/2",
                      "sqrt branch term");
            ACC_CHECK(c["terms"][0]["coeff"]["minpoly"] == "t^2 - 2", "minpoly t^2 - 2");
            std::string lo = c["terms"][0]["coeff"]["interval"][0].get<std::string>();
            if (!lo.empty() && lo[0] == '-') ++neg;
            else ++pos;
        }
        ACC_CHECK(pos == 1 && neg == 1, "need +sqrt2 and -sqrt2");
        ACC_CHECK(j["infinity_branch_count"] == 0, "y(0) = infinity branch set must be empty");
    } catch (const std::exception& e) {
        ACC_CHECK(false, "json parse: " << e.what());
    }
    ACC_CHECK(r.seconds < 5.0, "runtime " << r.seconds << " >= 5 s");
    report(2, "series golden (family, +-sqrt2 x^(1/2), empty infinity set, < 5 s)", ok, r.seconds);
}

void criterion3() {
    bool ok = true;
    CliRun r = run_cli("--format json solve-algebraic", kRunning);
    ACC_CHECK(r.exit_code == 0, "solve-algebraic exited with " << r.exit_code);
    try {
        json j = json::parse(r.output);
        ACC_CHECK(j["families"].size() == 1, "expected one family");
        auto f = j["families"][0];
        // G(x + c, Y) = Y^2 - 2x - 2c, i.e. Y^2 - 2x - k under k = 2c = y0^2
        ACC_CHECK(f["G"] == "Y^2 - 2*x", "G != Y^2 - 2*x: " << f["G"]);
        ACC_CHECK(f["deg_x"] == 1 && f["deg_Y"] == 2, "degree report != (1, 2)");
        ACC_CHECK(j["degree_bounds"][0] == 1 && j["degree_bounds"][1] == 2,
                  "bounds != (1, 2)");
    } catch (const std::exception& e) {
        ACC_CHECK(false, "json parse: " << e.what());
    }
    ACC_CHECK(r.seconds < 5.0, "runtime " << r.seconds << " >= 5 s");
    report(3, "algebraic-solution golden (Y^2 - 2x - k family, degrees (1,2), < 5 s)", ok,
           r.seconds);
}

void criterion4() {
    bool ok = true;
    CliRun r = run_cli("reduce", kDim2);
    ACC_CHECK(r.exit_code == 2, "expected exit code 2, got " << r.exit_code);
    ACC_CHECK(r.output.find("dimension") != std::string::npos, "message must mention dimension");
    ACC_CHECK(r.seconds < 1.0, "runtime " << r.seconds << " >= 1 s");
    report(4, "dimension rejection (resultant system exits with code 2, < 1 s)", ok, r.seconds);
}

void criterion5() {
    bool ok = true;
    auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(0xACCE55ULL);
    int done = 0;
    auto rand_poly = [&](int maxdeg, int terms) {
        MP p(2);
        std::uniform_int_distribution<int> de(0, maxdeg);
        std::uniform_int_distribution<long> dc(-9, 9);
        for (int t = 0; t < terms; ++t) {
            Exp e = {static_cast<uint32_t>(de(rng)), static_cast<uint32_t>(de(rng))};
            long c = dc(rng);
            p.add_term(std::move(e), Rat(c == 0 ? 1 : c));
        }
        return p;
    };
    while (done < 10) {
        MP g1 = rand_poly(3, 4);
        if (g1.is_zero_poly() || g1.is_constant()) continue;
        g1 = mp_squarefree_part(g1, 1);
        g1 = strip_univariate_factors(g1).stripped;
        g1 = normalize_primitive(g1);
        if (g1.is_constant() || g1.deg(1) < 1 || g1.deg(0) < 1) continue;
        DiffSystem S = DiffSystem::make({g1}, 1);
        ReducedEquation red = reduce_system(S);
        ACC_CHECK(red.H == g1, "reduce({G1}) != G1 for G1 = " << mp_str(g1, false));
        ++done;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(5, "single-equation identity on 10 random square-free stripped G1", ok, secs);
}

void criterion6() {
    bool ok = true;
    auto start = std::chrono::steady_clock::now();
    std::vector<std::string> corpus = {
        kRunning,
        "y*y' - 1 = 0",
        "y' - 1 = 0; y'' = 0",
        "y' + y^2 = 0; y'' - 2*y^3 = 0",
        "y'^2 - 4*y = 0",
        "y' - 1 = 0; y*y'' - y + 2 = 0",
    };
    std::mt19937_64 rng(777);
    for (const auto& text : corpus) {
        DiffSystem S = parse_system(text).parsed;
        SolutionSet sol = puiseux_solve_system(S, Rat(3));
        for (const auto& t : sol.critical) {
            auto rep = verify_truncation(S, t, Rat(3));
            ACC_CHECK(rep.ok, "critical branch fails verify on " << text << ": "
                                                                 << truncation_str(t));
        }
        for (const auto& f : sol.families) {
            auto rep = verify_truncation(S, f.truncation, Rat(3));
            ACC_CHECK(rep.ok, "family fails verify on " << text);
        }
        // algebraic families: verify_algebraic plus three random shifts
        for (auto& fam : alg_solution_system(S)) {
            if (fam.source_factor.is_zero_poly()) continue;  // linear-derived family
            ACC_CHECK(verify_algebraic(fam.G, fam.source_factor),
                      "family fails verify_algebraic on " << text);
            for (int k = 0; k < 3; ++k) {
                Rat c(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 4));
                AlgNum one = alg_from_rat(Rat(1));
                MPA xc = MPA::var(0, 2, one) + MPA::constant(alg_from_rat(c), 2);
                MPA shifted = fam.G.subst_var(0, xc);
                ACC_CHECK(verify_algebraic(shifted, fam.source_factor),
                          "shifted family fails verify_algebraic on " << text << " (c = "
                                                                      << c.str() << ")");
            }
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(6, "oracle property suite over the corpus (solve output + algebraic shifts)", ok, secs);
}

void criterion7() {
    bool ok = true;
    auto start = std::chrono::steady_clock::now();
    DiffSystem S = running_system();
    std::mt19937_64 rng(0x375CAFE);
    int done = 0;
    while (done < 20) {
        long xn = static_cast<long>(rng() % 13) - 6;
        long yn = static_cast<long>(rng() % 13) - 6;
        long yd = 1 + static_cast<long>(rng() % 4);
        if (yn == 0) continue;
        Rat x0(xn), y0(yn, yd);
        auto ts = solve_at_point(S, x0, y0, Rat(3));
        ACC_CHECK(!ts.empty(), "no solution through (" << x0.str() << ", " << y0.str() << ")");
        for (auto& t : ts) {
            Rat cval(0);
            for (auto& [e, c] : t.terms)
                if (e.is_zero())
                    if (const Rat* q = std::get_if<Rat>(&c)) cval = *q;
            ACC_CHECK(cval == y0, "value at x0 is " << cval.str() << " != " << y0.str());
            auto rep = verify_truncation(S, t, Rat(3));
            ACC_CHECK(rep.ok, "point solution fails verify at order 3");
        }
        ++done;
    }
    // y0 = 0 produces the ramified branch
    auto ts0 = solve_at_point(S, Rat(0), Rat(0), Rat(3));
    ACC_CHECK(ts0.size() == 2, "expected the two ramified branches at y0 = 0");
    for (auto& t : ts0) ACC_CHECK(t.ramification == 2, "branch at y0 = 0 must be ramified");
    // determinacy certificates: unique_extension is backed by the indicial root
    SolutionSet sol = puiseux_solve_system(S, Rat(3));
    for (auto& t : sol.critical)
        if (t.unique_extension && t.indicial_root)
            ACC_CHECK(*t.indicial_root <= t.truncation_order,
                      "unique flag with an indicial root beyond the order");
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(7, "constructive existence at 20 random points + ramified y0 = 0 + determinacy", ok,
           secs);
}

void criterion8() {
    bool ok = true;
    auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(31337);
    auto rand_poly = [&](int nvars, int maxdeg, int terms) {
        MP p(nvars);
        std::uniform_int_distribution<int> de(0, maxdeg);
        std::uniform_int_distribution<long> dc(-9, 9);
        for (int t = 0; t < terms; ++t) {
            Exp e(static_cast<size_t>(nvars), 0);
            for (int v = 0; v < nvars; ++v) e[static_cast<size_t>(v)] = static_cast<uint32_t>(de(rng));
            long c = dc(rng);
            p.add_term(std::move(e), Rat(c == 0 ? 1 : c));
        }
        return p;
    };

    // gcd divisibility, 200+
    for (int it = 0; it < 200; ++it) {
        MP f = rand_poly(2, 2, 3), g = rand_poly(2, 2, 3), h = rand_poly(2, 2, 2);
        if (h.is_zero_poly() || h.is_constant()) continue;
        MP d = mp_gcd(f * h, g * h);
        ACC_CHECK(divides(normalize_primitive(h), d), "gcd(fh, gh) not divisible by h, it=" << it);
    }
    // resultant zero <=> common factor, 200+
    for (int it = 0; it < 200; ++it) {
        MP f = rand_poly(2, 2, 2), g = rand_poly(2, 2, 2);
        if (f.deg(1) < 1 || g.deg(1) < 1) continue;
        if (it % 2 == 0) {
            MP h = rand_poly(2, 1, 2);
            if (h.deg(1) < 1) h = h + MP::var(1, 2, Rat(1));
            f = f * h;
            g = g * h;
        }
        ACC_CHECK(mp_resultant(f, g, 1).is_zero_poly() == (mp_gcd(f, g).deg(1) >= 1),
                  "resultant/gcd mismatch, it=" << it);
    }
    // squarefree radical, 200+
    for (int it = 0; it < 200; ++it) {
        MP f = rand_poly(2, 3, 3);
        if (f.is_zero_poly() || f.is_constant()) continue;
        if (it % 3 == 0) f = f * f;
        MP s = mp_squarefree_part(f, f.lead_var());
        ACC_CHECK(divides(s, f), "squarefree part does not divide f, it=" << it);
        int v = s.lead_var();
        if (v >= 0 && s.deg(v) >= 1) {
            MP sp = mp_primitive_part(s, v);
            ACC_CHECK(mp_gcd(sp, sp.derivative(v)).is_constant(),
                      "squarefree part not squarefree, it=" << it);
        }
    }
    // factorization reconstructs, 200 (univariate + bivariate halves)
    for (int it = 0; it < 100; ++it) {
        UPoly<Rat> f, g;
        std::uniform_int_distribution<long> dc(-9, 9);
        std::uniform_int_distribution<int> dd(1, 3);
        int df = dd(rng), dg = dd(rng);
        for (int i = 0; i <= df; ++i) f.c.push_back(Rat(dc(rng)));
        for (int i = 0; i <= dg; ++i) g.c.push_back(Rat(dc(rng)));
        f.trim();
        g.trim();
        if (f.deg() < 1 || g.deg() < 1) continue;
        UPoly<Rat> p = f * g;
        auto fac = factor_univariate(p);
        UPoly<Rat> prod = UPoly<Rat>::constant(fac.unit);
        for (auto& [q, m] : fac.factors)
            for (int i = 0; i < m; ++i) prod = prod * q;
        ACC_CHECK(prod == p, "univariate factorization does not reconstruct, it=" << it);
    }
    for (int it = 0; it < 100; ++it) {
        MP f = rand_poly(2, 2, 3), g = rand_poly(2, 2, 3);
        if (f.is_zero_poly() || g.is_zero_poly()) continue;
        MP p = f * g;
        if (p.is_constant() || p.total_deg() > 8) continue;
        auto fac = factor_bivariate(p);
        MP prod = MP::constant(fac.unit, p.nvars);
        for (auto& [q, m] : fac.factors) prod = prod * q.pow(m);
        ACC_CHECK(prod == p, "bivariate factorization does not reconstruct, it=" << it);
    }
    // regular-chain membership/regularity, 200 instances
    int chain_cases = 0;
    for (int it = 0; it < 400 && chain_cases < 200; ++it) {
        int nv = 2 + static_cast<int>(rng() % 2);
        std::vector<MP> sys = {rand_poly(nv, 2, 2), rand_poly(nv, 2, 2)};
        bool skip = false;
        for (auto& f : sys)
            if (f.is_zero_poly() || f.is_constant()) skip = true;
        if (skip) continue;
        auto chains = triangularize(sys, nv);
        for (auto& c : chains) {
            ACC_CHECK(is_regular_chain(c.base), "non-regular chain emitted, it=" << it);
            for (auto& F : sys)
                ACC_CHECK(prem_chain(F, c.base).is_zero_poly(),
                          "membership pseudo-remainder non-zero, it=" << it);
        }
        ++chain_cases;
    }
    ACC_CHECK(chain_cases >= 200, "not enough chain cases: " << chain_cases);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ACC_CHECK(secs < 60.0, "kernel property suites took " << secs << " >= 60 s");
    report(8, "kernel + regular-chain property suites (>= 200 cases each, < 60 s)", ok, secs);
}

} // namespace

int main(int argc, char** argv) {
    g_cli = argc > 1 ? argv[1] : "./tools/aode";
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (g_failures) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
