#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "aodes/factor.hpp"
#include "aodes/parser.hpp"
#include "aodes/rootfind.hpp"
#include "aodes/printer.hpp"
#include "aodes/solveapi.hpp"
#include "support/test_util.hpp"

using namespace aodes;
using namespace aodes::testutil;

namespace {
const char* kRunningSystem =
    "y*y'*y'' + y'^3 - y*y'' - y'^2 = 0; y*y' - 1 - y'^2 - y*y'' = 0";
}

TEST_CASE("parse_system: the running system") {
    SourceSystem src = parse_system(kRunningSystem);
    CHECK(src.equation_count == 2);
    CHECK(src.max_derivative == 2);
    REQUIRE(src.parsed.eqs.size() == 2);
    MP u0 = u(0, 3), u1 = u(1, 3), u2 = u(2, 3);
    CHECK(src.parsed.eqs[0] == u0 * u1 * u2 + u1 * u1 * u1 - u0 * u2 - u1 * u1);
    CHECK(src.parsed.eqs[1] == u0 * u1 - cst(1, 3) - u1 * u1 - u0 * u2);
}

TEST_CASE("parse_system: simple forms") {
    SourceSystem s1 = parse_system("y' = 1");
    CHECK(s1.parsed.eqs[0] == u(1) - cst(1));
    // derivative via ^(k) notation and powers
    SourceSystem s2 = parse_system("y^(3) - y^2 = 0");
    CHECK(s2.parsed.order == 3);
    CHECK(s2.parsed.eqs[0] == u(3, 4) - u(0, 4) * u(0, 4));
    // rational literals
    SourceSystem s3 = parse_system("2/3*y' - 1/6 = 0");
    CHECK(s3.parsed.eqs[0] == cst(1).scaled(Rat(2, 3)) * u(1) - cst(1).scaled(Rat(1, 6)));
}

TEST_CASE("parse_system: errors") {
    SUBCASE("autonomy") {
        try {
            parse_system("x^2*y' - y + x = 0");
            FAIL("expected Autonomy");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Autonomy);
            CHECK(e.exit_code() == 3);
        }
    }
    SUBCASE("parse error carries position") {
        try {
            parse_system("y' + % = 0");
            FAIL("expected Parse");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Parse);
            CHECK(std::string(e.what()).find("line 1") != std::string::npos);
            CHECK(std::string(e.what()).find("column") != std::string::npos);
        }
    }
    SUBCASE("order limit") {
        try {
            parse_system("y^(99) = 0");
            FAIL("expected OrderLimit");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::OrderLimit);
            CHECK(e.exit_code() == 4);
        }
    }
    SUBCASE("identically zero equation") {
        CHECK_THROWS_AS(parse_system("y - y = 0"), Error);
    }
}

TEST_CASE("round trip: print then parse is the identity") {
    std::vector<std::string> corpus = {
        kRunningSystem,
        "y' = 1",
        "y'*y - 1 = 0",
        "y'^2 - 4*y = 0",
        "y' + y^2 = 0; y'' - 2*y^3 = 0",
        "y^(3) - 1/2*y''*y + 7 = 0",
        "1/3 - y^4 = y'",
    };
    for (const auto& text : corpus) {
        CAPTURE(text);
        SourceSystem a = parse_system(text);
        std::string printed = print_system(a.parsed);
        SourceSystem b = parse_system(printed);
        REQUIRE(a.parsed.eqs.size() == b.parsed.eqs.size());
        CHECK(a.parsed.order == b.parsed.order);
        for (size_t i = 0; i < a.parsed.eqs.size(); ++i) CHECK(a.parsed.eqs[i] == b.parsed.eqs[i]);
        // and printing again is a fixed point
        CHECK(print_system(b.parsed) == printed);
    }
}

TEST_CASE("parse_truncation") {
    PuiseuxTruncation t = parse_truncation("1 + x - 1/2*x^2 + 1/2*x^3");
    REQUIRE(t.terms.size() == 4);
    CHECK(t.terms[2].first == Rat(2));
    CHECK(coeff_equal(t.terms[2].second, Coeff(Rat(-1, 2))));
    CHECK(t.ramification == 1);

    PuiseuxTruncation r = parse_truncation("alg(t^2 - 2, [1, 2])*x^(1/2)");
    REQUIRE(r.terms.size() == 1);
    CHECK(r.terms[0].first == Rat(1, 2));
    const AlgNum* a = std::get_if<AlgNum>(&r.terms[0].second);
    REQUIRE(a);
    CHECK((*a) * (*a) == inject_rat(*a, Rat(2)));
    CHECK(r.ramification == 2);
}

TEST_CASE("run_reduce JSON") {
    CommandResult r = run_reduce(kRunningSystem);
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.json);
    CHECK(j["H"] == "y*y' - 1");
    CHECK(j["trivial"] == false);
    std::set<std::string> gcds;
    for (auto& pc : j["per_chain"]) gcds.insert(pc["h_chain"].get<std::string>());
    CHECK(gcds == std::set<std::string>({"y*y' - 1", "1"}));
}

TEST_CASE("run_solve JSON golden") {
    SolveOptions opts;
    opts.order = Rat(3);
    CommandResult r = run_solve(kRunningSystem, opts);
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.json);
    CHECK(j["H"] == "y*y' - 1");
    REQUIRE(j["families"].size() == 1);
    auto fam = j["families"][0];
    CHECK(fam["constraints"].size() == 1);
    CHECK(fam["constraints"][0] == "y0");
    auto terms = fam["truncation"]["terms"];
    REQUIRE(terms.size() == 4);
    CHECK(terms[0]["coeff"]["num"] == "y0");
    CHECK(terms[1]["coeff"]["num"] == "1");
    CHECK(terms[1]["coeff"]["den"] == "y0");
    CHECK(terms[2]["coeff"]["num"] == "-1/2");
    CHECK(terms[2]["coeff"]["den"] == "y0^3");
    CHECK(terms[3]["coeff"]["num"] == "1/2");
    CHECK(terms[3]["coeff"]["den"] == "y0^5");
    CHECK(j["critical"].size() == 2);
    for (auto& c : j["critical"]) {
        CHECK(c["exact"] == true);
        CHECK(c["unique_extension"] == true);
        CHECK(c["terms"][0]["exp"] == "1/2");
        CHECK(c["terms"][0]["coeff"]["minpoly"] == "t^2 - 2");
    }
    CHECK(j["infinity_branch_count"] == 0);
    CHECK(j["linear"].size() == 0);
}

TEST_CASE("run_solve_algebraic JSON golden") {
    CommandResult r = run_solve_algebraic(kRunningSystem, false);
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.json);
    REQUIRE(j["families"].size() == 1);
    CHECK(j["families"][0]["G"] == "Y^2 - 2*x");
    CHECK(j["families"][0]["deg_x"] == 1);
    CHECK(j["families"][0]["deg_Y"] == 2);
    CHECK(j["degree_bounds"][0] == 1);
    CHECK(j["degree_bounds"][1] == 2);
    CHECK(j["rational_solutions"].size() == 0);
}

TEST_CASE("run_verify") {
    CommandResult ok = run_verify(kRunningSystem, "1 + x - 1/2*x^2 + 1/2*x^3", Rat(3));
    CHECK(ok.exit_code == 0);
    auto j = nlohmann::json::parse(ok.json);
    CHECK(j["ok"] == true);

    CommandResult bad = run_verify("y' = 1", "1 + 2*x", Rat(1));
    CHECK(bad.exit_code == 1);
    auto jb = nlohmann::json::parse(bad.json);
    CHECK(jb["ok"] == false);
    CHECK(jb["residual_valuations"][0] == "0");

    // exact branch at high order
    CommandResult sq = run_verify(kRunningSystem, "alg(t^2-2, [1,2])*x^(1/2)", Rat(10));
    CHECK(sq.exit_code == 0);
    auto js = nlohmann::json::parse(sq.json);
    CHECK(js["ok"] == true);
    for (auto& v : js["residual_valuations"]) CHECK(v == "infinity");
}

TEST_CASE("exit codes are stable") {
    CHECK(run_reduce("x*y' = 1").exit_code == 3);
    CHECK(run_reduce("y'' + y''^2*y^2 - y''*y' + 4*y''*y'*y - y'^2 - 2*y''*y'^2*y - 4*y'^3*y + y'^4 = 0")
              .exit_code == 2);
    CHECK(run_reduce("y( = 1").exit_code == 3);
    CHECK(run_reduce("y^(99) = 1").exit_code == 4);
    CHECK(run_reduce(kRunningSystem).exit_code == 0);
}

TEST_CASE("resource limits surface as exit code 4") {
    SUBCASE("AODE_MAX_ORDER environment cap") {
        setenv("AODE_MAX_ORDER", "2", 1);
        CommandResult r = run_reduce("y^(3) - y = 0");
        CHECK(r.exit_code == 4);
        unsetenv("AODE_MAX_ORDER");
        // default allows it again (parse only; reduction itself may differ)
        Limits lim = Limits::from_env();
        CHECK(lim.max_order == 16);
        CHECK_NOTHROW(parse_system("y^(3) - y = 0"));
    }
    SUBCASE("extension degree limit") {
        // x^25 - 2 is irreducible (Eisenstein); a root needs degree 25 > 24
        UPoly<Rat> f = UPoly<Rat>::monomial(Rat(1), 25) - UPoly<Rat>::constant(Rat(2));
        try {
            univariate_roots(f);
            FAIL("expected ExtensionTowerLimit");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::ExtensionTowerLimit);
            CHECK(e.exit_code() == 4);
        }
    }
    SUBCASE("factorization degree limit") {
        MP big = u(0).pow(40) * u(1).pow(30) - cst(1);
        try {
            factor_bivariate(big);
            FAIL("expected FactorizationLimit");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::FactorizationLimit);
            CHECK(e.exit_code() == 4);
        }
    }
}

TEST_CASE("trivial reduction reports constants and exits 0") {
    CommandResult r = run_reduce("y - 1 = 0");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.json);
    CHECK(j["trivial"] == true);
    REQUIRE(j["constant_solutions"].size() == 1);
    CHECK(j["constant_solutions"][0]["value"] == "1");
}
