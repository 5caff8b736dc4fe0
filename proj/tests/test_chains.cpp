#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "aodes/chains.hpp"
#include "support/test_util.hpp"

using namespace aodes;
using namespace aodes::testutil;

namespace {

// Example 4.1-style system in (u0,u1,u2): { y y' y'' + y'^3 - y y'' - y'^2,
//                                           y y' - 1 - y'^2 - y y'' }
std::vector<MP> paper_system() {
    MP u0 = u(0, 3), u1 = u(1, 3), u2 = u(2, 3);
    MP F1 = u0 * u1 * u2 + u1 * u1 * u1 - u0 * u2 - u1 * u1;
    MP F2 = u0 * u1 - cst(1, 3) - u1 * u1 - u0 * u2;
    return {F1, F2};
}

} // namespace

TEST_CASE("leading_data spec examples") {
    MP u0 = u(0, 3), u1 = u(1, 3), u2 = u(2, 3);
    auto d1 = leading_data(u0 * u1 - cst(1, 3));
    CHECK(d1.lv == 1);
    CHECK(d1.lc == u0);
    CHECK(d1.init == u0);
    auto d2 = leading_data(u1 * u1 + u0 * u2);
    CHECK(d2.lv == 2);
    CHECK(d2.init == u0);
    auto d3 = leading_data(u0 * u0 * u0);
    CHECK(d3.lv == 0);
    CHECK(d3.init == cst(1, 3));
    CHECK_THROWS_AS(leading_data(cst(5, 3)), Error);
}

TEST_CASE("res_against_chain spec examples") {
    MP u0 = u(0), u1 = u(1);
    TriangularSystem T;
    T.nvars = 2;
    T.polys = {u0 * u1 - cst(1)};
    CHECK(res_against_chain(u0, T) == u0);
    CHECK(res_against_chain(cst(1), T) == cst(1));
    CHECK(res_against_chain(u0 * u1 - cst(1), T).is_zero_poly());
}

TEST_CASE("is_regular_chain spec examples") {
    MP u0 = u(0, 3), u1 = u(1, 3), u2 = u(2, 3);
    TriangularSystem good;
    good.nvars = 3;
    good.polys = {u0 * u1 - cst(1, 3), u1 * u1 + u0 * u2};
    CHECK(is_regular_chain(good));

    TriangularSystem bad;
    bad.nvars = 2;
    bad.polys = {u(0), u(0) * u(1) + cst(1)};
    CHECK(!is_regular_chain(bad));

    TriangularSystem single;
    single.nvars = 2;
    single.polys = {u(0) * u(1) - cst(1)};
    CHECK(is_regular_chain(single));
}

TEST_CASE("chain_dimension") {
    MP u0 = u(0, 3), u1 = u(1, 3), u2 = u(2, 3);
    TriangularSystem s1;
    s1.nvars = 3;
    s1.polys = {u0 * u1 - cst(1, 3), u1 * u1 + u0 * u2};
    CHECK(chain_dimension(RegularChain::wrap(s1), 3) == 1);

    TriangularSystem full;
    full.nvars = 3;
    full.polys = {u0 - cst(1, 3), u1 - cst(1, 3), u2 - cst(1, 3)};
    CHECK(chain_dimension(RegularChain::wrap(full), 3) == 0);

    // Single trivariate equation: dimension two
    TriangularSystem one;
    one.nvars = 3;
    one.polys = {u1 * u1 + u0 * u2};
    CHECK(chain_dimension(RegularChain::wrap(one), 3) == 2);
}

TEST_CASE("triangularize: simple inputs") {
    // {u0 - 1} stays a single chain
    auto c1 = triangularize({u(0) - cst(1)}, 2);
    REQUIRE(c1.size() == 1);
    CHECK(c1[0].base.polys.size() == 1);
    CHECK(c1[0].base.polys[0] == u(0) - cst(1));

    // inconsistent
    auto c2 = triangularize({u(0), u(0) - cst(1)}, 2);
    CHECK(c2.empty());
}

TEST_CASE("triangularize: 2x2 point system") {
    // {u0 u1 - 1, u1 - 1} -> solution set {u0 = 1, u1 = 1}
    auto chains = triangularize({u(0) * u(1) - cst(1), u(1) - cst(1)}, 2);
    REQUIRE(!chains.empty());
    std::vector<AlgPoint> all;
    for (auto& c : chains) {
        CHECK(is_regular_chain(c.base));
        for (auto& p : enumerate_chain_points(c)) all.push_back(p);
    }
    REQUIRE(all.size() == 1);
    CHECK(alg_rational_value(all[0].coords[0]) == Rat(1));
    CHECK(alg_rational_value(all[0].coords[1]) == Rat(1));
}

TEST_CASE("triangularize: the running order-2 system") {
    auto chains = triangularize(paper_system(), 3);
    REQUIRE(chains.size() >= 2);
    for (auto& c : chains) {
        CHECK(is_regular_chain(c.base));
        // membership: every input polynomial pseudo-reduces to zero
        for (const auto& F : paper_system())
            CHECK(prem_chain(F, c.base).is_zero_poly());
    }
    // at least one dimension-one chain whose first polynomial leads in u1
    bool found_main = false;
    for (auto& c : chains) {
        if (chain_dimension(c, 3) != 1) continue;
        if (c.base.polys.size() == 2 && c.base.polys[0].lead_var() == 1) found_main = true;
    }
    CHECK(found_main);
}

TEST_CASE("triangularize: membership property on random systems") {
    std::mt19937_64 rng(2024);
    int done = 0;
    for (int it = 0; it < 40 && done < 25; ++it) {
        std::vector<MP> sys;
        int nv = 2 + static_cast<int>(rng() % 2);
        sys.push_back(random_poly(rng, nv, 2, 3));
        sys.push_back(random_poly(rng, nv, 2, 3));
        bool skip = false;
        for (auto& f : sys)
            if (f.is_zero_poly() || f.is_constant()) skip = true;
        if (skip) continue;
        CAPTURE(it);
        auto chains = triangularize(sys, nv);
        for (auto& c : chains) {
            CHECK(is_regular_chain(c.base));
            for (const auto& F : sys) CHECK(prem_chain(F, c.base).is_zero_poly());
        }
        ++done;
    }
    CHECK(done >= 20);
}

TEST_CASE("triangularize: zero-dimensional solution sets match brute force") {
    std::mt19937_64 rng(7777);
    std::vector<std::vector<MP>> fixtures = {
        {u(0) * u(0) - cst(2), u(1) - u(0)},
        {u(0) * u(0) - cst(1), u(1) * u(1) - u(0)},
        {u(0) * u(1) - cst(1), u(0) + u(1) - cst(3)},
        {u(0) * u(0) * u(0) - u(0), u(1) - u(0) * u(0)},
    };
    // add a few random dim-0 ones: {p(u0), u1 - q(u0)}
    for (int it = 0; it < 6; ++it) {
        UPoly<Rat> p = random_upoly(rng, 3);
        UPoly<Rat> q = random_upoly(rng, 2);
        if (p.deg() < 1) continue;
        fixtures.push_back({from_upoly(p, 0, 2), u(1) - from_upoly(q, 0, 2)});
    }
    std::vector<Rat> lambda = {Rat(3), Rat(5)};
    for (size_t c = 0; c < fixtures.size(); ++c) {
        CAPTURE(c);
        auto& sys = fixtures[c];
        auto brute = brute_force_points(sys, 2);
        auto chains = triangularize(sys, 2);
        std::vector<AlgPoint> via_chains;
        bool skip = false;
        for (auto& ch : chains) {
            if (chain_dimension(ch, 2) != 0) { skip = true; break; }
            for (auto& p : enumerate_chain_points(ch)) via_chains.push_back(p);
        }
        if (skip) continue;
        UPoly<Rat> sig_a = point_set_signature(brute, lambda);
        UPoly<Rat> sig_b = point_set_signature(via_chains, lambda);
        CHECK(sig_a == sig_b);
        CHECK(brute.size() == via_chains.size());
        // every enumerated point satisfies the input system
        for (auto& p : via_chains) {
            for (auto& f : sys) {
                AlgNum v;
                for (const auto& [e, coef] : f.t) {
                    AlgNum term = inject_rat(p.coords[0], coef);
                    for (size_t vv = 0; vv < e.size(); ++vv)
                        for (uint32_t i = 0; i < e[vv]; ++i) term = term * p.coords[vv];
                    v = v + term;
                }
                CHECK(is_zero(v));
            }
        }
    }
}

TEST_CASE("chain_dimension invariant under reordering") {
    auto sys = paper_system();
    auto a = triangularize(sys, 3);
    std::swap(sys[0], sys[1]);
    auto b = triangularize(sys, 3);
    std::multiset<int> da, db;
    for (auto& c : a) da.insert(chain_dimension(c, 3));
    for (auto& c : b) db.insert(chain_dimension(c, 3));
    CHECK(da == db);
}
