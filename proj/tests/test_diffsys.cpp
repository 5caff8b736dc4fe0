#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "aodes/diffsys.hpp"
#include "aodes/series.hpp"
#include "support/test_util.hpp"

using namespace aodes;
using namespace aodes::testutil;

namespace {

std::vector<MP> running_system() {
    MP u0 = u(0, 3), u1 = u(1, 3), u2 = u(2, 3);
    MP F1 = u0 * u1 * u2 + u1 * u1 * u1 - u0 * u2 - u1 * u1;
    MP F2 = u0 * u1 - cst(1, 3) - u1 * u1 - u0 * u2;
    return {F1, F2};
}

// resultant-derived trivariate equation with a dimension-two zero set
MP dim2_equation() {
    // u2 + u2^2 u0^2 - u2 u1 + 4 u2 u1 u0 - u1^2 - 2 u2 u1^2 u0 - 4 u1^3 u0 + u1^4
    MP u0 = u(0, 3), u1 = u(1, 3), u2 = u(2, 3);
    return u2 + u2 * u2 * u0 * u0 - u2 * u1 + cst(4, 3) * u2 * u1 * u0 - u1 * u1 -
           cst(2, 3) * u2 * u1 * u1 * u0 - cst(4, 3) * u1 * u1 * u1 * u0 + u1.pow(4);
}

} // namespace

TEST_CASE("total_derivative spec examples") {
    MP u0 = u(0), u1 = u(1);
    CHECK(total_derivative(u0 * u1 - cst(1)) == u(1, 3) * u(1, 3) + u(0, 3) * u(2, 3));
    CHECK(total_derivative(cst(7)).is_zero_poly());
    CHECK(total_derivative(u1 - cst(1)) == u(2, 3));
}

TEST_CASE("ritt_split spec examples") {
    MP u0 = u(0), u1 = u(1);
    MP G1 = u0 * u1 - cst(1);
    auto r2 = ritt_split(G1, 2);
    CHECK(r2.separant == u0);
    CHECK(r2.remainder == u(1, 3) * u(1, 3));

    auto s2 = ritt_split(u1 - cst(1), 2);
    CHECK(s2.separant == cst(1));
    CHECK(s2.remainder.is_zero_poly());

    auto r3 = ritt_split(G1, 3);
    CHECK(r3.separant == u0);
    CHECK(r3.remainder == cst(3, 4) * u(1, 4) * u(2, 4));
}

TEST_CASE("ritt reconstruction property") {
    std::mt19937_64 rng(11);
    int done = 0;
    for (int it = 0; it < 60 && done < 30; ++it) {
        MP G1 = random_poly(rng, 2, 3, 4);
        if (G1.deg(1) < 1) continue;
        for (int j = 2; j <= 4; ++j) {
            auto rs = ritt_split(G1, j);
            MP d = G1;
            for (int i = 0; i < j - 1; ++i) d = total_derivative(d);
            MP rebuilt = rs.separant.resized(j + 1) * u(j, j + 1) + rs.remainder.resized(j + 1);
            CAPTURE(it);
            CHECK(rebuilt == d.resized(j + 1));
        }
        ++done;
    }
    CHECK(done >= 25);
}

TEST_CASE("compute_B spec examples") {
    MP u0 = u(0), u1 = u(1);
    auto B = compute_B(u0 * u1 - cst(1), 2);
    REQUIRE(B.size() == 1);
    CHECK(B[0].num == -(u1 * u1));
    CHECK(B[0].den == u0);

    auto B2 = compute_B(u1 - cst(1), 2);
    REQUIRE(B2.size() == 1);
    CHECK(B2[0].num.is_zero_poly());

    CHECK(compute_B(u0 * u1 - cst(1), 1).empty());
}

TEST_CASE("B denominators are separant powers") {
    std::mt19937_64 rng(21);
    int done = 0;
    for (int it = 0; it < 40 && done < 20; ++it) {
        MP G1 = random_poly(rng, 2, 2, 3);
        if (G1.deg(1) < 1) continue;
        MP sep = G1.derivative(1);
        if (sep.is_constant()) continue;
        auto B = compute_B(G1, 4);
        MP sep16 = sep.pow(16);
        for (const auto& b : B) {
            CAPTURE(it);
            // den | sep^16 (denominators are powers of the separant, up to units)
            CHECK(divides(b.den, sep16));
        }
        ++done;
    }
    CHECK(done >= 15);
}

TEST_CASE("strip_univariate_factors spec examples") {
    MP u0 = u(0), u1 = u(1);
    auto s1 = strip_univariate_factors(u0 * (u0 * u1 - cst(1)));
    CHECK(s1.stripped == u0 * u1 - cst(1));
    CHECK(s1.y_factors == u0);
    CHECK(s1.yprime_factors == cst(1));

    auto s2 = strip_univariate_factors(u0 * u1 - cst(1));
    CHECK(s2.stripped == u0 * u1 - cst(1));
    CHECK(s2.y_factors == cst(1));
    CHECK(s2.yprime_factors == cst(1));

    auto s3 = strip_univariate_factors((u1 - cst(1)) * (u0 - cst(2)));
    CHECK(s3.stripped == cst(1));
    CHECK(s3.y_factors == u0 - cst(2));
    CHECK(s3.yprime_factors == u1 - cst(1));
}

TEST_CASE("chain_reduced_equation on the paper chains") {
    MP u0 = u(0, 3), u1 = u(1, 3), u2 = u(2, 3);
    // S1 = {y y' - 1, y'^2 + y y''} -> gcd = y y' - 1
    TriangularSystem t1;
    t1.nvars = 3;
    t1.polys = {u0 * u1 - cst(1, 3), u1 * u1 + u0 * u2};
    DiffChain c1{RegularChain::wrap(t1), u(0) * u(1) - cst(1)};
    auto r1 = chain_reduced_equation(c1);
    CHECK(r1.h_chain == u(0) * u(1) - cst(1));
    REQUIRE(r1.intermediates.size() == 2);
    // G2(u0, u1, B2) = u1^2 + u0*(-u1^2/u0) vanishes identically, so H_2 = 0
    // and gcd(H_1, 0) = H_1
    CHECK(r1.intermediates[1].is_zero_poly());

    // S2 = {y' - 1, y y'' - y + 2}: G1 strips to a unit -> h = 1
    TriangularSystem t2;
    t2.nvars = 3;
    t2.polys = {u1 - cst(1, 3), u0 * u2 - u0 + cst(2, 3)};
    MP g1s = strip_univariate_factors(mp_squarefree_part(u(0) * cst(0) + u(1) - cst(1), 1)).stripped;
    DiffChain c2{RegularChain::wrap(t2), g1s};
    auto r2 = chain_reduced_equation(c2);
    CHECK(r2.h_chain == cst(1));

    // single equation chain
    TriangularSystem t3;
    t3.nvars = 2;
    t3.polys = {u(0) * u(1) - cst(1)};
    DiffChain c3{RegularChain::wrap(t3), u(0) * u(1) - cst(1)};
    CHECK(chain_reduced_equation(c3).h_chain == u(0) * u(1) - cst(1));
}

TEST_CASE("invert_system spec examples") {
    // {y' = y^2} -> {z' + 1}
    DiffSystem s1 = DiffSystem::make({u(1) - u(0) * u(0)}, 1);
    DiffSystem i1 = invert_system(s1);
    REQUIRE(i1.eqs.size() == 1);
    CHECK(i1.eqs[0] == u(1) + cst(1));

    // {y' = 1} -> {z' + z^2}
    DiffSystem s2 = DiffSystem::make({u(1) - cst(1)}, 1);
    DiffSystem i2 = invert_system(s2);
    CHECK(i2.eqs[0] == u(1) + u(0) * u(0));

    // involution up to units
    DiffSystem back = invert_system(i1);
    CHECK(normalize_primitive(back.eqs[0]) == normalize_primitive(u(1) - u(0) * u(0)));
}

TEST_CASE("invert_system preserves dimension one") {
    std::vector<DiffSystem> fixtures = {
        DiffSystem::make({u(1) - u(0) * u(0)}, 1),
        DiffSystem::make({u(0) * u(1) - cst(1)}, 1),
        DiffSystem::make({u(1, 3) + u(0, 3) * u(0, 3), u(2, 3) - cst(2, 3) * u(0, 3).pow(3)}, 2),
    };
    for (size_t i = 0; i < fixtures.size(); ++i) {
        CAPTURE(i);
        DiffSystem inv = invert_system(fixtures[i]);
        auto chains = triangularize(inv.eqs, inv.nvars());
        bool has_dim1 = false;
        for (auto& c : chains) {
            int d = chain_dimension(c, inv.nvars());
            CHECK(d <= 1);
            if (d == 1) has_dim1 = true;
        }
        CHECK(has_dim1);
    }
}

TEST_CASE("reduce_system golden: running system") {
    DiffSystem S = DiffSystem::make(running_system(), 2);
    ReducedEquation red = reduce_system(S);
    CHECK(red.H == u(0) * u(1) - cst(1));
    // per-chain contributions: one chain gives y y' - 1, one gives 1
    bool saw_main = false, saw_unit = false;
    for (const auto& pc : red.per_chain) {
        if (pc.h_chain == u(0) * u(1) - cst(1)) saw_main = true;
        if (pc.h_chain == cst(1)) saw_unit = true;
    }
    CHECK(saw_main);
    CHECK(saw_unit);
    // divisibility invariant
    for (const auto& pc : red.per_chain)
        if (!pc.h_chain.is_constant()) CHECK(divides(pc.h_chain, pc.g1_norm.resized(2)));
}

TEST_CASE("reduce_system: single equation is returned unchanged") {
    MP G1 = u(0) * u(1) - cst(1);
    DiffSystem S = DiffSystem::make({G1}, 1);
    CHECK(reduce_system(S).H == G1);
}

TEST_CASE("reduce_system: random single square-free stripped equations") {
    std::mt19937_64 rng(3141);
    int done = 0;
    for (int it = 0; it < 60 && done < 10; ++it) {
        MP G1 = random_poly(rng, 2, 3, 4);
        if (G1.is_zero_poly() || G1.is_constant()) continue;
        G1 = mp_squarefree_part(G1, 1);
        G1 = strip_univariate_factors(G1).stripped;
        G1 = normalize_primitive(G1);
        if (G1.is_constant() || G1.deg(1) < 1 || G1.deg(0) < 1) continue;
        CAPTURE(it);
        DiffSystem S = DiffSystem::make({G1}, 1);
        CHECK(reduce_system(S).H == G1);
        ++done;
    }
    CHECK(done >= 10);
}

TEST_CASE("solution transport: an independently built series of S solves H") {
    // y = sqrt(2x + 4) solves the running system; build its series by the
    // binomial theorem (independent of the solver) and check it against both
    // the original system and the reduced equation H = y y' - 1.
    DiffSystem S = DiffSystem::make(running_system(), 2);
    ReducedEquation red = reduce_system(S);
    // sqrt(4 + 2x) = 2 (1 + x/2)^(1/2) = 2 sum C(1/2, k) (x/2)^k
    PSeries<AlgNum> y;
    y.exact = false;
    y.order = Rat(7);
    Rat binom(1), half_pow(1);
    for (long k = 0; k <= 6; ++k) {
        Rat coeff = Rat(2) * binom * half_pow;
        if (!coeff.is_zero()) y.terms.emplace(Rat(k), alg_from_rat(coeff));
        binom *= Rat(1 - 2 * k, 2 * (k + 1));
        half_pow *= Rat(1, 2);
    }
    AlgNum one = alg_from_rat(Rat(1));
    auto inj = [&](const Rat& q) { return alg_from_rat(q); };
    for (const auto& F : S.eqs) {
        PSeries<AlgNum> res = substitute_diff_poly(F, y, inj, one);
        auto val = res.valuation();
        CHECK((!val || *val >= Rat(4)));
    }
    PSeries<AlgNum> resH = substitute_diff_poly(red.H.resized(3), y, inj, one);
    auto valH = resH.valuation();
    CHECK((!valH || *valH >= Rat(5)));
}

TEST_CASE("reduce_system: dimension-two rejection") {
    DiffSystem S = DiffSystem::make({dim2_equation()}, 2);
    try {
        reduce_system(S);
        FAIL("expected DimensionError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Dimension);
        CHECK(e.exit_code() == 2);
    }
}

TEST_CASE("reduce_system: trivial outcome and constant side channel") {
    // {y - 1} viewed as an order-1 system: only the constant y = 1
    DiffSystem S = DiffSystem::make({u(0) - cst(1)}, 1);
    ReducedEquation info = reduce_system_info(S);
    CHECK(info.trivial);
    REQUIRE(info.constant_solutions.size() == 1);
    CHECK(alg_rational_value(info.constant_solutions[0]) == Rat(1));
    CHECK_THROWS_AS(reduce_system(S), Error);
}

TEST_CASE("reduce_system: {y'-1, y''} keeps only linear content") {
    DiffSystem S = DiffSystem::make({u(1, 3) - cst(1, 3), u(2, 3)}, 2);
    ReducedEquation red = reduce_system_info(S);
    // G1 = y' - 1 strips to a unit; H collapses to 1 but chains survive
    CHECK(!red.trivial);
    CHECK(red.H == cst(1));
}
