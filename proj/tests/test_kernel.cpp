#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "aodes/factor.hpp"
#include "aodes/multipoly.hpp"
#include "aodes/rootfind.hpp"
#include "support/test_util.hpp"

using namespace aodes;
using namespace aodes::testutil;

TEST_CASE("rational basics") {
    Rat a(1, 3), b(2, 5);
    CHECK(a + b == Rat(11, 15));
    CHECK((a * b).str() == "2/15");
    CHECK(Rat(-4, 8) == Rat(-1, 2));
    CHECK(Rat::from_string("7/21") == Rat(1, 3));
    CHECK(Rat(2, 3).inv() == Rat(3, 2));
}

TEST_CASE("upoly arithmetic and gcd") {
    UPoly<Rat> f({Rat(-1), Rat(0), Rat(1)});  // x^2 - 1
    UPoly<Rat> g({Rat(1), Rat(1)});           // x + 1
    auto [q, r] = divmod(f, g);
    CHECK(r.is_zero_poly());
    CHECK(q == UPoly<Rat>({Rat(-1), Rat(1)}));
    CHECK(upoly_gcd(f, g) == monic(g));
    CHECK(f.eval(Rat(3)) == Rat(8));
    // resultant of x^2-1 and x+1 shares a root -> 0
    CHECK(upoly_resultant(f, g).is_zero());
    // Res(x^2+1, x-2) = 5
    UPoly<Rat> h({Rat(1), Rat(0), Rat(1)});
    UPoly<Rat> l({Rat(-2), Rat(1)});
    CHECK(upoly_resultant(h, l) == Rat(5));
    CHECK(f.shifted(Rat(1)) == UPoly<Rat>({Rat(0), Rat(2), Rat(1)}));  // (x+1)^2-1
}

TEST_CASE("multipoly basics") {
    MP u0 = u(0), u1 = u(1);
    MP f = u0 * u1 - cst(1);
    CHECK(f.lead_var() == 1);
    CHECK(f.deg(0) == 1);
    CHECK(f.total_deg() == 2);
    CHECK(f.lc_in(1) == u0);
    MP g = f * f;
    CHECK(g.deg(1) == 2);
    auto q = exact_div(g, f);
    REQUIRE(q.has_value());
    CHECK(*q == f);
    CHECK(!exact_div(f + cst(1), f).has_value());
}

TEST_CASE("poly_gcd spec examples") {
    MP u0 = u(0), u1 = u(1);
    MP f = u0 * u1 - cst(1);
    // gcd(u0 u1 - 1, u0 u1 - 1) = u0 u1 - 1
    CHECK(mp_gcd(f, f) == normalize_primitive(f));
    // gcd(f, 1) = 1
    CHECK(mp_gcd(f, cst(1)) == cst(1));
    // gcd((u0-1)(u1+2), (u0-1) u1) = u0 - 1
    MP a = (u0 - cst(1)) * (u1 + cst(2));
    MP b = (u0 - cst(1)) * u1;
    CHECK(mp_gcd(a, b) == u0 - cst(1));
    // gcd(0, 0) = 0
    CHECK(mp_gcd(MP(2), MP(2)).is_zero_poly());
}

TEST_CASE("gcd divisibility property") {
    std::mt19937_64 rng(42);
    int done = 0;
    for (int it = 0; it < 220; ++it) {
        MP f = random_poly(rng, 2, 2, 3);
        MP g = random_poly(rng, 2, 2, 3);
        MP h = random_poly(rng, 2, 2, 2);
        if (h.is_zero_poly() || h.is_constant()) continue;
        MP d = mp_gcd(f * h, g * h);
        CAPTURE(it);
        CHECK(divides(normalize_primitive(h), d));
        CHECK(divides(d, f * h));
        CHECK(divides(d, g * h));
        ++done;
    }
    CHECK(done >= 150);
}

TEST_CASE("resultant spec examples") {
    MP u0 = u(0), u1 = u(1);
    // Res_{u1}(u0 u1 - 1, u1 - 1) = u0 - 1
    MP r1 = mp_resultant(u0 * u1 - cst(1), u1 - cst(1), 1);
    CHECK(r1 == u0 - cst(1));
    // Res_{u1}(f, f) = 0
    MP f = u0 * u1 - cst(1);
    CHECK(mp_resultant(f, f, 1).is_zero_poly());
    // Res_{u1}(u0, u0 u1 - 1) = u0
    CHECK(mp_resultant(u0, f, 1) == u0);
}

TEST_CASE("resultant matches cofactor-expansion oracle") {
    std::mt19937_64 rng(7);
    int done = 0;
    for (int it = 0; it < 200; ++it) {
        MP f = random_poly(rng, 2, 3, 3);
        MP g = random_poly(rng, 2, 3, 3);
        if (f.is_zero_poly() || g.is_zero_poly()) continue;
        if (f.deg(1) + g.deg(1) > 5) continue;  // keep the oracle cheap
        MP a = mp_resultant(f, g, 1);
        MP b = sylvester_resultant_oracle(f, g, 1);
        CAPTURE(it);
        CHECK(a == b);
        ++done;
    }
    CHECK(done >= 100);
}

TEST_CASE("resultant zero iff gcd has positive degree in var") {
    std::mt19937_64 rng(99);
    int done = 0;
    for (int it = 0; it < 200; ++it) {
        MP f = random_poly(rng, 2, 2, 2);
        MP g = random_poly(rng, 2, 2, 2);
        if (f.deg(1) < 1 || g.deg(1) < 1) continue;
        bool share = it % 2 == 0;
        if (share) {
            MP h = random_poly(rng, 2, 1, 2);
            if (h.deg(1) < 1) h = h + u(1);
            f = f * h;
            g = g * h;
        }
        MP r = mp_resultant(f, g, 1);
        MP d = mp_gcd(f, g);
        CAPTURE(it);
        CHECK(r.is_zero_poly() == (d.deg(1) >= 1));
        ++done;
    }
    CHECK(done >= 120);
}

TEST_CASE("squarefree_part spec examples") {
    MP u0 = u(0), u1 = u(1);
    MP f = u0 * u1 - cst(1);
    CHECK(mp_squarefree_part(f * f, 1) == f);
    CHECK(mp_squarefree_part(f, 1) == f);
    CHECK(mp_squarefree_part(u0 * u0 * (u1 + cst(1)), 1) == u0 * (u1 + cst(1)));
}

TEST_CASE("squarefree radical properties") {
    std::mt19937_64 rng(5);
    int done = 0;
    for (int it = 0; it < 210; ++it) {
        MP f = random_poly(rng, 2, 3, 3);
        if (f.is_zero_poly() || f.is_constant()) continue;
        if (it % 3 == 0) f = f * f;  // force repeated factors sometimes
        int v = f.lead_var();
        MP s = mp_squarefree_part(f, v);
        CAPTURE(it);
        // s divides f and f divides a power of s (same irreducible support)
        CHECK(divides(s, f));
        CHECK(divides(f, s.pow(std::max(1, f.total_deg()))));
        // the v-primitive part of s has no repeated factor in v
        if (s.deg(v) >= 1) {
            MP sp = mp_primitive_part(s, v);
            CHECK(mp_gcd(sp, sp.derivative(v)).is_constant());
        }
        ++done;
    }
    CHECK(done >= 150);
}

TEST_CASE("factor_univariate basics") {
    // (x-1)(x+2)^2 * 6
    UPoly<Rat> f = UPoly<Rat>({Rat(-1), Rat(1)}) * UPoly<Rat>({Rat(2), Rat(1)}) *
                   UPoly<Rat>({Rat(2), Rat(1)}).scaled(Rat(6));
    auto fac = factor_univariate(f);
    UPoly<Rat> prod = UPoly<Rat>::constant(fac.unit);
    for (auto& [g, m] : fac.factors)
        for (int i = 0; i < m; ++i) prod = prod * g;
    CHECK(prod == f);
    CHECK(fac.factors.size() == 2);

    // x^2 - 2 irreducible
    auto fac2 = factor_univariate(UPoly<Rat>({Rat(-2), Rat(0), Rat(1)}));
    CHECK(fac2.factors.size() == 1);
    CHECK(fac2.factors[0].first.deg() == 2);

    // x^4 - 1 = (x-1)(x+1)(x^2+1)
    UPoly<Rat> x4({Rat(-1), Rat(0), Rat(0), Rat(0), Rat(1)});
    auto fac3 = factor_univariate(x4);
    CHECK(fac3.factors.size() == 3);
}

TEST_CASE("factor_univariate reconstructs random products") {
    std::mt19937_64 rng(1234);
    for (int it = 0; it < 60; ++it) {
        UPoly<Rat> f = random_upoly(rng, 3);
        UPoly<Rat> g = random_upoly(rng, 3);
        if (f.deg() < 1 || g.deg() < 1) continue;
        UPoly<Rat> p = f * g;
        auto fac = factor_univariate(p);
        UPoly<Rat> prod = UPoly<Rat>::constant(fac.unit);
        for (auto& [h, m] : fac.factors)
            for (int i = 0; i < m; ++i) prod = prod * h;
        CAPTURE(it);
        CHECK(prod == p);
    }
}

TEST_CASE("factor_bivariate spec examples") {
    MP u0 = u(0), u1 = u(1);
    // u0 u1 - 1 irreducible
    auto f1 = factor_bivariate(u0 * u1 - cst(1));
    CHECK(f1.factors.size() == 1);
    CHECK(f1.factors[0].second == 1);

    // u0^2 u1 - u1 = u1 (u0-1)(u0+1)
    auto f2 = factor_bivariate(u0 * u0 * u1 - u1);
    CHECK(f2.factors.size() == 3);

    // (u0 u1 - 1)(u1 - 1): two factors
    auto f3 = factor_bivariate((u0 * u1 - cst(1)) * (u1 - cst(1)));
    CHECK(f3.factors.size() == 2);
}

TEST_CASE("factor_bivariate reconstructs the input bit-exactly") {
    std::mt19937_64 rng(77);
    int done = 0;
    for (int it = 0; it < 60; ++it) {
        MP f = random_poly(rng, 2, 2, 3);
        MP g = random_poly(rng, 2, 2, 3);
        if (f.is_zero_poly() || g.is_zero_poly()) continue;
        MP p = f * g;
        if (p.is_constant() || p.total_deg() > 9) continue;
        auto fac = factor_bivariate(p);
        MP prod = MP::constant(fac.unit, p.nvars);
        for (auto& [h, m] : fac.factors) prod = prod * h.pow(m);
        CAPTURE(it);
        CHECK(prod == p);
        ++done;
    }
    CHECK(done >= 25);
}

TEST_CASE("univariate_roots spec examples") {
    // c^2 - 2 -> two conjugate real roots of t^2-2
    auto r1 = univariate_roots(UPoly<Rat>({Rat(-2), Rat(0), Rat(1)}));
    REQUIRE(r1.size() == 2);
    CHECK(!alg_is_rational(r1[0].value));
    CHECK(r1[0].value.F->minpoly == UPoly<Rat>({Rat(-2), Rat(0), Rat(1)}));
    // ordering: -sqrt2 < sqrt2
    CHECK(r1[0].value.F->selector.hi < r1[1].value.F->selector.lo);
    // arithmetic: alpha^2 == 2
    AlgNum a = r1[1].value;
    CHECK(a * a == inject_rat(a, Rat(2)));

    // c - 1 -> 1
    auto r2 = univariate_roots(UPoly<Rat>({Rat(-1), Rat(1)}));
    REQUIRE(r2.size() == 1);
    CHECK(alg_rational_value(r2[0].value) == Rat(1));

    // c^2 (c - 3) -> 0 (mult 2), 3
    UPoly<Rat> f({Rat(0), Rat(0), Rat(-3), Rat(1)});
    // c^3 - 3c^2 = c^2(c-3)
    auto r3 = univariate_roots(f);
    REQUIRE(r3.size() == 2);
    CHECK(alg_rational_value(r3[0].value) == Rat(0));
    CHECK(r3[0].multiplicity == 2);
    CHECK(alg_rational_value(r3[1].value) == Rat(3));
    CHECK(r3[1].multiplicity == 1);
}

TEST_CASE("real root isolation") {
    // (x^2-2)(x-1): roots -sqrt2, 1, sqrt2
    UPoly<Rat> f = UPoly<Rat>({Rat(-2), Rat(0), Rat(1)}) * UPoly<Rat>({Rat(-1), Rat(1)});
    auto iv = isolate_real_roots(f);
    REQUIRE(iv.size() == 3);
    CHECK(iv[0].second <= iv[1].first);
    CHECK(iv[1].second <= iv[2].first);
    CHECK(count_real_roots(UPoly<Rat>({Rat(1), Rat(0), Rat(1)})) == 0);
}

TEST_CASE("algebraic number arithmetic in extension") {
    auto roots = univariate_roots(UPoly<Rat>({Rat(-2), Rat(0), Rat(1)}));
    AlgNum s2 = roots[1].value;  // sqrt 2
    AlgNum x = (s2 + inject_rat(s2, Rat(1))) * (s2 - inject_rat(s2, Rat(1)));
    CHECK(x == inject_rat(s2, Rat(1)));  // (sqrt2+1)(sqrt2-1) = 1
    AlgNum y = inv(s2);                  // 1/sqrt2 = sqrt2/2
    CHECK(y * s2 == inject_rat(s2, Rat(1)));
    CHECK(y + y == s2);
}

TEST_CASE("factor over field (Trager)") {
    auto roots = univariate_roots(UPoly<Rat>({Rat(-2), Rat(0), Rat(1)}));
    AlgNum s2 = roots[1].value;
    auto F = std::static_pointer_cast<const NumberField>(s2.F);
    // t^2 - 2 factors over Q(sqrt2) as (t - sqrt2)(t + sqrt2)
    UPoly<AlgNum> f;
    f.c = {inject_rat(s2, Rat(-2)), zero_like(s2), one_like(s2)};
    f.trim();
    auto fac = factor_over_field(f, F);
    REQUIRE(fac.size() == 2);
    CHECK(fac[0].deg() == 1);
    CHECK(fac[1].deg() == 1);

    // roots over the field: +-sqrt2 inside Q(sqrt2)
    auto rr = univariate_roots_ext(f, F);
    REQUIRE(rr.size() == 2);
    for (auto& r : rr) {
        CHECK(!r.field_changed);
        CHECK(r.value * r.value == inject_rat(s2, Rat(2)));
    }
}

TEST_CASE("roots requiring a proper extension of an extension") {
    auto roots = univariate_roots(UPoly<Rat>({Rat(-2), Rat(0), Rat(1)}));
    AlgNum s2 = roots[1].value;
    auto F = std::static_pointer_cast<const NumberField>(s2.F);
    // t^2 - 3 over Q(sqrt2): irreducible; roots live in a degree-4 field
    UPoly<AlgNum> f;
    f.c = {inject_rat(s2, Rat(-3)), zero_like(s2), one_like(s2)};
    f.trim();
    auto rr = univariate_roots_ext(f, F);
    REQUIRE(rr.size() == 2);
    for (auto& r : rr) {
        REQUIRE(r.field_changed);
        CHECK(r.field->degree() == 4);
        // value^2 == 3 in the new field
        AlgNum three = inject_rat(r.value, Rat(3));
        CHECK(r.value * r.value == three);
        // the old generator embeds and still squares to 2
        AlgNum old_alpha{r.field, r.gen_image};
        CHECK(old_alpha * old_alpha == inject_rat(r.value, Rat(2)));
    }
}
