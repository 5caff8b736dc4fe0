#include "aodes/factor.hpp"

#include <algorithm>
#include <random>

namespace aodes {
namespace {

// ---------------------------------------------------------------------------
// Arithmetic in (Z/m)[x]; polynomials as ascending Int vectors in [0, m).
// ---------------------------------------------------------------------------

using ZV = std::vector<Int>;

Int znorm(Int a, const Int& m) {
    a %= m;
    if (sgn(a) < 0) a += m;
    return a;
}

void zv_trim(ZV& a) {
    while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

int zv_deg(const ZV& a) { return static_cast<int>(a.size()) - 1; }

ZV zv_from(const UPoly<Rat>& f, const Int& m) {
    // assumes integer coefficients
    ZV r;
    r.reserve(f.c.size());
    for (const auto& q : f.c) {
        invariant(q.is_integer(), "zv_from on non-integer polynomial");
        r.push_back(znorm(q.num(), m));
    }
    zv_trim(r);
    return r;
}

ZV zv_sub(const ZV& a, const ZV& b, const Int& m) {
    ZV r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < r.size(); ++i) {
        Int x = i < a.size() ? a[i] : Int(0);
        Int y = i < b.size() ? b[i] : Int(0);
        r[i] = znorm(x - y, m);
    }
    zv_trim(r);
    return r;
}

ZV zv_mul(const ZV& a, const ZV& b, const Int& m) {
    if (a.empty() || b.empty()) return {};
    ZV r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    for (auto& x : r) x = znorm(x, m);
    zv_trim(r);
    return r;
}

ZV zv_scale(const ZV& a, const Int& s, const Int& m) {
    ZV r = a;
    for (auto& x : r) x = znorm(x * s, m);
    zv_trim(r);
    return r;
}

Int zv_inv_scalar(const Int& a, const Int& m) {
    Int r;
    int ok = mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    invariant(ok != 0, "non-invertible scalar in modular arithmetic");
    return r;
}

// remainder of a by monic-izable b (lc(b) invertible mod m)
ZV zv_rem(ZV a, const ZV& b, const Int& m) {
    invariant(!b.empty(), "modular division by zero");
    Int linv = zv_inv_scalar(b.back(), m);
    while (zv_deg(a) >= zv_deg(b)) {
        Int c = znorm(a.back() * linv, m);
        int k = zv_deg(a) - zv_deg(b);
        for (size_t i = 0; i < b.size(); ++i) {
            size_t idx = static_cast<size_t>(k) + i;
            a[idx] = znorm(a[idx] - c * b[i], m);
        }
        zv_trim(a);
        if (a.empty()) break;
    }
    return a;
}

ZV zv_divexact(ZV a, const ZV& b, const Int& m) {
    invariant(!b.empty(), "modular division by zero");
    Int linv = zv_inv_scalar(b.back(), m);
    ZV q(a.size(), Int(0));
    while (zv_deg(a) >= zv_deg(b) && !a.empty()) {
        Int c = znorm(a.back() * linv, m);
        int k = zv_deg(a) - zv_deg(b);
        q[static_cast<size_t>(k)] = c;
        for (size_t i = 0; i < b.size(); ++i) {
            size_t idx = static_cast<size_t>(k) + i;
            a[idx] = znorm(a[idx] - c * b[i], m);
        }
        zv_trim(a);
    }
    invariant(a.empty(), "zv_divexact with nonzero remainder");
    zv_trim(q);
    return q;
}

ZV zv_monic(const ZV& a, const Int& m) {
    if (a.empty()) return a;
    return zv_scale(a, zv_inv_scalar(a.back(), m), m);
}

ZV zv_gcd(ZV a, ZV b, const Int& p) {
    while (!b.empty()) {
        ZV r = zv_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return zv_monic(a, p);
}

ZV zv_derivative(const ZV& a, const Int& m) {
    ZV r;
    for (size_t i = 1; i < a.size(); ++i) r.push_back(znorm(a[i] * Int(static_cast<long>(i)), m));
    zv_trim(r);
    return r;
}

ZV zv_powmod(ZV base, Int e, const ZV& f, const Int& m) {
    ZV r = {Int(1)};
    base = zv_rem(std::move(base), f, m);
    while (sgn(e) > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = zv_rem(zv_mul(r, base, m), f, m);
        e >>= 1;
        if (sgn(e) > 0) base = zv_rem(zv_mul(base, base, m), f, m);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Cantor–Zassenhaus factorization of a monic squarefree polynomial mod p.
// ---------------------------------------------------------------------------

void equal_degree_split(const ZV& f, int d, const Int& p, std::mt19937_64& rng,
                        std::vector<ZV>& out) {
    if (zv_deg(f) == d) {
        out.push_back(f);
        return;
    }
    // x^(p^d) has p^d conjugates; random r, gcd(r^((p^d-1)/2) - 1, f) splits.
    Int pd;
    mpz_pow_ui(pd.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(d));
    Int e = (pd - 1) / 2;
    while (true) {
        ZV r(static_cast<size_t>(zv_deg(f)), Int(0));
        for (auto& x : r) {
            unsigned long raw = static_cast<unsigned long>(rng());
            x = znorm(Int(static_cast<long>(raw % 1000003ul)), p);
        }
        zv_trim(r);
        if (zv_deg(r) < 1) continue;
        ZV s = zv_powmod(r, e, f, p);
        s = zv_sub(s, {Int(1)}, p);
        if (s.empty()) continue;
        ZV g = zv_gcd(f, s, p);
        if (zv_deg(g) > 0 && zv_deg(g) < zv_deg(f)) {
            equal_degree_split(g, d, p, rng, out);
            equal_degree_split(zv_divexact(f, g, p), d, p, rng, out);
            return;
        }
    }
}

std::vector<ZV> factor_mod_p(ZV f, const Int& p) {
    std::vector<ZV> out;
    std::mt19937_64 rng(0x5eedf00dULL);
    // distinct-degree
    ZV x = {Int(0), Int(1)};
    ZV h = x;
    int d = 0;
    while (zv_deg(f) > 0) {
        ++d;
        if (2 * d > zv_deg(f)) {
            out.push_back(f);
            break;
        }
        h = zv_powmod(h, p, f, p);  // h = x^(p^d) mod f
        ZV g = zv_gcd(f, zv_sub(h, x, p), p);
        if (zv_deg(g) > 0) {
            equal_degree_split(g, d, p, rng, out);
            f = zv_divexact(f, g, p);
            h = zv_rem(h, f, p);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Multifactor linear Hensel lifting mod p -> mod p^K.
// ---------------------------------------------------------------------------

// F primitive in Z[x], F == lc * prod(monic g_i) mod p, p odd prime not
// dividing lc(F), F squarefree mod p. Returns monic factors mod p^K.
std::vector<ZV> hensel_lift(const UPoly<Rat>& F, std::vector<ZV> g, const Int& p, int K) {
    Int lc = F.lc().num();
    size_t r = g.size();
    // Bezout cofactors mod p: sum sigma_i * v_i == 1, v_i = prod_{j != i} g_j.
    std::vector<ZV> sigma(r);
    {
        ZV prod = {Int(1)};
        for (const auto& gi : g) prod = zv_mul(prod, gi, p);
        for (size_t i = 0; i < r; ++i) {
            ZV vi = zv_divexact(prod, g[i], p);
            // invert vi mod g[i]
            // extended euclid over Z/p
            ZV a = g[i], b = zv_rem(vi, g[i], p);
            ZV s0, s1 = {Int(1)};
            ZV t0 = {Int(1)}, t1;
            (void)t0; (void)t1;
            // iterative xgcd computing only the coefficient of b
            ZV u0, u1 = {Int(1)};
            u0.clear();
            ZV A = a, B = b;
            while (!B.empty()) {
                // q, rem of A by B
                ZV rem = A;
                Int linv = zv_inv_scalar(B.back(), p);
                ZV q(rem.size(), Int(0));
                while (zv_deg(rem) >= zv_deg(B) && !rem.empty()) {
                    Int c = znorm(rem.back() * linv, p);
                    int k = zv_deg(rem) - zv_deg(B);
                    q[static_cast<size_t>(k)] = c;
                    for (size_t j = 0; j < B.size(); ++j) {
                        size_t idx = static_cast<size_t>(k) + j;
                        rem[idx] = znorm(rem[idx] - c * B[j], p);
                    }
                    zv_trim(rem);
                }
                zv_trim(q);
                ZV u2 = zv_sub(u0, zv_mul(q, u1, p), p);
                A = std::move(B);
                B = std::move(rem);
                u0 = std::move(u1);
                u1 = std::move(u2);
            }
            invariant(zv_deg(A) == 0, "hensel cofactor gcd not constant");
            sigma[i] = zv_scale(u0, zv_inv_scalar(A.back(), p), p);
            (void)s0; (void)s1;
        }
    }

    Int m = p;  // current modulus p^k
    for (int k = 1; k < K; ++k) {
        Int next = m * p;
        // error e = (F - lc*prod g_i) / p^k  (mod p)
        ZV prod = {Int(1)};
        for (const auto& gi : g) prod = zv_mul(prod, gi, next);
        prod = zv_scale(prod, znorm(lc, next), next);
        ZV Fn = zv_from(F, next);
        ZV diff = zv_sub(Fn, prod, next);
        ZV e;
        e.reserve(diff.size());
        for (const auto& c : diff) {
            Int q = c / m;
            invariant(c % m == 0, "hensel error not divisible by modulus");
            e.push_back(znorm(q, p));
        }
        zv_trim(e);
        if (e.empty()) {
            m = next;
            continue;
        }
        Int lcinv = zv_inv_scalar(znorm(lc, p), p);
        e = zv_scale(e, lcinv, p);
        for (size_t i = 0; i < r; ++i) {
            ZV gi_p;  // g_i mod p
            gi_p.reserve(g[i].size());
            for (const auto& c : g[i]) gi_p.push_back(znorm(c, p));
            zv_trim(gi_p);
            ZV delta = zv_rem(zv_mul(sigma[i], e, p), gi_p, p);
            // g_i += p^k * delta  (mod p^(k+1))
            ZV add(delta.size(), Int(0));
            for (size_t j = 0; j < delta.size(); ++j) add[j] = delta[j] * m;
            ZV gnext;
            gnext.reserve(std::max(g[i].size(), add.size()));
            for (size_t j = 0; j < std::max(g[i].size(), add.size()); ++j) {
                Int x = j < g[i].size() ? g[i][j] : Int(0);
                Int y = j < add.size() ? add[j] : Int(0);
                gnext.push_back(znorm(x + y, next));
            }
            zv_trim(gnext);
            g[i] = std::move(gnext);
        }
        m = next;
    }
    return g;
}

UPoly<Rat> zv_to_upoly_symmetric(const ZV& a, const Int& m) {
    Int half = m / 2;
    UPoly<Rat> r;
    r.c.reserve(a.size());
    for (const auto& c : a) {
        Int x = c;
        if (x > half) x -= m;
        r.c.push_back(Rat(x));
    }
    r.trim();
    return r;
}

// ---------------------------------------------------------------------------
// Zassenhaus over Z for a primitive squarefree polynomial of degree >= 2.
// ---------------------------------------------------------------------------

std::vector<UPoly<Rat>> zassenhaus(const UPoly<Rat>& f, const FactorLimits& lim) {
    const int n = f.deg();
    static const long primes[] = {3,    5,    7,    11,   13,   17,   19,   23,  29,
                                  31,   37,   41,   43,   47,   53,   59,   61,  67,
                                  71,   73,   79,   83,   89,   97,   101,  103, 107,
                                  109,  113,  127,  131,  137,  139,  149,  151, 157,
                                  163,  167,  173,  179,  181,  191,  193,  197, 199,
                                  211,  223,  227,  229,  233,  239,  241,  251, 257,
                                  263,  269,  271,  277,  281,  283,  293,  307, 311};
    Int lcf = f.lc().num();
    ZV fp;
    Int p(0);
    for (long cand : primes) {
        Int pc(cand);
        if (lcf % pc == 0) continue;
        ZV g = zv_from(f, pc);
        if (zv_deg(g) != n) continue;
        ZV gp = zv_derivative(g, pc);
        if (gp.empty()) continue;
        ZV d = zv_gcd(g, gp, pc);
        if (zv_deg(d) == 0) {
            p = pc;
            fp = zv_monic(g, pc);
            break;
        }
    }
    invariant(sgn(p) > 0, "no good prime found for factorization");

    std::vector<ZV> modular = factor_mod_p(fp, p);
    if (modular.size() == 1) return {f};
    check(static_cast<int>(modular.size()) <= 30 &&
              (1 << std::min<size_t>(modular.size(), 30)) <= lim.max_subset_count * 4,
          ErrorKind::FactorizationLimit, "too many modular factors to recombine");

    // Landau–Mignotte style bound: coefficients of lc*h for any factor h
    // are below (n+1) * 2^n * maxabs(f) * |lc|.
    Int bound = max_abs_num(f);
    bound *= Int(n + 1);
    Int two_n;
    mpz_ui_pow_ui(two_n.get_mpz_t(), 2, static_cast<unsigned long>(n));
    bound *= two_n;
    Int lcabs = lcf;
    if (sgn(lcabs) < 0) lcabs = -lcabs;
    bound *= lcabs;
    int K = 1;
    Int pk = p;
    while (pk <= 2 * bound) {
        pk *= p;
        ++K;
    }
    std::vector<ZV> lifted = hensel_lift(f, modular, p, K);

    std::vector<UPoly<Rat>> out;
    std::vector<int> alive(lifted.size(), 1);
    UPoly<Rat> rest = f;
    int alive_count = static_cast<int>(lifted.size());
    for (int sz = 1; sz <= alive_count; ++sz) {
        // enumerate subsets of the alive indices of size sz
        std::vector<int> idx;
        for (size_t i = 0; i < lifted.size(); ++i)
            if (alive[i]) idx.push_back(static_cast<int>(i));
        int m = static_cast<int>(idx.size());
        if (sz > m) break;
        std::vector<int> comb(static_cast<size_t>(sz));
        for (int i = 0; i < sz; ++i) comb[static_cast<size_t>(i)] = i;
        bool restart = false;
        while (!restart) {
            // candidate from comb
            ZV prod = {znorm(rest.lc().num(), pk)};
            for (int i = 0; i < sz; ++i) prod = zv_mul(prod, lifted[static_cast<size_t>(idx[static_cast<size_t>(comb[static_cast<size_t>(i)])])], pk);
            UPoly<Rat> cand = zv_to_upoly_symmetric(prod, pk);
            auto [prim, scale] = z_primitive(cand);
            (void)scale;
            if (!prim.is_zero_poly() && prim.deg() >= 1) {
                auto [q, r] = divmod(rest, prim);
                if (r.is_zero_poly()) {
                    // integer-coefficient check for q is implicit; accept
                    out.push_back(prim);
                    for (int i = 0; i < sz; ++i) alive[static_cast<size_t>(idx[static_cast<size_t>(comb[static_cast<size_t>(i)])])] = 0;
                    rest = z_primitive(q).first;
                    alive_count -= sz;
                    restart = true;
                    --sz;  // retry same size with remaining factors
                    break;
                }
            }
            // next combination
            int i = sz - 1;
            while (i >= 0 && comb[static_cast<size_t>(i)] == m - sz + i) --i;
            if (i < 0) break;
            ++comb[static_cast<size_t>(i)];
            for (int j = i + 1; j < sz; ++j) comb[static_cast<size_t>(j)] = comb[static_cast<size_t>(j - 1)] + 1;
        }
        if (rest.deg() == 0) break;
    }
    if (rest.deg() >= 1) out.push_back(rest);
    return out;
}

} // namespace

std::vector<std::pair<UPoly<Rat>, int>> squarefree_decompose(const UPoly<Rat>& f) {
    std::vector<std::pair<UPoly<Rat>, int>> out;
    if (f.deg() <= 0) return out;
    UPoly<Rat> a = z_primitive(f).first;
    UPoly<Rat> d = a.derivative();
    UPoly<Rat> g = upoly_gcd(a, d);
    if (g.deg() == 0) {
        out.emplace_back(a, 1);
        return out;
    }
    UPoly<Rat> c = a / g;
    UPoly<Rat> w = d / g - c.derivative();
    int i = 1;
    while (c.deg() > 0) {
        UPoly<Rat> p = upoly_gcd(c, w);
        if (p.deg() > 0) out.emplace_back(z_primitive(p).first, i);
        c = c / p;
        w = w / p - c.derivative();
        ++i;
    }
    return out;
}

UFactorization factor_univariate(const UPoly<Rat>& f, const FactorLimits& lim) {
    invariant(!f.is_zero_poly(), "factorization of zero");
    check(f.deg() <= lim.max_total_degree, ErrorKind::FactorizationLimit,
          "univariate degree exceeds factorization limit");
    UFactorization out;
    auto [prim, scale] = z_primitive(f);
    out.unit = scale;
    if (prim.deg() <= 0) {
        out.unit = f.coeff(0);
        return out;
    }
    // x^k content
    size_t shift = 0;
    while (shift < prim.c.size() && prim.c[shift].is_zero()) ++shift;
    if (shift > 0) {
        UPoly<Rat> x = UPoly<Rat>::monomial(Rat(1), 1);
        out.factors.emplace_back(x, static_cast<int>(shift));
        prim.c.erase(prim.c.begin(), prim.c.begin() + static_cast<long>(shift));
    }
    for (auto& [piece, mult] : squarefree_decompose(prim)) {
        if (piece.deg() == 1) {
            out.factors.emplace_back(piece, mult);
        } else if (piece.deg() >= 2) {
            for (auto& irr : zassenhaus(piece, lim)) out.factors.emplace_back(irr, mult);
        }
    }
    // restore the exact unit: f / prod(factors^mult)
    UPoly<Rat> prod = UPoly<Rat>::constant(Rat(1));
    for (const auto& [g, m] : out.factors)
        for (int i = 0; i < m; ++i) prod = prod * g;
    invariant(prod.deg() == f.deg(), "factor degrees do not add up");
    out.unit = f.lc() / prod.lc();
    // order factors deterministically
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (a.first.deg() != b.first.deg()) return a.first.deg() < b.first.deg();
        for (int i = a.first.deg(); i >= 0; --i) {
            if (a.first.coeff(i) != b.first.coeff(i)) return a.first.coeff(i) < b.first.coeff(i);
        }
        return a.second < b.second;
    });
    return out;
}

namespace {

// ---------------------------------------------------------------------------
// Bivariate factorization: good evaluation point + univariate factorization +
// x-adic Hensel lifting of monic series factors + subset recombination.
// ---------------------------------------------------------------------------

// Truncated power-series-in-x polynomials in y: coefficient k of y^k is a
// UPoly<Rat> in x, all computations mod x^prec.
struct YP {
    std::vector<UPoly<Rat>> c;
    void trim() {
        while (!c.empty() && c.back().is_zero_poly()) c.pop_back();
    }
    int deg() const { return static_cast<int>(c.size()) - 1; }
};

UPoly<Rat> x_trunc(const UPoly<Rat>& a, int prec) {
    UPoly<Rat> r = a;
    if (static_cast<int>(r.c.size()) > prec) r.c.resize(static_cast<size_t>(prec));
    r.trim();
    return r;
}

YP yp_mul(const YP& a, const YP& b, int prec) {
    YP r;
    if (a.c.empty() || b.c.empty()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, UPoly<Rat>());
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = x_trunc(r.c[i + j] + a.c[i] * b.c[j], prec);
    r.trim();
    return r;
}

YP yp_sub(const YP& a, const YP& b) {
    YP r;
    r.c.assign(std::max(a.c.size(), b.c.size()), UPoly<Rat>());
    for (size_t i = 0; i < r.c.size(); ++i) {
        UPoly<Rat> x = i < a.c.size() ? a.c[i] : UPoly<Rat>();
        UPoly<Rat> y = i < b.c.size() ? b.c[i] : UPoly<Rat>();
        r.c[i] = x - y;
    }
    r.trim();
    return r;
}

YP yp_from_mp(const MP& f) {
    // vars: 0 = x, 1 = y
    YP r;
    auto cs = f.coeffs_in(1);
    r.c.reserve(cs.size());
    for (const auto& cy : cs) r.c.push_back(to_upoly(cy, 0));
    r.trim();
    return r;
}

MP yp_to_mp(const YP& f, int nvars) {
    MP r(nvars);
    for (size_t k = 0; k < f.c.size(); ++k) {
        MP cx = from_upoly(f.c[k], 0, nvars);
        MP yk = MP::var(1, nvars, Rat(1)).pow(static_cast<int>(k));
        r = r + cx * yk;
    }
    return r;
}

// Split an irreducible factor list of F (primitive squarefree bivariate,
// genuinely depending on x and y).
std::vector<MP> bivariate_split(const MP& F, const FactorLimits& lim) {
    const int n = F.nvars;
    const int dy = F.deg(1);
    const int dx = F.deg(0);
    MP lcy = F.lc_in(1);

    // good evaluation point
    Rat a;
    bool found = false;
    for (long trial = 0; trial <= 200 && !found; ++trial) {
        long v = (trial % 2 == 0) ? trial / 2 : -(trial + 1) / 2;
        Rat cand(v);
        if (lcy.eval_var(0, cand).constant_value().is_zero()) continue;
        MP spec = F.eval_var(0, cand);
        UPoly<Rat> u = to_upoly(spec, 1);
        if (u.deg() != dy) continue;
        if (upoly_gcd(u, u.derivative()).deg() > 0) continue;
        a = cand;
        found = true;
    }
    invariant(found, "no good evaluation point for bivariate factorization");

    // translate x -> x + a
    MP xpa = MP::var(0, n, Rat(1)) + MP::constant(a, n);
    MP Fx = F.subst_var(0, xpa);
    UPoly<Rat> u = to_upoly(Fx.eval_var(0, Rat(0)), 1);
    UFactorization uf = factor_univariate(u);
    if (uf.factors.size() == 1) return {F};
    check(static_cast<int>(uf.factors.size()) <= 16, ErrorKind::FactorizationLimit,
          "too many univariate factors in bivariate recombination");

    UPoly<Rat> cx = to_upoly(Fx.lc_in(1), 0);  // lc_y(Fx)(x)
    const int prec = dx + cx.deg() + 1;

    // initial monic factors at x = 0
    std::vector<YP> G;
    for (const auto& [g, m] : uf.factors) {
        invariant(m == 1, "squarefree bivariate with repeated specialized factor");
        UPoly<Rat> gm = monic(g);
        YP y;
        y.c.reserve(gm.c.size());
        for (const auto& q : gm.c) y.c.push_back(UPoly<Rat>::constant(q));
        y.trim();
        G.push_back(std::move(y));
    }
    const size_t r = G.size();

    // Bezout cofactors over Q[y]: sum sigma_i * prod_{j!=i} u_j == 1
    std::vector<UPoly<Rat>> sigma(r), u0(r);
    {
        for (size_t i = 0; i < r; ++i) u0[i] = monic(uf.factors[i].first);
        for (size_t i = 0; i < r; ++i) {
            UPoly<Rat> vi = UPoly<Rat>::constant(Rat(1));
            for (size_t j = 0; j < r; ++j)
                if (j != i) vi = vi * u0[j];
            auto [g, s, t] = upoly_xgcd(vi % u0[i], u0[i]);
            (void)t;
            invariant(g.deg() == 0 && !g.is_zero_poly(), "bivariate bezout gcd not constant");
            sigma[i] = s % u0[i];
        }
    }

    YP Fyp = yp_from_mp(Fx);
    YP cyp;
    cyp.c.push_back(UPoly<Rat>());  // placeholder
    // lift to precision x^prec
    for (int k = 1; k < prec; ++k) {
        // e(y) coefficient of x^k in F - c*prod(G)
        YP prod;
        prod.c.assign(1, x_trunc(cx, k + 1));
        for (const auto& gi : G) prod = yp_mul(prod, gi, k + 1);
        YP diff = yp_sub(Fyp, prod);
        UPoly<Rat> e;  // in y
        for (size_t j = 0; j < diff.c.size(); ++j) e.c.push_back(diff.c[j].coeff(k));
        e.trim();
        if (e.is_zero_poly()) continue;
        e = e.scaled(cx.coeff(0).inv());
        for (size_t i = 0; i < r; ++i) {
            UPoly<Rat> delta = (sigma[i] * e) % u0[i];
            if (delta.is_zero_poly()) continue;
            for (size_t j = 0; j < delta.c.size(); ++j) {
                if (delta.c[j].is_zero()) continue;
                if (G[i].c.size() <= j) G[i].c.resize(j + 1, UPoly<Rat>());
                G[i].c[j] = G[i].c[j] + UPoly<Rat>::monomial(delta.c[j], k);
            }
        }
    }

    // subset recombination
    std::vector<int> alive(r, 1);
    std::vector<MP> out;
    MP rest = Fx;
    int alive_count = static_cast<int>(r);
    long subsets_tried = 0;
    for (int sz = 1; sz <= alive_count; ++sz) {
        std::vector<int> idx;
        for (size_t i = 0; i < r; ++i)
            if (alive[i]) idx.push_back(static_cast<int>(i));
        int m = static_cast<int>(idx.size());
        if (sz > m) break;
        if (sz == m) break;  // remainder handled after loop
        std::vector<int> comb(static_cast<size_t>(sz));
        for (int i = 0; i < sz; ++i) comb[static_cast<size_t>(i)] = i;
        while (true) {
            check(++subsets_tried <= lim.max_subset_count, ErrorKind::FactorizationLimit,
                  "bivariate recombination subset limit exceeded");
            YP prod;
            prod.c.assign(1, x_trunc(to_upoly(rest.lc_in(1), 0), prec));
            for (int i = 0; i < sz; ++i)
                prod = yp_mul(prod, G[static_cast<size_t>(idx[static_cast<size_t>(comb[static_cast<size_t>(i)])])], prec);
            MP cand = normalize_primitive(yp_to_mp(prod, n));
            bool hit = false;
            if (!cand.is_constant()) {
                auto q = exact_div(rest, cand);
                if (q) {
                    out.push_back(cand);
                    rest = *q;
                    for (int i = 0; i < sz; ++i) alive[static_cast<size_t>(idx[static_cast<size_t>(comb[static_cast<size_t>(i)])])] = 0;
                    alive_count -= sz;
                    hit = true;
                }
            }
            if (hit) {
                --sz;  // retry same size
                break;
            }
            int i = sz - 1;
            while (i >= 0 && comb[static_cast<size_t>(i)] == m - sz + i) --i;
            if (i < 0) break;
            ++comb[static_cast<size_t>(i)];
            for (int j = i + 1; j < sz; ++j) comb[static_cast<size_t>(j)] = comb[static_cast<size_t>(j - 1)] + 1;
        }
    }
    if (!rest.is_constant()) out.push_back(normalize_primitive(rest));

    // translate back x -> x - a
    MP xma = MP::var(0, n, Rat(1)) - MP::constant(a, n);
    for (auto& g : out) g = normalize_primitive(g.subst_var(0, xma));
    return out;
}

} // namespace

Factorization factor_bivariate(const MP& f, const FactorLimits& lim) {
    invariant(!f.is_zero_poly(), "factorization of zero");
    check(f.total_deg() <= lim.max_total_degree, ErrorKind::FactorizationLimit,
          "bivariate degree exceeds factorization limit");
    invariant(f.lead_var() <= 1, "factor_bivariate input has variables beyond u0, u1");
    const int n = std::max(f.nvars, 2);
    Factorization out;
    out.unit = Rat(1);
    MP g = f.nvars == n ? f : f.resized(n);

    std::vector<std::pair<MP, int>> work;  // squarefree pieces with multiplicity
    // split off the u0-content (pure u0 polynomial)
    MP c0 = mp_content(g, 1);
    MP pp = mp_primitive_part(g, 1);
    if (!c0.is_constant()) {
        UFactorization cf = factor_univariate(to_upoly(c0, 0), lim);
        out.unit *= cf.unit;
        for (auto& [fac, m] : cf.factors) out.factors.emplace_back(from_upoly(fac, 0, n), m);
    } else {
        out.unit *= c0.constant_value();
    }
    if (pp.deg(1) >= 1 && pp.deg(0) == 0) {
        UFactorization uf = factor_univariate(to_upoly(pp, 1), lim);
        out.unit *= uf.unit;
        for (auto& [fac, m] : uf.factors) out.factors.emplace_back(from_upoly(fac, 1, n), m);
    } else if (pp.deg(1) >= 1) {
        // Yun-style squarefree decomposition w.r.t. u1 using multivariate gcd
        MP a = pp;
        MP d = a.derivative(1);
        MP gg = mp_gcd(a, d);
        if (gg.is_constant()) {
            work.emplace_back(a, 1);
        } else {
            auto c = exact_div(a, gg.resized(a.nvars));
            invariant(c.has_value(), "squarefree decomposition division failed");
            MP ci = *c;
            auto dq = exact_div(d, gg.resized(d.nvars));
            MP w = *dq - ci.derivative(1);
            int i = 1;
            while (!ci.is_constant()) {
                MP p = mp_gcd(ci, w);
                if (!p.is_constant()) work.emplace_back(p, i);
                auto cn = exact_div(ci, p.resized(ci.nvars));
                invariant(cn.has_value(), "squarefree step division failed");
                ci = *cn;
                auto wq = exact_div(w, p.resized(w.nvars));
                invariant(wq.has_value(), "squarefree step division failed");
                w = *wq - ci.derivative(1);
                ++i;
            }
        }
        for (auto& [piece, mult] : work) {
            MP q = normalize_primitive(piece);
            if (q.deg(0) == 0) {
                UFactorization uf = factor_univariate(to_upoly(q, 1), lim);
                for (auto& [fac, m] : uf.factors)
                    out.factors.emplace_back(from_upoly(fac, 1, n), m * mult);
                continue;
            }
            for (auto& irr : bivariate_split(q, lim)) out.factors.emplace_back(irr, mult);
        }
    }

    // deterministic order + exact unit
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (a.first.total_deg() != b.first.total_deg())
            return a.first.total_deg() < b.first.total_deg();
        return MP::lex_before(a.first, b.first);
    });
    MP prod = MP::constant(Rat(1), n);
    for (const auto& [fac, m] : out.factors) prod = prod * fac.pow(m);
    auto unit_check = exact_div(g, prod);
    invariant(unit_check.has_value() && unit_check->is_constant(),
              "factorization does not reconstruct the input");
    out.unit = unit_check->constant_value();
    return out;
}

bool is_irreducible_bivariate(const MP& f, const FactorLimits& lim) {
    Factorization fac = factor_bivariate(f, lim);
    return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

} // namespace aodes
