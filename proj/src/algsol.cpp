#include "aodes/algsol.hpp"

#include <algorithm>

#include "aodes/factor.hpp"

namespace aodes {
namespace {

MPA inject_mp2(const MP& f) {
    MPA r(2);
    for (const auto& [e, c] : f.t) {
        Exp e2 = e;
        e2.resize(2, 0);
        r.t.emplace(std::move(e2), alg_from_rat(c));
    }
    return r;
}

bool mpa_rational(const MPA& f) {
    for (const auto& [e, c] : f.t)
        if (!c.is_base()) return false;
    return true;
}

// Detach coefficients that are rational values from their ambient field so
// that equal polynomials from different branches compare equal.
MPA mpa_demote(const MPA& f) {
    MPA r(f.nvars);
    for (const auto& [e, c] : f.t)
        r.t.emplace(e, c.is_base() ? alg_from_rat(c.base_value()) : c);
    return r;
}

// Exact Gaussian elimination; returns one deterministic nullspace vector of
// the homogeneous system rows * g = 0, or nullopt if the nullspace is trivial.
std::optional<std::vector<AlgNum>> nullspace_vector(std::vector<std::vector<AlgNum>> m,
                                                    size_t cols) {
    size_t rows = m.size();
    std::vector<long> pivot_of_col(cols, -1);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && is_zero(m[sel][c])) ++sel;
        if (sel == rows) continue;
        std::swap(m[r], m[sel]);
        AlgNum piv = m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] = m[r][j] / piv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || is_zero(m[i][c])) continue;
            AlgNum f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
        }
        pivot_of_col[c] = static_cast<long>(r);
        ++r;
    }
    // first free column
    long free_col = -1;
    for (size_t c = 0; c < cols; ++c)
        if (pivot_of_col[c] < 0) { free_col = static_cast<long>(c); break; }
    if (free_col < 0) return std::nullopt;
    std::vector<AlgNum> v(cols, AlgNum{});
    v[static_cast<size_t>(free_col)] = alg_from_rat(Rat(1));
    for (size_t c = 0; c < cols; ++c) {
        long p = pivot_of_col[c];
        if (p < 0) continue;
        // row p: x_c + sum_{j>c} m[p][j] x_j = 0
        v[c] = -m[static_cast<size_t>(p)][static_cast<size_t>(free_col)];
    }
    return v;
}

// Depress the x-translation: choose t0 killing the subleading coefficient of
// the highest-x-degree Y-coefficient, then translate x -> x + t0.
MPA depress(const MPA& G, int dx) {
    if (dx < 1) return G;
    auto ycoeffs = G.coeffs_in(1);
    int jstar = -1, best = -1;
    for (size_t j = 0; j < ycoeffs.size(); ++j) {
        int d = ycoeffs[j].deg(0);
        if (d >= best) {  // ties: largest j
            best = d;
            jstar = static_cast<int>(j);
        }
    }
    invariant(best == dx && jstar >= 0, "depress: no coefficient of full x-degree");
    UPoly<AlgNum> a = to_upoly(ycoeffs[static_cast<size_t>(jstar)], 0);
    AlgNum A = a.coeff(dx);
    AlgNum B = a.coeff(dx - 1);
    AlgNum t0 = -(B / (A * inject_rat(A, Rat(dx))));
    AlgNum one = one_like(A);
    MPA xt = MPA::var(0, 2, one) + MPA::constant(t0, 2);
    return normalize_primitive(G.subst_var(0, xt));
}

struct Branch {
    NumberFieldPtr field;
    std::vector<AlgNum> taylor;  // y^(k)(0)/k!, k = 0..N
};

// Taylor branch of H_i through a generic rational y0; root_index selects the
// c-root deterministically.
std::optional<Branch> taylor_branch(const MP& Hi, const Rat& y0, int N, const Limits& lim,
                                    size_t root_index) {
    if (Hi.lc_in(1).eval_var(0, y0).constant_value().is_zero()) return std::nullopt;
    MP disc = mp_resultant(Hi, Hi.derivative(1), 1);
    if (!disc.is_zero_poly() && !disc.is_constant() &&
        disc.eval_var(0, y0).constant_value().is_zero())
        return std::nullopt;
    UPoly<Rat> hc = to_upoly(Hi.eval_var(0, y0), 1);
    if (hc.coeff(0).is_zero()) return std::nullopt;  // c = 0 root
    auto roots = univariate_roots(hc, lim);
    if (roots.size() <= root_index) return std::nullopt;
    AlgNum c = roots[root_index].value;
    Branch b;
    b.field = c.F ? std::static_pointer_cast<const NumberField>(c.F) : nullptr;
    AlgNum v0 = alg_from_rat(y0);
    if (b.field) v0 = AlgNum{b.field, v0.rep};
    std::vector<AlgNum> vals = {v0, c};
    auto eval_mp = [&](const MP& f) {
        AlgNum acc = zero_like(c);
        for (const auto& [e, q] : f.t) {
            AlgNum term = inject_rat(c, q);
            for (size_t vv = 0; vv < e.size(); ++vv)
                for (uint32_t i = 0; i < e[vv]; ++i) term = term * vals[vv];
            acc = acc + term;
        }
        return acc;
    };
    AlgNum sep = eval_mp(Hi.derivative(1).resized(2));
    if (is_zero(sep)) return std::nullopt;
    b.taylor = {v0, c};
    Rat factorial(1);
    for (int k = 2; k <= N; ++k) {
        RittSplit rs = ritt_split(Hi.resized(2), k);
        AlgNum rk = eval_mp(rs.remainder);
        AlgNum vk = -(rk / sep);
        vals.push_back(vk);
        factorial *= Rat(k);
        b.taylor.push_back(vk * inject_rat(c, factorial.inv()));
    }
    return b;
}

std::optional<MPA> reconstruct_from_branch(const Branch& b, int dx, int dY, int N) {
    // powers of the truncated series y(x)
    std::vector<std::vector<AlgNum>> ypow;  // ypow[j][e] = coeff of x^e in y^j
    AlgNum one = b.field ? one_like(AlgNum::generator(b.field)) : alg_from_rat(Rat(1));
    std::vector<AlgNum> unit(static_cast<size_t>(N) + 1, zero_like(one));
    unit[0] = one;
    ypow.push_back(unit);
    for (int j = 1; j <= dY; ++j) {
        std::vector<AlgNum> nxt(static_cast<size_t>(N) + 1, zero_like(one));
        for (int e1 = 0; e1 <= N; ++e1) {
            if (is_zero(ypow.back()[static_cast<size_t>(e1)])) continue;
            for (int e2 = 0; e2 + e1 <= N && e2 < static_cast<int>(b.taylor.size()); ++e2) {
                nxt[static_cast<size_t>(e1 + e2)] =
                    nxt[static_cast<size_t>(e1 + e2)] +
                    ypow.back()[static_cast<size_t>(e1)] * b.taylor[static_cast<size_t>(e2)];
            }
        }
        ypow.push_back(std::move(nxt));
    }
    // minimal annihilator: iterate over total size (dY' major ascending)
    for (int s = 2; s <= dx + dY; ++s) {
        for (int dyp = 1; dyp <= std::min(dY, s - 1); ++dyp) {
            int dxp = s - dyp;
            if (dxp < 1 || dxp > dx) continue;
            size_t cols = static_cast<size_t>((dxp + 1) * (dyp + 1));
            std::vector<std::vector<AlgNum>> m;
            for (int e = 0; e <= N; ++e) {
                std::vector<AlgNum> row;
                row.reserve(cols);
                for (int i = 0; i <= dxp; ++i)
                    for (int j = 0; j <= dyp; ++j) {
                        // coefficient of x^e in x^i y^j
                        AlgNum v = zero_like(one);
                        if (e - i >= 0 && e - i <= N) v = ypow[static_cast<size_t>(j)][static_cast<size_t>(e - i)];
                        row.push_back(v);
                    }
                m.push_back(std::move(row));
            }
            auto v = nullspace_vector(std::move(m), cols);
            if (!v) continue;
            MPA G(2);
            size_t idx = 0;
            for (int i = 0; i <= dxp; ++i)
                for (int j = 0; j <= dyp; ++j) {
                    if (!is_zero((*v)[idx])) {
                        Exp e2 = {static_cast<uint32_t>(i), static_cast<uint32_t>(j)};
                        G.t.emplace(std::move(e2), (*v)[idx]);
                    }
                    ++idx;
                }
            if (G.deg(1) < 1) continue;
            return normalize_primitive(G);
        }
    }
    return std::nullopt;
}

} // namespace

std::pair<int, int> degree_bounds(const MP& H) {
    invariant(!H.is_constant(), "degree_bounds of a constant");
    int dx = H.deg(1);
    int dY = H.deg(0) + H.deg(1);
    return {dx, dY};
}

bool verify_algebraic(const MPA& G, const MP& H) {
    invariant(G.deg(1) >= 1, "verify_algebraic needs deg_Y >= 1");
    int d = H.deg(1);
    MPA Gx = G.derivative(0);
    MPA Gy = G.derivative(1);
    MPA W(2);
    auto hcs = H.coeffs_in(1);  // coefficients h_j(u0)
    AlgNum one = alg_from_rat(Rat(1));
    if (!G.t.empty()) one = one_like(G.t.begin()->second);
    MPA Y = MPA::var(1, 2, one);
    for (int j = 0; j <= d; ++j) {
        if (static_cast<size_t>(j) >= hcs.size() || hcs[static_cast<size_t>(j)].is_zero_poly())
            continue;
        // h_j(Y)
        UPoly<Rat> hj = to_upoly(hcs[static_cast<size_t>(j)], 0);
        MPA hy(2);
        for (size_t k = hj.c.size(); k-- > 0;)
            hy = hy * Y + MPA::constant(inject_rat(one, hj.c[k]), 2);
        MPA term = hy;
        term = term * (-Gx).pow(j) * Gy.pow(d - j);
        W = W + term;
    }
    if (W.is_zero_poly()) return true;
    if (W.deg(1) < G.deg(1)) return W.is_zero_poly();
    return prem(W, G, 1).is_zero_poly();
}

bool verify_algebraic(const MP& G, const MP& H) { return verify_algebraic(inject_mp2(G), H); }

std::optional<AlgebraicSolutionFamily> alg_sol(const MP& Hi, const Limits& lim) {
    invariant(Hi.deg(1) >= 1, "alg_sol needs dependence on u1");
    auto [dx, dY] = degree_bounds(Hi);
    int N = (dx + 1) * (dY + 1) + lim.guard_terms;

    static const long y0_candidates[] = {2, 3, 5, 7, -2, -3, 1, -1, 4, -4, 11, 13};
    std::optional<MPA> canonical;
    int confirmations = 0;
    for (long cand : y0_candidates) {
        auto branch = taylor_branch(Hi, Rat(cand), N, lim, 0);
        if (!branch) continue;
        auto G0 = reconstruct_from_branch(*branch, dx, dY, N);
        if (!G0) {
            // a genuine algebraic solution family would produce an
            // annihilator from any admissible branch
            return std::nullopt;
        }
        MPA G = mp_squarefree_part(*G0, 1);
        if (!verify_algebraic(G, Hi)) return std::nullopt;
        MPA can = mpa_demote(depress(G, G.deg(0)));
        if (!canonical) {
            canonical = can;
            ++confirmations;
        } else if (*canonical == can) {
            ++confirmations;
        } else {
            fail(ErrorKind::Internal, "algebraic family differs between branches");
        }
        if (confirmations >= 2) break;  // cross-checked at a second point
    }
    if (!canonical) return std::nullopt;
    AlgebraicSolutionFamily fam;
    fam.G = *canonical;
    fam.rational = mpa_rational(fam.G);
    fam.deg_x = fam.G.deg(0);
    fam.deg_Y = fam.G.deg(1);
    fam.source_factor = Hi.resized(2);
    invariant(fam.deg_x <= dx && fam.deg_Y <= dY, "degree bounds violated by reconstruction");
    invariant(verify_algebraic(fam.G, Hi), "canonical family fails verification");
    return fam;
}

std::vector<AlgebraicSolutionFamily> alg_solution_system(const DiffSystem& S, const Limits& lim) {
    std::vector<AlgebraicSolutionFamily> out;
    ReducedEquation red = reduce_system_info(S, lim);
    if (!red.trivial && !red.H.is_constant()) {
        MP hstar = strip_univariate_factors(red.H).stripped;
        if (!hstar.is_constant()) {
            Factorization fac = factor_bivariate(hstar, lim.factor);
            for (const auto& [factor, mult] : fac.factors) {
                (void)mult;
                if (factor.deg(0) < 1 || factor.deg(1) < 1) continue;
                if (auto fam = alg_sol(factor, lim)) out.push_back(std::move(*fam));
            }
        }
    }
    // non-constant linear solutions as degree-(1, 1) families: Y - alpha x
    for (auto& ls : linear_solutions(S, lim)) {
        MPA G(2);
        AlgNum one = one_like(ls.alpha);
        G = MPA::var(1, 2, one) - MPA::constant(ls.alpha, 2) * MPA::var(0, 2, one);
        AlgebraicSolutionFamily fam;
        fam.G = normalize_primitive(G);
        fam.rational = mpa_rational(fam.G);
        fam.deg_x = 1;
        fam.deg_Y = 1;
        fam.source_factor = MP(2);
        bool dup = false;
        for (const auto& e : out)
            if (e.G == fam.G) dup = true;
        if (!dup) out.push_back(std::move(fam));
    }
    return out;
}

std::vector<RationalSolution> rational_solutions(const DiffSystem& S, const Limits& lim) {
    std::vector<RationalSolution> out;
    ReducedEquation red = reduce_system_info(S, lim);
    int bound = red.H.is_constant() ? 1 : red.H.deg(1);
    for (auto& fam : alg_solution_system(S, lim)) {
        if (fam.deg_Y != 1 || !fam.rational) continue;
        // G = g1(x) Y + g0(x), y = -g0/g1
        auto cs = fam.G.coeffs_in(1);
        UPoly<Rat> g0, g1;
        {
            MP a0(2), a1(2);
            for (const auto& [e, c] : cs[0].t) a0.add_term(e, alg_rational_value(c));
            for (const auto& [e, c] : cs[1].t) a1.add_term(e, alg_rational_value(c));
            g0 = to_upoly(a0, 0);
            g1 = to_upoly(a1, 0);
        }
        RationalSolution rs;
        UPoly<Rat> num = -g0, den = g1;
        UPoly<Rat> g = upoly_gcd(num, den);
        if (g.deg() > 0) {
            num = num / g;
            den = den / g;
        }
        Rat lead = den.lc();
        rs.num = num.scaled(lead.inv());
        rs.den = den.scaled(lead.inv());
        rs.degree = std::max(rs.num.deg(), rs.den.deg());
        invariant(rs.degree <= bound || red.H.is_constant(),
                  "rational solution degree exceeds the bound");
        out.push_back(std::move(rs));
    }
    return out;
}

} // namespace aodes
