#include "aodes/diffsys.hpp"

#include <algorithm>

namespace aodes {

DiffSystem DiffSystem::make(std::vector<MP> eqs, int order) {
    check(order >= 1, ErrorKind::OrderLimit, "system order must be at least 1");
    check(!eqs.empty(), ErrorKind::Parse, "empty system");
    DiffSystem s;
    s.order = order;
    for (auto& e : eqs) {
        check(!e.is_zero_poly(), ErrorKind::Parse, "equation is identically zero");
        invariant(e.lead_var() <= order, "equation order exceeds system order");
        s.eqs.push_back(e.resized(order + 1));
    }
    return s;
}

MP total_derivative(const MP& F) {
    int n = F.nvars + 1;
    MP out(n);
    for (int i = 0; i < F.nvars; ++i) {
        MP d = F.derivative(i);
        if (d.is_zero_poly()) continue;
        out = out + d.resized(n) * MP::var(i + 1, n, Rat(1));
    }
    return out;
}

RittSplit ritt_split(const MP& G1, int j) {
    invariant(G1.deg(1) >= 1, "ritt_split needs a polynomial depending on u1");
    invariant(j >= 2, "ritt_split needs j >= 2");
    MP d = G1;
    for (int i = 0; i < j - 1; ++i) d = total_derivative(d);
    RittSplit rs;
    rs.separant = G1.derivative(1);
    MP sep_uj = rs.separant.resized(j + 1) * MP::var(j, j + 1, Rat(1));
    rs.remainder = d.resized(j + 1) - sep_uj;
    invariant(rs.remainder.deg(j) == 0 || rs.remainder.is_zero_poly(),
              "ritt remainder still involves the top derivative");
    return rs;
}

MPFrac substitute_fractions(const MP& F, const std::vector<std::optional<MPFrac>>& values) {
    int n = F.nvars;
    // common denominator: product of den_v^{deg_v F}
    std::vector<int> degs(static_cast<size_t>(n), 0);
    for (int v = 0; v < n; ++v)
        if (v < static_cast<int>(values.size()) && values[static_cast<size_t>(v)])
            degs[static_cast<size_t>(v)] = std::max(F.deg(v), 0);
    int out_n = n;
    for (const auto& val : values)
        if (val) out_n = std::max(out_n, std::max(val->num.nvars, val->den.nvars));
    MP num(out_n);
    for (const auto& [e, c] : F.t) {
        MP term = MP::constant(c, out_n);
        for (int v = 0; v < n; ++v) {
            uint32_t ev = static_cast<size_t>(v) < e.size() ? e[static_cast<size_t>(v)] : 0;
            bool subst = v < static_cast<int>(values.size()) && values[static_cast<size_t>(v)];
            if (!subst) {
                if (ev) term = term * MP::var(v, out_n, Rat(1)).pow(static_cast<int>(ev));
                continue;
            }
            const MPFrac& fr = *values[static_cast<size_t>(v)];
            term = term * fr.num.resized(out_n).pow(static_cast<int>(ev)) *
                   fr.den.resized(out_n).pow(degs[static_cast<size_t>(v)] - static_cast<int>(ev));
        }
        num = num + term;
    }
    MP den = MP::constant(Rat(1), out_n);
    for (int v = 0; v < n; ++v)
        if (degs[static_cast<size_t>(v)] > 0)
            den = den * values[static_cast<size_t>(v)]->den.resized(out_n).pow(degs[static_cast<size_t>(v)]);
    // reduce
    MP g = mp_gcd(num, den);
    if (!g.is_constant()) {
        auto qn = exact_div(num, g.resized(num.nvars));
        auto qd = exact_div(den, g.resized(den.nvars));
        invariant(qn && qd, "fraction reduction failed");
        num = *qn;
        den = *qd;
    }
    return {num, den};
}

std::vector<MPFrac> compute_B(const MP& G1, int m) {
    std::vector<MPFrac> B;
    if (m < 2) return B;
    invariant(G1.deg(1) >= 1, "compute_B needs a polynomial depending on u1");
    MP sep = G1.derivative(1);
    std::vector<std::optional<MPFrac>> values;  // indexed by variable
    values.resize(2);                           // u0, u1 kept
    for (int j = 2; j <= m; ++j) {
        RittSplit rs = ritt_split(G1, j);
        // A_j = -R_{j-1}/sep evaluated at u_i -> B_i for 2 <= i <= j-1
        MPFrac rsub = substitute_fractions(rs.remainder, values);
        MP num = -rsub.num;
        MP den = rsub.den * sep.resized(rsub.den.nvars);
        MP g = mp_gcd(num, den);
        if (!g.is_constant()) {
            num = *exact_div(num, g.resized(num.nvars));
            den = *exact_div(den, g.resized(den.nvars));
        }
        // normalize denominator sign for determinism
        if (!den.is_zero_poly() && den.t.rbegin()->second.sign() < 0) {
            den = -den;
            num = -num;
        }
        MPFrac Bj{num.resized(2), den.resized(2)};
        invariant(Bj.num.lead_var() <= 1 && Bj.den.lead_var() <= 1,
                  "B_j depends on derivatives beyond u1");
        B.push_back(Bj);
        values.push_back(MPFrac{Bj.num, Bj.den});
    }
    return B;
}

ChainReduction chain_reduced_equation(const DiffChain& c) {
    ChainReduction out;
    const MP& g1 = c.g1_normalized;
    int m = static_cast<int>(c.chain.base.polys.size());
    if (g1.is_constant()) {
        out.h_chain = MP::constant(Rat(1), 2);
        out.intermediates = {out.h_chain};
        return out;
    }
    if (m == 1) {
        out.h_chain = g1.resized(2);
        out.intermediates = {out.h_chain};
        return out;
    }
    std::vector<MPFrac> B = compute_B(g1.resized(2), m);
    std::vector<std::optional<MPFrac>> values;
    values.resize(2);
    for (const auto& b : B) values.push_back(b);
    out.intermediates.push_back(normalize_primitive(g1.resized(2)));
    MP h = out.intermediates[0];
    for (int j = 2; j <= m; ++j) {
        const MP& Gj = c.chain.base.polys[static_cast<size_t>(j - 1)];
        MPFrac sub = substitute_fractions(Gj, values);
        MP Hj = sub.num.resized(2);
        invariant(Hj.lead_var() <= 1, "H_j depends on derivatives beyond u1");
        Hj = Hj.is_zero_poly() ? Hj : normalize_primitive(Hj);
        out.intermediates.push_back(Hj);
        h = mp_gcd(h, Hj);
    }
    out.h_chain = normalize_primitive(h);
    return out;
}

DiffSystem invert_system(const DiffSystem& S) {
    int m = S.order;
    // derivative fractions of 1/z: f_0 = 1/v0, f_{i+1} = d f_i / dx
    std::vector<MPFrac> f;
    f.push_back({MP::constant(Rat(1), 1), MP::var(0, 1, Rat(1))});
    for (int i = 1; i <= m; ++i) {
        const MPFrac& prev = f.back();
        MP dn = total_derivative(prev.num);
        MP dd = total_derivative(prev.den);
        int n = std::max(dn.nvars, std::max(dd.nvars, prev.num.nvars));
        MP num = dn.resized(n) * prev.den.resized(n) - prev.num.resized(n) * dd.resized(n);
        MP den = prev.den.resized(n) * prev.den.resized(n);
        MP g = mp_gcd(num, den);
        if (!g.is_constant()) {
            num = *exact_div(num, g.resized(num.nvars));
            den = *exact_div(den, g.resized(den.nvars));
        }
        f.push_back({num, den});
    }
    std::vector<std::optional<MPFrac>> values;
    for (int i = 0; i <= m; ++i) values.push_back(f[static_cast<size_t>(i)]);
    std::vector<MP> out;
    for (const auto& G : S.eqs) {
        MPFrac sub = substitute_fractions(G, values);
        MP num = normalize_primitive(sub.num);
        // z-powers in the numerator correspond to the pole at infinity, not to
        // solutions of the transformed system; strip them
        MP z = MP::var(0, num.nvars, Rat(1));
        while (num.deg(0) > 0) {
            auto q = exact_div(num, z);
            if (!q) break;
            num = *q;
        }
        check(!num.is_constant(), ErrorKind::Internal,
              "inverted equation degenerates to a constant");
        out.push_back(num.resized(m + 1));
    }
    return DiffSystem::make(std::move(out), m);
}

StripResult strip_univariate_factors(const MP& f) {
    invariant(!f.is_zero_poly(), "strip of zero polynomial");
    int n = std::max(f.nvars, 2);
    MP g = f.resized(n);
    StripResult r;
    r.y_factors = MP::constant(Rat(1), n);
    r.yprime_factors = MP::constant(Rat(1), n);
    if (g.is_constant()) {
        r.stripped = normalize_primitive(g);
        return r;
    }
    // factors in Q[u0] alone = content w.r.t. u1
    MP c0 = mp_content(g, 1);
    if (!c0.is_constant()) {
        r.y_factors = normalize_primitive(c0);
        g = *exact_div(g, c0.resized(n));
    }
    MP c1 = mp_content(g, 0);
    if (!c1.is_constant()) {
        r.yprime_factors = normalize_primitive(c1);
        g = *exact_div(g, c1.resized(n));
    }
    r.stripped = normalize_primitive(g);
    return r;
}

ReducedEquation reduce_system_info(const DiffSystem& S, const Limits& lim) {
    ReducedEquation out;
    const int m = S.order;
    const int nvars = m + 1;

    // constant-solution side channel: roots of gcd_j F_j(u0, 0, ..., 0)
    {
        UPoly<Rat> g;
        bool all_zero = true;
        for (const auto& F : S.eqs) {
            MP spec = F;
            for (int v = 1; v < nvars; ++v) spec = spec.eval_var(v, Rat(0));
            UPoly<Rat> u0p = to_upoly(spec, 0);
            if (u0p.is_zero_poly()) continue;
            all_zero = false;
            g = g.is_zero_poly() ? u0p : upoly_gcd(g, u0p);
        }
        if (all_zero) {
            out.all_constants_solve = true;
        } else if (g.deg() >= 1) {
            for (auto& r : univariate_roots(g, lim)) out.constant_solutions.push_back(r.value);
        }
    }

    auto chains = triangularize(S.eqs, nvars, {}, lim);
    if (chains.empty()) {
        out.trivial = true;
        out.H = MP::constant(Rat(1), 2);
        return out;
    }
    for (const auto& c : chains) {
        int dim = chain_dimension(c, nvars);
        check(dim <= 1, ErrorKind::Dimension,
              "system has a component of dimension " + std::to_string(dim) +
                  "; the method requires dimension one");
    }
    MP H = MP::constant(Rat(1), 2);
    for (auto& c : chains) {
        int dim = chain_dimension(c, nvars);
        if (dim <= 0) {
            out.discarded_dim0.push_back(c);
            continue;
        }
        if (c.base.polys.empty() || c.base.polys[0].lead_var() == 0) {
            out.discarded_y_rooted.push_back(c);
            continue;
        }
        for (int j = 0; j < m; ++j)
            invariant(static_cast<size_t>(j) < c.base.polys.size() &&
                          c.base.polys[static_cast<size_t>(j)].lead_var() == j + 1,
                      "dimension-one chain without the expected u1..um leading pattern");
        MP g1 = c.base.polys[0];
        MP g1_sf = mp_squarefree_part(g1, 1);
        MP g1_norm = normalize_primitive(strip_univariate_factors(g1_sf).stripped);
        DiffChain dc{c, g1_norm};
        ChainReduction red = chain_reduced_equation(dc);
        // the reduced equation of the chain divides G1* exactly
        invariant(red.h_chain.is_constant() || divides(red.h_chain, g1_norm.resized(2)),
                  "chain reduced equation does not divide G1*");
        out.per_chain.push_back({c, g1_norm, red.h_chain, red.intermediates});
        H = mp_lcm(H, red.h_chain);
    }
    if (out.per_chain.empty()) {
        out.trivial = true;
        out.H = MP::constant(Rat(1), 2);
        return out;
    }
    out.H = normalize_primitive(H.resized(2));
    return out;
}

ReducedEquation reduce_system(const DiffSystem& S, const Limits& lim) {
    ReducedEquation out = reduce_system_info(S, lim);
    check(!out.trivial, ErrorKind::TrivialSystem,
          "all chains were discarded: the system has only constant solutions");
    return out;
}

} // namespace aodes
