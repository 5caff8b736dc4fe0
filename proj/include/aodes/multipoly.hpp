#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "aodes/extfield.hpp"
#include "aodes/rational.hpp"
#include "aodes/upoly.hpp"

namespace aodes {

/// Exponent vector; index i is the exponent of u_i.
using Exp = std::vector<uint32_t>;

/// Monomial order: lexicographic with u_0 < u_1 < ... < u_m, i.e. the
/// highest variable is compared first. This matches the variable ordering
/// the whole pipeline is built on.
struct ExpLess {
    bool operator()(const Exp& a, const Exp& b) const {
        size_t n = std::max(a.size(), b.size());
        for (size_t i = n; i-- > 0;) {
            uint32_t ea = i < a.size() ? a[i] : 0;
            uint32_t eb = i < b.size() ? b[i] : 0;
            if (ea != eb) return ea < eb;
        }
        return false;
    }
};

/// Sparse multivariate polynomial in u_0..u_{nvars-1} over a field K.
template <class K>
struct MultiPoly {
    int nvars = 0;
    std::map<Exp, K, ExpLess> t;  // no zero coefficients stored

    MultiPoly() = default;
    explicit MultiPoly(int n) : nvars(n) {}

    static MultiPoly constant(const K& a, int n) {
        MultiPoly p(n);
        if (!is_zero(a)) p.t.emplace(Exp(static_cast<size_t>(n), 0), a);
        return p;
    }
    static MultiPoly var(int i, int n, const K& one) {
        invariant(i >= 0 && i < n, "variable index out of range");
        MultiPoly p(n);
        Exp e(static_cast<size_t>(n), 0);
        e[static_cast<size_t>(i)] = 1;
        p.t.emplace(std::move(e), one);
        return p;
    }

    bool is_zero_poly() const { return t.empty(); }
    bool is_constant() const {
        if (t.empty()) return true;
        if (t.size() > 1) return false;
        for (uint32_t e : t.begin()->first)
            if (e) return false;
        return true;
    }
    K constant_value() const {
        if (t.empty()) return K{};
        invariant(is_constant(), "constant_value of non-constant polynomial");
        return t.begin()->second;
    }

    K sample() const {
        invariant(!t.empty(), "sample of zero polynomial");
        return t.begin()->second;
    }

    /// Highest variable actually occurring; -1 for constants.
    int lead_var() const {
        int lv = -1;
        for (const auto& [e, c] : t)
            for (size_t i = e.size(); i-- > 0;)
                if (e[i] && static_cast<int>(i) > lv) { lv = static_cast<int>(i); break; }
        return lv;
    }

    int deg(int var) const {
        int d = 0;
        for (const auto& [e, c] : t)
            if (static_cast<size_t>(var) < e.size())
                d = std::max(d, static_cast<int>(e[static_cast<size_t>(var)]));
        return t.empty() ? -1 : d;
    }

    int total_deg() const {
        int d = -1;
        for (const auto& [e, c] : t) {
            int s = 0;
            for (uint32_t x : e) s += static_cast<int>(x);
            d = std::max(d, s);
        }
        return d;
    }

    MultiPoly resized(int n) const {
        invariant(n >= nvars || lead_var() < n, "resize drops variables");
        MultiPoly r(n);
        for (const auto& [e, c] : t) {
            Exp e2(static_cast<size_t>(n), 0);
            for (size_t i = 0; i < e.size() && i < e2.size(); ++i) e2[i] = e[i];
            r.t.emplace(std::move(e2), c);
        }
        return r;
    }

    void add_term(Exp e, const K& c) {
        if (is_zero(c)) return;
        auto [it, fresh] = t.try_emplace(std::move(e), c);
        if (!fresh) {
            it->second = it->second + c;
            if (is_zero(it->second)) t.erase(it);
        }
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        int n = std::max(a.nvars, b.nvars);
        MultiPoly r = a.nvars == n ? a : a.resized(n);
        for (const auto& [e, c] : b.t) {
            Exp e2 = e;
            e2.resize(static_cast<size_t>(n), 0);
            r.add_term(std::move(e2), c);
        }
        return r;
    }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }
    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& [e, c] : r.t) c = -c;
        return r;
    }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        int n = std::max(a.nvars, b.nvars);
        MultiPoly r(n);
        for (const auto& [ea, ca] : a.t)
            for (const auto& [eb, cb] : b.t) {
                Exp e(static_cast<size_t>(n), 0);
                for (size_t i = 0; i < e.size(); ++i) {
                    uint32_t x = i < ea.size() ? ea[i] : 0;
                    uint32_t y = i < eb.size() ? eb[i] : 0;
                    e[i] = x + y;
                }
                r.add_term(std::move(e), ca * cb);
            }
        return r;
    }
    MultiPoly scaled(const K& a) const {
        MultiPoly r(nvars);
        if (is_zero(a)) return r;
        for (const auto& [e, c] : t) r.t.emplace(e, c * a);
        return r;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        if (a.t.size() != b.t.size()) return false;
        auto ia = a.t.begin();
        auto ib = b.t.begin();
        ExpLess less;
        for (; ia != a.t.end(); ++ia, ++ib) {
            if (less(ia->first, ib->first) || less(ib->first, ia->first)) return false;
            if (!(ia->second == ib->second)) return false;
        }
        return true;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    /// Strict total order for deterministic sorting of polynomial lists.
    static bool lex_before(const MultiPoly& a, const MultiPoly& b) {
        ExpLess less;
        auto ia = a.t.rbegin(), ib = b.t.rbegin();
        for (; ia != a.t.rend() && ib != b.t.rend(); ++ia, ++ib) {
            if (less(ia->first, ib->first)) return true;
            if (less(ib->first, ia->first)) return false;
        }
        return ib != b.t.rend();
    }

    MultiPoly derivative(int var) const {
        MultiPoly r(nvars);
        for (const auto& [e, c] : t) {
            size_t v = static_cast<size_t>(var);
            if (v >= e.size() || e[v] == 0) continue;
            Exp e2 = e;
            e2[v] -= 1;
            r.add_term(std::move(e2), c * inject_rat(c, Rat(static_cast<long>(e[v]))));
        }
        return r;
    }

    /// Coefficients as polynomials in the remaining variables, indexed by the
    /// exponent of `var` (ascending, length deg+1; empty for the zero poly).
    std::vector<MultiPoly> coeffs_in(int var) const {
        std::vector<MultiPoly> out;
        if (t.empty()) return out;
        out.assign(static_cast<size_t>(deg(var)) + 1, MultiPoly(nvars));
        for (const auto& [e, c] : t) {
            size_t v = static_cast<size_t>(var);
            uint32_t k = v < e.size() ? e[v] : 0;
            Exp e2 = e;
            if (v < e2.size()) e2[v] = 0;
            out[k].add_term(std::move(e2), c);
        }
        return out;
    }

    static MultiPoly from_coeffs_in(int var, const std::vector<MultiPoly>& cs, int n) {
        MultiPoly r(n);
        for (size_t k = 0; k < cs.size(); ++k)
            for (const auto& [e, c] : cs[k].t) {
                Exp e2 = e;
                e2.resize(static_cast<size_t>(n), 0);
                e2[static_cast<size_t>(var)] += static_cast<uint32_t>(k);
                r.add_term(std::move(e2), c);
            }
        return r;
    }

    /// Leading coefficient w.r.t. a variable (the "initial" when var is the
    /// leading variable).
    MultiPoly lc_in(int var) const {
        auto cs = coeffs_in(var);
        invariant(!cs.empty(), "lc of zero polynomial");
        return cs.back();
    }

    MultiPoly eval_var(int var, const K& val) const {
        auto cs = coeffs_in(var);
        if (cs.empty()) return MultiPoly(nvars);
        MultiPoly acc = cs.back();
        for (size_t i = cs.size(); i-- > 1;) acc = acc.scaled(val) + cs[i - 1];
        return acc;
    }

    MultiPoly subst_var(int var, const MultiPoly& g) const {
        auto cs = coeffs_in(var);
        if (cs.empty()) return MultiPoly(std::max(nvars, g.nvars));
        MultiPoly acc = cs.back();
        for (size_t i = cs.size(); i-- > 1;) acc = acc * g + cs[i - 1];
        return acc;
    }

    template <class K2, class Inj>
    MultiPoly<K2> map_coeffs(Inj inj) const {
        MultiPoly<K2> r(nvars);
        for (const auto& [e, c] : t) r.add_term(e, inj(c));
        return r;
    }

    MultiPoly pow(int k) const {
        invariant(k >= 0, "negative polynomial power");
        MultiPoly base = *this;
        MultiPoly r;
        bool started = false;
        while (k) {
            if (k & 1) {
                r = started ? r * base : base;
                started = true;
            }
            k >>= 1;
            if (k) base = base * base;
        }
        if (!started) {
            K one = t.empty() ? one_like(K{}) : one_like(t.begin()->second);
            return constant(one, nvars);
        }
        return r;
    }
};

using MP = MultiPoly<Rat>;
using MPA = MultiPoly<AlgNum>;

// ---- Division ----

/// Exact division; nullopt if g does not divide f.
template <class K>
std::optional<MultiPoly<K>> exact_div(const MultiPoly<K>& f, const MultiPoly<K>& g) {
    invariant(!g.is_zero_poly(), "division by zero polynomial");
    int n = std::max(f.nvars, g.nvars);
    MultiPoly<K> r = f.nvars == n ? f : f.resized(n);
    MultiPoly<K> gg = g.nvars == n ? g : g.resized(n);
    MultiPoly<K> q(n);
    const auto& glead = *gg.t.rbegin();
    while (!r.t.empty()) {
        const auto& rlead = *r.t.rbegin();
        Exp qe(static_cast<size_t>(n), 0);
        for (size_t i = 0; i < qe.size(); ++i) {
            uint32_t re = i < rlead.first.size() ? rlead.first[i] : 0;
            uint32_t ge = i < glead.first.size() ? glead.first[i] : 0;
            if (re < ge) return std::nullopt;
            qe[i] = re - ge;
        }
        K qc = rlead.second / glead.second;
        MultiPoly<K> term(n);
        term.t.emplace(qe, qc);
        q.add_term(std::move(qe), qc);
        r = r - term * gg;
    }
    return q;
}

template <class K>
bool divides(const MultiPoly<K>& g, const MultiPoly<K>& f) {
    if (f.is_zero_poly()) return true;
    if (g.is_zero_poly()) return false;
    return exact_div(f, g).has_value();
}

/// Pseudo-remainder of f by g w.r.t. var: init(g)^(d+1) f = q g + prem,
/// d = max(deg_var f - deg_var g, -1) + 1 convention with full power.
template <class K>
MultiPoly<K> prem(const MultiPoly<K>& f, const MultiPoly<K>& g, int var) {
    int dg = g.deg(var);
    invariant(dg >= 1 || (dg == 0 && !g.is_zero_poly()), "prem by polynomial without the variable");
    if (dg == 0) return MultiPoly<K>(std::max(f.nvars, g.nvars));  // g constant in var: remainder 0 convention
    int n = std::max(f.nvars, g.nvars);
    MultiPoly<K> r = f.nvars == n ? f : f.resized(n);
    MultiPoly<K> gg = g.nvars == n ? g : g.resized(n);
    MultiPoly<K> I = gg.lc_in(var);
    int e = r.deg(var) - dg + 1;
    if (e < 0) e = 0;
    while (!r.is_zero_poly() && r.deg(var) >= dg) {
        int dr = r.deg(var);
        MultiPoly<K> lr = r.lc_in(var);
        K one = one_like(lr.sample());
        MultiPoly<K> shift = MultiPoly<K>::var(var, n, one).pow(dr - dg);
        r = I * r - lr * shift * gg;
        --e;
    }
    for (int i = 0; i < e; ++i) r = I * r;
    return r;
}

// ---- Normalization ----

inline MP normalize_primitive(const MP& f) {
    if (f.is_zero_poly()) return f;
    Int num_gcd(0), den_lcm(1);
    for (const auto& [e, c] : f.t) {
        num_gcd = int_gcd(num_gcd, c.num());
        den_lcm = int_lcm(den_lcm, c.den());
    }
    Rat scale(den_lcm, num_gcd);
    if (f.t.rbegin()->second.sign() < 0) scale = -scale;
    return f.scaled(scale);
}

template <class K>
MultiPoly<K> normalize_primitive(const MultiPoly<K>& f) {
    if (f.is_zero_poly()) return f;
    return f.scaled(inv(f.t.rbegin()->second));  // monic in the leading monomial
}

// ---- GCD (subresultant PRS with content management) ----

template <class K>
MultiPoly<K> mp_content(const MultiPoly<K>& f, int var);

template <class K>
MultiPoly<K> mp_gcd(const MultiPoly<K>& f, const MultiPoly<K>& g) {
    if (f.is_zero_poly()) return normalize_primitive(g);
    if (g.is_zero_poly()) return normalize_primitive(f);
    int n = std::max(f.nvars, g.nvars);
    if (f.is_constant() || g.is_constant()) {
        K one = one_like(f.sample());
        return MultiPoly<K>::constant(one, n);
    }
    int v = std::max(f.lead_var(), g.lead_var());
    MultiPoly<K> cf = mp_content(f, v), cg = mp_content(g, v);
    auto fp = exact_div(f.nvars == n ? f : f.resized(n), cf.resized(n));
    auto gp = exact_div(g.nvars == n ? g : g.resized(n), cg.resized(n));
    invariant(fp && gp, "content division failed");
    MultiPoly<K> c = mp_gcd(cf, cg);

    MultiPoly<K> a = *fp, b = *gp;
    if (a.deg(v) < b.deg(v)) std::swap(a, b);
    if (b.deg(v) == 0) {
        // primitive and constant in v => unit
        return normalize_primitive(c.resized(n));
    }
    K one = one_like(a.sample());
    MultiPoly<K> gq = MultiPoly<K>::constant(one, n);
    MultiPoly<K> h = gq;
    while (true) {
        int delta = a.deg(v) - b.deg(v);
        MultiPoly<K> r = prem(a, b, v);
        if (r.is_zero_poly()) break;
        if (r.deg(v) == 0) {
            // gcd of primitive parts is trivial
            return normalize_primitive(c.resized(n));
        }
        MultiPoly<K> denom = gq * h.pow(delta);
        a = b;
        auto bb = exact_div(r, denom);
        invariant(bb.has_value(), "subresultant PRS exact division failed");
        b = *bb;
        gq = a.lc_in(v);
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = gq;
        } else {
            auto hh = exact_div(gq.pow(delta), h.pow(delta - 1));
            invariant(hh.has_value(), "subresultant PRS h-sequence division failed");
            h = *hh;
        }
    }
    MultiPoly<K> pp_gcd = b;
    MultiPoly<K> cb = mp_content(pp_gcd, v);
    auto red = exact_div(pp_gcd, cb.resized(pp_gcd.nvars));
    invariant(red.has_value(), "primitive part division failed");
    return normalize_primitive(c.resized(n) * (*red));
}

template <class K>
MultiPoly<K> mp_content(const MultiPoly<K>& f, int var) {
    auto cs = f.coeffs_in(var);
    MultiPoly<K> c(f.nvars);
    for (const auto& x : cs) {
        if (x.is_zero_poly()) continue;
        c = mp_gcd(c, x);
        if (c.is_constant()) break;
    }
    return c;
}

template <class K>
MultiPoly<K> mp_primitive_part(const MultiPoly<K>& f, int var) {
    if (f.is_zero_poly()) return f;
    MultiPoly<K> c = mp_content(f, var);
    auto p = exact_div(f, c.resized(f.nvars));
    invariant(p.has_value(), "primitive part division failed");
    return *p;
}

template <class K>
MultiPoly<K> mp_lcm(const MultiPoly<K>& f, const MultiPoly<K>& g) {
    if (f.is_zero_poly() || g.is_zero_poly()) return MultiPoly<K>(std::max(f.nvars, g.nvars));
    MultiPoly<K> d = mp_gcd(f, g);
    auto q = exact_div(f, d.resized(f.nvars));
    invariant(q.has_value(), "lcm division failed");
    return normalize_primitive(*q * g);
}

// ---- Resultant (Sylvester matrix, fraction-free Bareiss) ----

template <class K>
MultiPoly<K> mp_resultant(const MultiPoly<K>& f, const MultiPoly<K>& g, int var) {
    int n = std::max(f.nvars, g.nvars);
    if (f.is_zero_poly() || g.is_zero_poly()) return MultiPoly<K>(n);
    int df = f.deg(var), dg = g.deg(var);
    if (df == 0 && dg == 0) {
        K one = one_like(f.sample());
        return MultiPoly<K>::constant(one, n);  // empty Sylvester matrix
    }
    if (df == 0) {
        return (f.nvars == n ? f : f.resized(n)).pow(dg);
    }
    if (dg == 0) {
        return (g.nvars == n ? g : g.resized(n)).pow(df);
    }
    auto fc = (f.nvars == n ? f : f.resized(n)).coeffs_in(var);
    auto gc = (g.nvars == n ? g : g.resized(n)).coeffs_in(var);
    int dim = df + dg;
    std::vector<std::vector<MultiPoly<K>>> m(
        static_cast<size_t>(dim), std::vector<MultiPoly<K>>(static_cast<size_t>(dim), MultiPoly<K>(n)));
    // df rows of g coefficients, then dg rows of f coefficients (descending);
    // this row order fixes the sign convention Res(u0*u1-1, u1-1) = u0-1.
    for (int r = 0; r < df; ++r)
        for (int j = 0; j <= dg; ++j)
            m[static_cast<size_t>(r)][static_cast<size_t>(r + j)] = gc[static_cast<size_t>(dg - j)];
    for (int r = 0; r < dg; ++r)
        for (int j = 0; j <= df; ++j)
            m[static_cast<size_t>(df + r)][static_cast<size_t>(r + j)] = fc[static_cast<size_t>(df - j)];

    // Bareiss fraction-free elimination.
    K one = one_like(f.sample());
    MultiPoly<K> prev = MultiPoly<K>::constant(one, n);
    int sign = 1;
    for (int k = 0; k < dim - 1; ++k) {
        size_t ku = static_cast<size_t>(k);
        if (m[ku][ku].is_zero_poly()) {
            int swap_row = -1;
            for (int r = k + 1; r < dim; ++r)
                if (!m[static_cast<size_t>(r)][ku].is_zero_poly()) { swap_row = r; break; }
            if (swap_row < 0) return MultiPoly<K>(n);  // singular: resultant 0
            std::swap(m[ku], m[static_cast<size_t>(swap_row)]);
            sign = -sign;
        }
        for (int i = k + 1; i < dim; ++i) {
            size_t iu = static_cast<size_t>(i);
            for (int j = k + 1; j < dim; ++j) {
                size_t ju = static_cast<size_t>(j);
                MultiPoly<K> numer = m[iu][ju] * m[ku][ku] - m[iu][ku] * m[ku][ju];
                auto d = exact_div(numer, prev);
                invariant(d.has_value(), "Bareiss exact division failed");
                m[iu][ju] = *d;
            }
            m[iu][ku] = MultiPoly<K>(n);
        }
        prev = m[ku][ku];
    }
    MultiPoly<K> det = m[static_cast<size_t>(dim - 1)][static_cast<size_t>(dim - 1)];
    return sign < 0 ? -det : det;
}

// ---- Squarefree part ----

/// Full squarefree part (radical) of f, recursing through `var` first.
template <class K>
MultiPoly<K> mp_squarefree_part(const MultiPoly<K>& f, int var) {
    if (f.is_zero_poly() || f.is_constant()) return f;
    int v = var >= 0 && f.deg(var) > 0 ? var : f.lead_var();
    MultiPoly<K> c = mp_content(f, v);
    MultiPoly<K> p = mp_primitive_part(f, v);
    MultiPoly<K> sp;
    if (p.deg(v) == 0) {
        sp = p;  // possible only if f had no v at all
    } else {
        MultiPoly<K> g = mp_gcd(p, p.derivative(v));
        auto q = exact_div(p, g.resized(p.nvars));
        invariant(q.has_value(), "squarefree division failed");
        sp = *q;
    }
    MultiPoly<K> rc = c.is_constant() ? c : mp_squarefree_part(c, c.lead_var());
    if (rc.is_constant()) return normalize_primitive(sp);
    return normalize_primitive(rc * sp);
}

template <class K>
MultiPoly<K> mp_squarefree_part(const MultiPoly<K>& f) {
    return mp_squarefree_part(f, f.lead_var());
}

// ---- Conversions with UPoly (single-variable views) ----

template <class K>
UPoly<K> to_upoly(const MultiPoly<K>& f, int var) {
    auto cs = f.coeffs_in(var);
    UPoly<K> r;
    r.c.reserve(cs.size());
    for (const auto& x : cs) {
        invariant(x.is_constant() || x.is_zero_poly(), "to_upoly with extra variables");
        r.c.push_back(x.is_zero_poly() ? K{} : x.constant_value());
    }
    r.trim();
    return r;
}

template <class K>
MultiPoly<K> from_upoly(const UPoly<K>& f, int var, int nvars) {
    MultiPoly<K> r(nvars);
    for (size_t k = 0; k < f.c.size(); ++k) {
        if (is_zero(f.c[k])) continue;
        Exp e(static_cast<size_t>(nvars), 0);
        e[static_cast<size_t>(var)] = static_cast<uint32_t>(k);
        r.t.emplace(std::move(e), f.c[k]);
    }
    return r;
}

} // namespace aodes
