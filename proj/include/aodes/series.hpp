#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "aodes/multipoly.hpp"
#include "aodes/ratfunc.hpp"

namespace aodes {

/// Sparse truncated Puiseux series over a field K, expanded at 0. Exponents
/// are exact rationals. `exact` means the tail is identically zero; otherwise
/// coefficients are certified for exponents < `order` only.
template <class K>
struct PSeries {
    std::map<Rat, K> terms;  // nonzero coefficients only
    Rat order;               // exclusive certification bound (ignored when exact)
    bool exact = false;

    static PSeries exact_zero() {
        PSeries s;
        s.exact = true;
        return s;
    }
    static PSeries monomial_exact(const Rat& e, const K& c) {
        PSeries s;
        s.exact = true;
        if (!is_zero(c)) s.terms.emplace(e, c);
        return s;
    }

    void add_term(const Rat& e, const K& c) {
        if (is_zero(c)) return;
        if (!exact && e >= order) return;
        auto [it, fresh] = terms.try_emplace(e, c);
        if (!fresh) {
            it->second = it->second + c;
            if (is_zero(it->second)) terms.erase(it);
        }
    }

    std::optional<Rat> valuation() const {
        if (terms.empty()) return std::nullopt;  // zero to all certified orders
        return terms.begin()->first;
    }

    PSeries truncated(const Rat& new_order) const {
        PSeries r = *this;
        if (r.exact) {
            bool dropped = false;
            for (auto it = r.terms.begin(); it != r.terms.end();) {
                if (it->first >= new_order) {
                    it = r.terms.erase(it);
                    dropped = true;
                } else {
                    ++it;
                }
            }
            if (dropped) {
                r.exact = false;
                r.order = new_order;
            }
            return r;
        }
        if (new_order < r.order) {
            r.order = new_order;
            for (auto it = r.terms.begin(); it != r.terms.end();)
                it = (it->first >= new_order) ? r.terms.erase(it) : std::next(it);
        }
        return r;
    }

    friend PSeries operator+(const PSeries& a, const PSeries& b) {
        PSeries r;
        r.exact = a.exact && b.exact;
        if (!r.exact) {
            bool have = false;
            if (!a.exact) { r.order = a.order; have = true; }
            if (!b.exact) r.order = have ? std::min(r.order, b.order) : b.order;
        }
        for (const auto& [e, c] : a.terms) r.add_term(e, c);
        for (const auto& [e, c] : b.terms) r.add_term(e, c);
        return r;
    }
    friend PSeries operator-(const PSeries& a, const PSeries& b) { return a + b.scaled_neg(); }
    PSeries scaled_neg() const {
        PSeries r = *this;
        for (auto& [e, c] : r.terms) c = -c;
        return r;
    }
    PSeries scaled(const K& s) const {
        PSeries r;
        r.exact = exact;
        r.order = order;
        if (is_zero(s)) return r;
        for (const auto& [e, c] : terms) {
            K v = c * s;
            if (!is_zero(v)) r.terms.emplace(e, v);
        }
        return r;
    }

    friend PSeries operator*(const PSeries& a, const PSeries& b) {
        PSeries r;
        // certified order of the product
        if (a.exact && b.exact) {
            r.exact = true;
        } else {
            Rat av = a.terms.empty() ? (a.exact ? Rat(0) : a.order) : a.terms.begin()->first;
            Rat bv = b.terms.empty() ? (b.exact ? Rat(0) : b.order) : b.terms.begin()->first;
            bool have = false;
            if (!b.exact) { r.order = b.order + av; have = true; }
            if (!a.exact) {
                Rat o = a.order + bv;
                r.order = have ? std::min(r.order, o) : o;
            }
            // exact-zero operand: product is exactly zero
            if ((a.exact && a.terms.empty()) || (b.exact && b.terms.empty())) {
                r.exact = true;
                r.terms.clear();
                return r;
            }
        }
        for (const auto& [ea, ca] : a.terms)
            for (const auto& [eb, cb] : b.terms) r.add_term(ea + eb, ca * cb);
        return r;
    }

    PSeries derivative() const {
        PSeries r;
        r.exact = exact;
        r.order = order - Rat(1);
        for (const auto& [e, c] : terms) {
            if (e.is_zero()) continue;
            r.add_term(e - Rat(1), c * inject_rat(c, e));
        }
        return r;
    }

    PSeries pow(int k, const K& one) const {
        PSeries r = monomial_exact(Rat(0), one);
        PSeries base = *this;
        while (k) {
            if (k & 1) r = r * base;
            k >>= 1;
            if (k) base = base * base;
        }
        return r;
    }

    bool is_identically_zero() const { return terms.empty() && exact; }
};

/// Substitute a series y for the unknown into a differential polynomial
/// F(u0..um): u_i receives the i-th derivative of y.
template <class K, class Inj>
PSeries<K> substitute_diff_poly(const MP& F, const PSeries<K>& y, Inj inj, const K& one) {
    int m = F.nvars - 1;
    std::vector<PSeries<K>> derivs;
    derivs.push_back(y);
    for (int i = 1; i <= m; ++i) derivs.push_back(derivs.back().derivative());
    // memoized powers
    std::vector<std::vector<PSeries<K>>> pows(static_cast<size_t>(m + 1));
    auto get_pow = [&](int var, int k) -> const PSeries<K>& {
        auto& vp = pows[static_cast<size_t>(var)];
        if (vp.empty()) vp.push_back(PSeries<K>::monomial_exact(Rat(0), one));
        while (static_cast<int>(vp.size()) <= k) vp.push_back(vp.back() * derivs[static_cast<size_t>(var)]);
        return vp[static_cast<size_t>(k)];
    };
    PSeries<K> acc = PSeries<K>::exact_zero();
    for (const auto& [e, c] : F.t) {
        PSeries<K> term = PSeries<K>::monomial_exact(Rat(0), inj(c));
        for (size_t v = 0; v < e.size(); ++v)
            if (e[v]) term = term * get_pow(static_cast<int>(v), static_cast<int>(e[v]));
        acc = acc + term;
    }
    return acc;
}

/// Multiplicative inverse of a series with non-zero valuation coefficient,
/// computed to absolute exponent < upto.
template <class K>
PSeries<K> invert_series(const PSeries<K>& s, const Rat& upto, const K& one) {
    auto val = s.valuation();
    invariant(val.has_value(), "inverse of (truncated) zero series");
    const Rat v = *val;
    K lead = s.terms.begin()->second;
    K lead_inv = inv(lead);
    // s = lead * x^v * (1 + u) with val(u) > 0
    PSeries<K> u;
    u.exact = s.exact;
    if (!s.exact) u.order = s.order - v;
    for (auto it = std::next(s.terms.begin()); it != s.terms.end(); ++it)
        u.terms.emplace(it->first - v, it->second * lead_inv);
    const Rat rel = upto + v;  // need 1/(1+u) below this relative exponent
    PSeries<K> acc = PSeries<K>::monomial_exact(Rat(0), one);
    if (!u.terms.empty()) {
        Rat uval = u.terms.begin()->first;
        invariant(uval > Rat(0), "series inverse: non-ascending tail");
        PSeries<K> mu = u.scaled_neg().truncated(rel);
        PSeries<K> p = mu;
        Rat reached = uval;
        while (reached < rel && !p.terms.empty()) {
            acc = acc + p;  // order bookkeeping handled by the arithmetic
            p = (p * mu).truncated(rel);
            reached += uval;
        }
        // the geometric tail continues beyond rel: certified below rel only
        Rat cap = rel;
        if (!acc.exact) cap = std::min(cap, acc.order);
        acc.exact = false;
        acc.order = cap;
    } else if (!u.exact) {
        acc.exact = false;
        acc.order = u.order;
    }
    PSeries<K> out;
    out.exact = acc.exact;
    if (!out.exact) out.order = std::min(upto, acc.order - v);
    for (const auto& [e, c] : acc.terms) {
        if (!out.exact && e - v >= out.order) continue;
        out.terms.emplace(e - v, c * lead_inv);
    }
    return out;
}

/// t(x + a) of a truncated series with rational exponents, via the binomial
/// expansion of (x + a)^e, valid for a != 0; result certified below `upto`.
template <class K>
PSeries<K> shift_series(const PSeries<K>& s, const Rat& a, const Rat& upto, const K& one) {
    invariant(!a.is_zero(), "shift_series by zero");
    PSeries<K> acc;
    acc.exact = false;
    acc.order = upto;
    if (s.exact) acc.order = upto;
    for (const auto& [e, c] : s.terms) {
        // (x+a)^e = a^e * (1 + x/a)^e, binomial series in x/a
        invariant(e.is_integer() || !a.is_zero(), "fractional shift");
        // coefficient of x^j: C(e, j) a^(e-j); e rational requires a^e rational
        // only for integer e; fractional exponents use the principal branch of
        // the binomial series around a — callers pass integer-exponent series
        // or accept the formal expansion with a^(e-j) kept symbolic via
        // integer e only.
        invariant(e.is_integer(), "shift_series requires integer exponents");
        long ei = static_cast<long>(e.num().get_si());
        Rat binom(1);
        Rat apow = rat_pow(a, ei);
        for (long j = 0; Rat(j) < upto; ++j) {
            if (ei >= 0 && j > ei) break;
            K coeff = c * inject_rat(c, binom * apow);
            acc.add_term(Rat(j), coeff);
            // update: C(e, j+1) = C(e, j) * (e - j)/(j+1), a^(e-j-1)
            binom *= Rat(ei - j, j + 1);
            apow = apow / a;
        }
    }
    (void)one;
    return acc;
}

// ---- Public coefficient representation for emitted solutions ----

using RF = RatFunc<Rat>;        // rational functions of one named parameter
using FamVal = ExtElem<RF>;     // algebraic element over Q(y0)
using ParamVal = RatFunc<AlgNum>;  // rational functions of a parameter over Q(alpha)

using Coeff = std::variant<Rat, AlgNum, RF, FamVal, ParamVal>;

bool coeff_is_zero(const Coeff& c);
bool coeff_equal(const Coeff& a, const Coeff& b);

enum class ExpPoint { Zero, Infinity };

/// A truncated formal Puiseux series solution.
struct PuiseuxTruncation {
    ExpPoint point = ExpPoint::Zero;
    Rat x_shift;                 // expansion at x = x_shift (finite point)
    long ramification = 1;
    std::vector<std::pair<Rat, Coeff>> terms;  // ascending exponents (Zero), descending (Infinity)
    Rat truncation_order;        // inclusive: all terms with exponent <= this are present
    bool exact = false;          // tail identically zero
    bool unique_extension = false;
    std::optional<Rat> indicial_root;
    std::string param_name;      // "y0", "c1", ... ("" if none)
    std::string field_note;      // printable description of the coefficient field
    bool via_inverse = false;    // reported through y = 1/z
};

struct SolutionFamily {
    PuiseuxTruncation truncation;         // parametric coefficients in y0
    std::vector<UPoly<Rat>> constraints;  // nonvanishing conditions on y0
    MP source_factor;                     // irreducible factor of H; also the c-relation
};

bool truncation_equal(const PuiseuxTruncation& a, const PuiseuxTruncation& b);

} // namespace aodes
