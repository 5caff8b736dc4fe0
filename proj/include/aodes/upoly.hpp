#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "aodes/rational.hpp"

namespace aodes {

/// Dense univariate polynomial over a field K. Coefficients ascending,
/// trailing zeros trimmed (zero polynomial == empty coefficient vector).
///
/// K must provide +,-,*,unary-,==, is_zero/is_one/inv and the
/// zero_like/one_like/inject_rat hooks (see rational.hpp).
template <class K>
struct UPoly {
    std::vector<K> c;

    UPoly() = default;
    explicit UPoly(std::vector<K> cs) : c(std::move(cs)) { trim(); }

    static UPoly zero() { return UPoly(); }
    static UPoly constant(const K& a) {
        UPoly p;
        if (!is_zero(a)) p.c.push_back(a);
        return p;
    }
    // x^k with coefficient a.
    static UPoly monomial(const K& a, int k) {
        UPoly p;
        if (is_zero(a)) return p;
        p.c.assign(static_cast<size_t>(k) + 1, zero_like(a));
        p.c.back() = a;
        return p;
    }

    void trim() {
        while (!c.empty() && is_zero(c.back())) c.pop_back();
    }

    bool is_zero_poly() const { return c.empty(); }
    int deg() const { return static_cast<int>(c.size()) - 1; }

    const K& lc() const {
        invariant(!c.empty(), "lc of zero polynomial");
        return c.back();
    }

    K coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c.size())) {
            invariant(!c.empty() || true, "");
            // need *some* K zero; derive from an existing coefficient
            if (!c.empty()) return zero_like(c.front());
            return K{};  // only reachable for default-constructible K (Rat)
        }
        return c[static_cast<size_t>(k)];
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        UPoly r;
        r.c.resize(std::max(a.c.size(), b.c.size()), sample_zero(a, b));
        for (size_t i = 0; i < r.c.size(); ++i) {
            if (i < a.c.size() && i < b.c.size()) r.c[i] = a.c[i] + b.c[i];
            else if (i < a.c.size()) r.c[i] = a.c[i];
            else r.c[i] = b.c[i];
        }
        r.trim();
        return r;
    }

    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

    UPoly operator-() const {
        UPoly r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }

    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero_poly() || b.is_zero_poly()) return UPoly();
        UPoly r;
        r.c.assign(a.c.size() + b.c.size() - 1, zero_like(a.c.front()));
        for (size_t i = 0; i < a.c.size(); ++i) {
            if (is_zero(a.c[i])) continue;
            for (size_t j = 0; j < b.c.size(); ++j)
                r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
        }
        r.trim();
        return r;
    }

    UPoly scaled(const K& a) const {
        if (is_zero(a)) return UPoly();
        UPoly r = *this;
        for (auto& x : r.c) x = x * a;
        r.trim();
        return r;
    }

    friend bool operator==(const UPoly& a, const UPoly& b) {
        if (a.c.size() != b.c.size()) return false;
        for (size_t i = 0; i < a.c.size(); ++i)
            if (!(a.c[i] == b.c[i])) return false;
        return true;
    }
    friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

    UPoly derivative() const {
        UPoly r;
        if (c.size() <= 1) return r;
        r.c.reserve(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i)
            r.c.push_back(c[i] * inject_rat(c[i], Rat(static_cast<long>(i))));
        r.trim();
        return r;
    }

    K eval(const K& x) const {
        if (c.empty()) return zero_like(x);
        K acc = c.back();
        for (size_t i = c.size(); i-- > 1;) acc = acc * x + c[i - 1];
        return acc;
    }

    // Evaluate in a larger field via an injection functor K -> K2.
    template <class K2, class Inj>
    K2 eval_in(const K2& x, Inj inj) const {
        K2 acc = zero_like(x);
        for (size_t i = c.size(); i-- > 0;) acc = acc * x + inj(c[i]);
        return acc;
    }

    // this(x + a)
    UPoly shifted(const K& a) const {
        if (c.empty()) return UPoly();
        UPoly r = UPoly::constant(c.back());
        UPoly lin;  // x + a
        lin.c = {a, one_like(a)};
        for (size_t i = c.size() - 1; i-- > 0;) {
            r = r * lin + UPoly::constant(c[i]);
        }
        return r;
    }

    // this(g(x))
    UPoly composed(const UPoly& g) const {
        UPoly r;
        for (size_t i = c.size(); i-- > 0;) {
            r = r * g + UPoly::constant(c[i]);
        }
        return r;
    }

private:
    static K sample_zero(const UPoly& a, const UPoly& b) {
        if (!a.c.empty()) return zero_like(a.c.front());
        if (!b.c.empty()) return zero_like(b.c.front());
        return K{};
    }
};

/// Division with remainder over a field; divisor must be non-zero.
template <class K>
std::pair<UPoly<K>, UPoly<K>> divmod(const UPoly<K>& a, const UPoly<K>& b) {
    invariant(!b.is_zero_poly(), "division by zero polynomial");
    UPoly<K> q, r = a;
    const int db = b.deg();
    const K lb_inv = inv(b.lc());
    if (r.deg() >= db) q.c.assign(static_cast<size_t>(r.deg() - db) + 1, zero_like(b.lc()));
    while (!r.is_zero_poly() && r.deg() >= db) {
        const int k = r.deg() - db;
        K t = r.lc() * lb_inv;
        q.c[static_cast<size_t>(k)] = t;
        // r -= t*x^k * b
        for (int i = 0; i <= db; ++i) {
            size_t idx = static_cast<size_t>(i + k);
            r.c[idx] = r.c[idx] - t * b.c[static_cast<size_t>(i)];
        }
        r.trim();
    }
    q.trim();
    return {q, r};
}

template <class K>
UPoly<K> operator/(const UPoly<K>& a, const UPoly<K>& b) { return divmod(a, b).first; }

template <class K>
UPoly<K> operator%(const UPoly<K>& a, const UPoly<K>& b) { return divmod(a, b).second; }

template <class K>
UPoly<K> monic(const UPoly<K>& a) {
    if (a.is_zero_poly()) return a;
    return a.scaled(inv(a.lc()));
}

/// Monic gcd by the Euclidean algorithm (field coefficients).
template <class K>
UPoly<K> upoly_gcd(UPoly<K> a, UPoly<K> b) {
    while (!b.is_zero_poly()) {
        UPoly<K> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
template <class K>
std::tuple<UPoly<K>, UPoly<K>, UPoly<K>> upoly_xgcd(UPoly<K> a, UPoly<K> b) {
    // invariants: a = s0*A + t0*B ; b = s1*A + t1*B
    UPoly<K> s0, s1, t0, t1;
    {
        K one{};
        if (!a.is_zero_poly()) one = one_like(a.c.front());
        else if (!b.is_zero_poly()) one = one_like(b.c.front());
        else return {UPoly<K>(), UPoly<K>(), UPoly<K>()};
        s0 = UPoly<K>::constant(one);
        t1 = UPoly<K>::constant(one);
    }
    while (!b.is_zero_poly()) {
        auto [q, r] = divmod(a, b);
        a = std::move(b); b = std::move(r);
        UPoly<K> s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (a.is_zero_poly()) return {a, s0, t0};
    K d = inv(a.lc());
    return {a.scaled(d), s0.scaled(d), t0.scaled(d)};
}

/// Resultant over a field via the polynomial remainder sequence.
template <class K>
K upoly_resultant(UPoly<K> a, UPoly<K> b) {
    K one;
    if (!a.is_zero_poly()) one = one_like(a.c.front());
    else if (!b.is_zero_poly()) one = one_like(b.c.front());
    else return K{};
    if (a.is_zero_poly() || b.is_zero_poly()) return zero_like(one);
    K res = one;
    while (true) {
        if (b.deg() == 0) {
            // Res(a, const) = const^deg(a)
            K p = one;
            for (int i = 0; i < a.deg(); ++i) p = p * b.lc();
            return res * p;
        }
        if (a.deg() < b.deg()) {
            if ((a.deg() * b.deg()) & 1) res = -res;
            std::swap(a, b);
            continue;
        }
        UPoly<K> r = a % b;
        if (r.is_zero_poly()) return zero_like(one);
        // Res(a,b) = lc(b)^(deg a - deg r) * (-1)^(deg a * deg b) * Res(b, r)
        K p = one;
        for (int i = 0; i < a.deg() - r.deg(); ++i) p = p * b.lc();
        if ((a.deg() * b.deg()) & 1) p = -p;
        res = res * p;
        a = std::move(b);
        b = std::move(r);
    }
}

template <class K>
UPoly<K> upoly_squarefree_part(const UPoly<K>& f) {
    if (f.deg() <= 0) return f;
    UPoly<K> g = upoly_gcd(f, f.derivative());
    if (g.deg() <= 0) return f;
    return f / g;
}

// ---- Rat-specific helpers ----

/// Multiply by the rational that makes the coefficients coprime integers with
/// positive leading coefficient; returns {primitive integer poly, factor}
/// with f == primitive * factor.
inline std::pair<UPoly<Rat>, Rat> z_primitive(const UPoly<Rat>& f) {
    if (f.is_zero_poly()) return {f, Rat(1)};
    Int num_gcd(0), den_lcm(1);
    for (const auto& x : f.c) {
        if (x.is_zero()) continue;
        num_gcd = int_gcd(num_gcd, x.num());
        den_lcm = int_lcm(den_lcm, x.den());
    }
    Rat scale(den_lcm, num_gcd);
    if (f.lc().sign() < 0) scale = -scale;
    UPoly<Rat> p = f.scaled(scale);
    return {p, scale.inv()};
}

inline Int max_abs_num(const UPoly<Rat>& f) {
    Int m(0);
    for (const auto& x : f.c) {
        Int a = x.num();
        if (sgn(a) < 0) a = -a;
        if (a > m) m = a;
    }
    return m;
}

} // namespace aodes
