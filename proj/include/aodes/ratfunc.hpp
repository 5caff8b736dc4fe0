#pragma once

#include <utility>

#include "aodes/upoly.hpp"

namespace aodes {

/// Rational function num/den over K, reduced (gcd 1) with monic denominator.
/// Default-constructed value is 0 (num = 0, den = 1 lazily on use).
template <class K>
struct RatFunc {
    UPoly<K> num;  // may be zero
    UPoly<K> den;  // monic, non-zero once attached; empty means "1" for a zero value

    RatFunc() = default;
    explicit RatFunc(UPoly<K> n) : num(std::move(n)) { attach_one(); }
    RatFunc(UPoly<K> n, UPoly<K> d) : num(std::move(n)), den(std::move(d)) { reduce(); }

    static RatFunc from_const(const K& a) { return RatFunc(UPoly<K>::constant(a)); }
    static RatFunc generator(const K& one) {
        return RatFunc(UPoly<K>::monomial(one, 1));
    }

    bool is_zero_val() const { return num.is_zero_poly(); }
    bool is_const() const { return num.deg() <= 0 && den.deg() <= 0; }

    void attach_one() {
        if (den.is_zero_poly()) {
            if (num.is_zero_poly()) return;  // stays detached zero
            den = UPoly<K>::constant(one_like(num.c.front()));
        }
    }

    void reduce() {
        invariant(!den.is_zero_poly(), "rational function with zero denominator");
        if (num.is_zero_poly()) { den = UPoly<K>(); return; }
        UPoly<K> g = upoly_gcd(num, den);
        if (g.deg() > 0) { num = num / g; den = den / g; }
        K s = inv(den.lc());
        num = num.scaled(s);
        den = den.scaled(s);
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero_val()) return b;
        if (b.is_zero_val()) return a;
        return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    RatFunc operator-() const {
        RatFunc r = *this;
        r.num = -r.num;
        return r;
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero_val() || b.is_zero_val()) return RatFunc();
        return RatFunc(a.num * b.num, a.den * b.den);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        invariant(!b.is_zero_val(), "rational function division by zero");
        if (a.is_zero_val()) return RatFunc();
        return RatFunc(a.num * b.den, a.den * b.num);
    }
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero_val() || b.is_zero_val()) return a.is_zero_val() && b.is_zero_val();
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }
};

template <class K>
bool is_zero(const RatFunc<K>& x) { return x.is_zero_val(); }

template <class K>
bool is_one(const RatFunc<K>& x) {
    return !x.is_zero_val() && x.num.deg() == 0 && x.den.deg() == 0 &&
           is_one(x.num.c.front()) && is_one(x.den.c.front());
}

template <class K>
RatFunc<K> inv(const RatFunc<K>& x) {
    invariant(!x.is_zero_val(), "inverse of zero rational function");
    return RatFunc<K>(x.den, x.num);
}

template <class K>
RatFunc<K> zero_like(const RatFunc<K>&) { return RatFunc<K>(); }

template <class K>
RatFunc<K> one_like(const RatFunc<K>& x) {
    if (x.is_zero_val()) {
        // best effort: K must be default-constructible (Rat) or sample attached
        K one = one_like(K{});
        return RatFunc<K>::from_const(one);
    }
    return RatFunc<K>::from_const(one_like(x.num.c.front()));
}

template <class K>
RatFunc<K> inject_rat(const RatFunc<K>& sample, const Rat& q) {
    if (q.is_zero()) return RatFunc<K>();
    K one = sample.is_zero_val() ? one_like(K{}) : one_like(sample.num.c.front());
    return RatFunc<K>::from_const(inject_rat(one, q));
}

} // namespace aodes
