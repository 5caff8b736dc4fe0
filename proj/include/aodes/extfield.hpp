#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "aodes/upoly.hpp"

namespace aodes {

/// Which root of the minimal polynomial a field's generator denotes.
/// Real roots carry an isolating rational interval; non-real roots are
/// identified as the k-th conjugate pair (display / enumeration only — the
/// arithmetic is embedding-independent).
struct RootSelector {
    bool real = true;
    Rat lo, hi;          // isolating interval when real
    int conj_index = -1; // conjugate-pair index when !real
    int conj_sign = 0;   // +1 / -1 member of the pair
};

/// Simple extension K[t]/(minpoly). minpoly is monic and irreducible over K.
template <class K>
struct ExtField {
    UPoly<K> minpoly;
    std::string gen_name = "a";
    RootSelector selector;      // meaningful for K = Rat
    bool selector_set = false;

    int degree() const { return minpoly.deg(); }
};

/// Element of a simple extension field. A null field pointer denotes a
/// *detached* scalar (constant over the prime field) which attaches itself
/// to the field of the other operand on demand; the default-constructed
/// element is the detached 0.
template <class K>
struct ExtElem {
    std::shared_ptr<const ExtField<K>> F;
    UPoly<K> rep;  // degree < F->degree() when attached, degree <= 0 when detached

    ExtElem() = default;
    ExtElem(std::shared_ptr<const ExtField<K>> f, UPoly<K> r) : F(std::move(f)), rep(std::move(r)) {
        reduce();
    }
    static ExtElem from_base(const K& a) {
        ExtElem e;
        e.rep = UPoly<K>::constant(a);
        return e;
    }
    static ExtElem generator(std::shared_ptr<const ExtField<K>> f) {
        invariant(f != nullptr && f->degree() >= 1, "generator of null field");
        K one = one_like(f->minpoly.lc());
        if (f->degree() == 1) {
            // t - c: generator equals the rational value c
            return ExtElem(f, UPoly<K>::constant(-f->minpoly.coeff(0)));
        }
        return ExtElem(f, UPoly<K>::monomial(one, 1));
    }

    bool detached() const { return F == nullptr; }
    bool is_zero_val() const { return rep.is_zero_poly(); }

    void reduce() {
        if (F && rep.deg() >= F->degree()) rep = rep % F->minpoly;
    }

    // Base-field value when the element is a constant.
    bool is_base() const { return rep.deg() <= 0; }
    K base_value() const {
        if (rep.is_zero_poly()) {
            if (F) return zero_like(F->minpoly.lc());
            return K{};
        }
        invariant(rep.deg() == 0, "base_value of non-constant element");
        return rep.c.front();
    }

    static void align(const ExtElem& a, const ExtElem& b,
                      std::shared_ptr<const ExtField<K>>& f) {
        if (a.F && b.F) {
            invariant(a.F == b.F, "mixing elements of different extension fields");
            f = a.F;
        } else {
            f = a.F ? a.F : b.F;
        }
    }

    friend ExtElem operator+(const ExtElem& a, const ExtElem& b) {
        std::shared_ptr<const ExtField<K>> f;
        align(a, b, f);
        return ExtElem(f, a.rep + b.rep);
    }
    friend ExtElem operator-(const ExtElem& a, const ExtElem& b) {
        std::shared_ptr<const ExtField<K>> f;
        align(a, b, f);
        return ExtElem(f, a.rep - b.rep);
    }
    ExtElem operator-() const { return ExtElem{F, -rep}; }
    friend ExtElem operator*(const ExtElem& a, const ExtElem& b) {
        std::shared_ptr<const ExtField<K>> f;
        align(a, b, f);
        return ExtElem(f, a.rep * b.rep);
    }
    friend ExtElem operator/(const ExtElem& a, const ExtElem& b) { return a * inv_ext(b); }
    friend bool operator==(const ExtElem& a, const ExtElem& b) {
        if (a.F && b.F && a.F != b.F) return false;
        return a.rep == b.rep;
    }
    friend bool operator!=(const ExtElem& a, const ExtElem& b) { return !(a == b); }

    friend ExtElem inv_ext(const ExtElem& x) {
        invariant(!x.is_zero_val(), "inverse of zero field element");
        if (!x.F || x.rep.deg() == 0) {
            ExtElem r = x;
            r.rep = UPoly<K>::constant(inv(x.rep.c.front()));
            return r;
        }
        auto [g, s, t] = upoly_xgcd(x.rep, x.F->minpoly);
        (void)t;
        invariant(g.deg() == 0, "minimal polynomial not irreducible (gcd found)");
        // g is monic constant 1, so s * rep == 1 mod minpoly
        return ExtElem(x.F, s);
    }
};

template <class K>
bool is_zero(const ExtElem<K>& x) { return x.is_zero_val(); }

template <class K>
bool is_one(const ExtElem<K>& x) { return x.rep.deg() == 0 && is_one(x.rep.c.front()); }

template <class K>
ExtElem<K> inv(const ExtElem<K>& x) { return inv_ext(x); }

template <class K>
ExtElem<K> zero_like(const ExtElem<K>& x) { return ExtElem<K>{x.F, UPoly<K>()}; }

template <class K>
ExtElem<K> one_like(const ExtElem<K>& x) {
    K one = x.rep.is_zero_poly() ? one_like(K{}) : one_like(x.rep.c.front());
    return ExtElem<K>{x.F, UPoly<K>::constant(one)};
}

template <class K>
ExtElem<K> inject_rat(const ExtElem<K>& sample, const Rat& q) {
    if (q.is_zero()) return zero_like(sample);
    K one = sample.rep.is_zero_poly() ? one_like(K{}) : one_like(sample.rep.c.front());
    return ExtElem<K>{sample.F, UPoly<K>::constant(inject_rat(one, q))};
}

// ---- Concrete algebraic numbers over Q ----

using NumberField = ExtField<Rat>;
using NumberFieldPtr = std::shared_ptr<const NumberField>;
using AlgNum = ExtElem<Rat>;

inline AlgNum alg_from_rat(const Rat& q) { return AlgNum::from_base(q); }

inline bool alg_is_rational(const AlgNum& x) { return x.is_base(); }

inline Rat alg_rational_value(const AlgNum& x) { return x.base_value(); }

/// Remap an element into a larger field given the image of the old generator.
inline AlgNum alg_embed(const AlgNum& x, const NumberFieldPtr& new_field,
                        const UPoly<Rat>& gen_image) {
    if (x.detached() || x.is_base()) return AlgNum{new_field, x.rep};
    UPoly<Rat> acc;
    for (size_t i = x.rep.c.size(); i-- > 0;) {
        acc = acc * gen_image + UPoly<Rat>::constant(x.rep.c[i]);
        if (acc.deg() >= new_field->degree()) acc = acc % new_field->minpoly;
    }
    return AlgNum{new_field, acc};
}

} // namespace aodes
