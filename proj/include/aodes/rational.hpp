#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

#include "aodes/error.hpp"

namespace aodes {

using Int = mpz_class;

/// Exact rational number. Thin value wrapper over GMP's mpq_class that keeps
/// the canonical form invariant (gcd(|num|, den) = 1, den > 0) and avoids
/// leaking gmpxx expression templates into generic code.
class Rat {
public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}
    Rat(long n, long d) : v_(n, d) { invariant(d != 0, "rational with zero denominator"); v_.canonicalize(); }
    explicit Rat(const Int& z) : v_(z) {}
    Rat(const Int& n, const Int& d) : v_(n, d) { invariant(sgn(d) != 0, "rational with zero denominator"); v_.canonicalize(); }
    explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    static Rat from_string(const std::string& s) {
        mpq_class q;
        if (q.set_str(s, 10) != 0) fail(ErrorKind::Parse, "bad rational literal: " + s);
        q.canonicalize();
        return Rat(q);
    }

    const mpq_class& raw() const { return v_; }
    Int num() const { return v_.get_num(); }
    Int den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        invariant(!o.is_zero(), "rational division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
    friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
    friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
    friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    Rat inv() const {
        invariant(!is_zero(), "inverse of zero");
        return Rat(mpq_class(1 / v_));
    }

    Rat abs() const { return sign() < 0 ? -*this : *this; }

    std::string str() const { return v_.get_str(); }

    // Floor as an integer (used for exponent lattice bookkeeping).
    Int floor() const {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
        return q;
    }

    double approx() const { return v_.get_d(); }

private:
    mpq_class v_;
};

inline Rat rat_pow(const Rat& b, long e) {
    if (e < 0) return rat_pow(b.inv(), -e);
    Rat r(1), a = b;
    while (e) {
        if (e & 1) r *= a;
        a *= a;
        e >>= 1;
    }
    return r;
}

inline Int int_gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int int_lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

// ---- Field trait hooks (shared by all coefficient fields) ----
//
// Generic code uses zero_like/one_like/inject_rat instead of bare
// constructors so that field types carrying context (extension fields,
// rational function fields) can build constants compatible with a sample.

inline Rat zero_like(const Rat&) { return Rat(0); }
inline Rat one_like(const Rat&) { return Rat(1); }
inline Rat inject_rat(const Rat&, const Rat& q) { return q; }
inline bool is_zero(const Rat& x) { return x.is_zero(); }
inline bool is_one(const Rat& x) { return x.is_one(); }
inline Rat inv(const Rat& x) { return x.inv(); }

} // namespace aodes
