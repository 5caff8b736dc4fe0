#include "aodes/oracle.hpp"

namespace aodes {
namespace {

enum class Domain { Alg, Fam, Param };

Domain pick_domain(const PuiseuxTruncation& t) {
    Domain d = Domain::Alg;
    for (const auto& [e, c] : t.terms) {
        if (std::holds_alternative<RF>(c) || std::holds_alternative<FamVal>(c)) return Domain::Fam;
        if (std::holds_alternative<ParamVal>(c)) d = Domain::Param;
    }
    return d;
}

template <class K, class Conv>
PSeries<K> build_series(const PuiseuxTruncation& t, Conv conv, bool negate_exponents) {
    PSeries<K> s;
    s.exact = true;  // zero-tail semantics
    for (const auto& [e, c] : t.terms) {
        K v = conv(c);
        if (is_zero(v)) continue;
        s.terms.emplace(negate_exponents ? -e : e, v);
    }
    return s;
}

// residual at infinity: u_{j+1} = -t^2 d(u_j)/dt
template <class K>
PSeries<K> residual_infinity(const MP& F, const PSeries<K>& y, const K& one) {
    int m = F.nvars - 1;
    std::vector<PSeries<K>> derivs = {y};
    PSeries<K> mt2 = PSeries<K>::monomial_exact(Rat(2), -one);
    for (int i = 1; i <= m; ++i) derivs.push_back(mt2 * derivs.back().derivative());
    std::vector<std::vector<PSeries<K>>> pows(static_cast<size_t>(m + 1));
    auto get_pow = [&](int var, int k) -> const PSeries<K>& {
        auto& vp = pows[static_cast<size_t>(var)];
        if (vp.empty()) vp.push_back(PSeries<K>::monomial_exact(Rat(0), one));
        while (static_cast<int>(vp.size()) <= k)
            vp.push_back(vp.back() * derivs[static_cast<size_t>(var)]);
        return vp[static_cast<size_t>(k)];
    };
    PSeries<K> acc = PSeries<K>::exact_zero();
    for (const auto& [e, c] : F.t) {
        PSeries<K> term = PSeries<K>::monomial_exact(Rat(0), inject_rat(one, c));
        for (size_t v = 0; v < e.size(); ++v)
            if (e[v]) term = term * get_pow(static_cast<int>(v), static_cast<int>(e[v]));
        acc = acc + term;
    }
    return acc;
}

template <class K>
VerifyReport run_verify(const DiffSystem& S, const PuiseuxTruncation& t, const Rat& order,
                        const PSeries<K>& y, const K& one) {
    VerifyReport rep;
    if (t.exact) {
        rep.threshold = order;
    } else if (t.point == ExpPoint::Zero) {
        rep.threshold = std::min(order, t.truncation_order + Rat(1, t.ramification) - Rat(S.order));
    } else {
        rep.threshold = std::min(order, -t.truncation_order + Rat(1, t.ramification));
    }
    rep.ok = true;
    for (const auto& F : S.eqs) {
        PSeries<K> res;
        if (t.point == ExpPoint::Zero) {
            res = substitute_diff_poly(F, y, [&](const Rat& q) { return inject_rat(one, q); }, one);
        } else {
            res = residual_infinity(F, y, one);
        }
        if (res.terms.empty()) {
            rep.residual_valuations.push_back(std::nullopt);
            continue;
        }
        Rat val = res.terms.begin()->first;
        if (t.point == ExpPoint::Infinity) {
            // series built in t = 1/x with exponents negated already
        }
        rep.residual_valuations.push_back(val);
        if (t.exact || val < rep.threshold) rep.ok = false;
    }
    return rep;
}

} // namespace

VerifyReport verify_truncation(const DiffSystem& S, const PuiseuxTruncation& t, const Rat& order) {
    Domain d = pick_domain(t);
    const bool neg = t.point == ExpPoint::Infinity;
    switch (d) {
        case Domain::Alg: {
            AlgNum one = alg_from_rat(Rat(1));
            auto conv = [](const Coeff& c) -> AlgNum {
                if (const Rat* q = std::get_if<Rat>(&c)) return alg_from_rat(*q);
                if (const AlgNum* a = std::get_if<AlgNum>(&c)) return *a;
                fail(ErrorKind::Internal, "mixed coefficient kinds in truncation");
            };
            PSeries<AlgNum> y = build_series<AlgNum>(t, conv, neg);
            return run_verify(S, t, order, y, one);
        }
        case Domain::Fam: {
            // locate the extension field, if any
            std::shared_ptr<const ExtField<RF>> field;
            for (const auto& [e, c] : t.terms)
                if (const FamVal* f = std::get_if<FamVal>(&c))
                    if (f->F) field = f->F;
            FamVal one = FamVal::from_base(RF::from_const(Rat(1)));
            one.F = field;
            auto conv = [&](const Coeff& c) -> FamVal {
                if (const Rat* q = std::get_if<Rat>(&c)) return inject_rat(one, *q);
                if (const RF* f = std::get_if<RF>(&c)) {
                    FamVal v = FamVal::from_base(*f);
                    v.F = field;
                    return v;
                }
                if (const FamVal* f = std::get_if<FamVal>(&c)) {
                    FamVal v = *f;
                    if (!v.F) v.F = field;
                    return v;
                }
                fail(ErrorKind::Internal, "mixed coefficient kinds in family truncation");
            };
            PSeries<FamVal> y = build_series<FamVal>(t, conv, neg);
            return run_verify(S, t, order, y, one);
        }
        case Domain::Param: {
            ParamVal one = ParamVal::from_const(alg_from_rat(Rat(1)));
            auto conv = [](const Coeff& c) -> ParamVal {
                if (const Rat* q = std::get_if<Rat>(&c))
                    return ParamVal::from_const(alg_from_rat(*q));
                if (const AlgNum* a = std::get_if<AlgNum>(&c)) return ParamVal::from_const(*a);
                if (const ParamVal* p = std::get_if<ParamVal>(&c)) return *p;
                fail(ErrorKind::Internal, "mixed coefficient kinds in parametric truncation");
            };
            PSeries<ParamVal> y = build_series<ParamVal>(t, conv, neg);
            return run_verify(S, t, order, y, one);
        }
    }
    fail(ErrorKind::Internal, "unreachable");
}

} // namespace aodes
