#include "aodes/series.hpp"

namespace aodes {

bool coeff_is_zero(const Coeff& c) {
    return std::visit([](const auto& x) { return is_zero(x); }, c);
}

namespace {

// structural field equality: same minimal polynomial and selector
bool same_field(const NumberFieldPtr& a, const NumberFieldPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (!(a->minpoly == b->minpoly)) return false;
    if (a->selector_set != b->selector_set) return false;
    if (!a->selector_set) return true;
    const auto& sa = a->selector;
    const auto& sb = b->selector;
    if (sa.real != sb.real) return false;
    if (sa.real) {
        // isolating intervals of the same minimal polynomial denote the same
        // root iff they overlap
        return !(sa.hi < sb.lo || sb.hi < sa.lo);
    }
    return sa.conj_index == sb.conj_index && sa.conj_sign == sb.conj_sign;
}

bool alg_equal(const AlgNum& a, const AlgNum& b) {
    if (a.is_base() && b.is_base()) return a.base_value() == b.base_value();
    if (a.is_base() != b.is_base()) return false;
    auto fa = std::static_pointer_cast<const NumberField>(a.F);
    auto fb = std::static_pointer_cast<const NumberField>(b.F);
    if (!same_field(fa, fb)) return false;
    return a.rep == b.rep;
}

} // namespace

bool coeff_equal(const Coeff& a, const Coeff& b) {
    // rational values may be wrapped in different alternatives
    auto as_rat = [](const Coeff& c) -> std::optional<Rat> {
        if (const Rat* q = std::get_if<Rat>(&c)) return *q;
        if (const AlgNum* x = std::get_if<AlgNum>(&c))
            if (x->is_base()) return x->base_value();
        if (const RF* f = std::get_if<RF>(&c))
            if (f->is_const()) return f->is_zero_val() ? Rat(0) : f->num.c[0] / f->den.c[0];
        return std::nullopt;
    };
    auto ra = as_rat(a), rb = as_rat(b);
    if (ra && rb) return *ra == *rb;
    if (ra.has_value() != rb.has_value()) return false;
    if (a.index() != b.index()) return false;
    if (const AlgNum* x = std::get_if<AlgNum>(&a)) return alg_equal(*x, std::get<AlgNum>(b));
    if (const RF* x = std::get_if<RF>(&a)) return *x == std::get<RF>(b);
    if (const FamVal* x = std::get_if<FamVal>(&a)) {
        const FamVal& y = std::get<FamVal>(b);
        if (x->F && y.F && !(x->F->minpoly == y.F->minpoly)) return false;
        return x->rep == y.rep;
    }
    if (const ParamVal* x = std::get_if<ParamVal>(&a)) return *x == std::get<ParamVal>(b);
    return false;
}

bool truncation_equal(const PuiseuxTruncation& a, const PuiseuxTruncation& b) {
    if (a.point != b.point) return false;
    if (!(a.x_shift == b.x_shift)) return false;
    if (a.param_name != b.param_name) return false;
    // compare up to the common certified order
    Rat common = std::min(a.truncation_order, b.truncation_order);
    if (a.exact && b.exact) common = std::max(a.truncation_order, b.truncation_order);
    auto collect = [&](const PuiseuxTruncation& t) {
        std::vector<std::pair<Rat, Coeff>> out;
        for (const auto& [e, c] : t.terms)
            if (e <= common || (t.exact && a.exact && b.exact)) out.emplace_back(e, c);
        return out;
    };
    auto ta = collect(a), tb = collect(b);
    if (ta.size() != tb.size()) return false;
    for (size_t i = 0; i < ta.size(); ++i) {
        if (!(ta[i].first == tb[i].first)) return false;
        if (!coeff_equal(ta[i].second, tb[i].second)) return false;
    }
    // an exact truncation and a longer inexact one are distinct
    if (a.exact != b.exact) return false;
    return true;
}

} // namespace aodes
