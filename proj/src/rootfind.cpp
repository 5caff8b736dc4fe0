#include "aodes/rootfind.hpp"

#include <algorithm>

namespace aodes {
namespace {

std::vector<UPoly<Rat>> sturm_chain(const UPoly<Rat>& f) {
    std::vector<UPoly<Rat>> c;
    c.push_back(f);
    c.push_back(f.derivative());
    while (!c.back().is_zero_poly() && c.back().deg() >= 0) {
        const UPoly<Rat>& a = c[c.size() - 2];
        const UPoly<Rat>& b = c.back();
        if (b.deg() == 0) break;
        UPoly<Rat> r = a % b;
        if (r.is_zero_poly()) break;
        c.push_back(-r);
    }
    return c;
}

int sign_at(const UPoly<Rat>& f, const Rat& x) { return f.eval(x).sign(); }

// sign of f at +inf / -inf
int sign_at_inf(const UPoly<Rat>& f, bool plus) {
    if (f.is_zero_poly()) return 0;
    int s = f.lc().sign();
    if (!plus && (f.deg() & 1)) s = -s;
    return s;
}

int sign_changes(const std::vector<UPoly<Rat>>& chain, const Rat& x) {
    int changes = 0, prev = 0;
    for (const auto& f : chain) {
        int s = sign_at(f, x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

int sign_changes_inf(const std::vector<UPoly<Rat>>& chain, bool plus) {
    int changes = 0, prev = 0;
    for (const auto& f : chain) {
        int s = sign_at_inf(f, plus);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

} // namespace

int count_real_roots(const UPoly<Rat>& f) {
    UPoly<Rat> g = upoly_squarefree_part(f);
    if (g.deg() <= 0) return 0;
    auto chain = sturm_chain(g);
    return sign_changes_inf(chain, false) - sign_changes_inf(chain, true);
}

std::vector<std::pair<Rat, Rat>> isolate_real_roots(const UPoly<Rat>& f) {
    std::vector<std::pair<Rat, Rat>> out;
    UPoly<Rat> g = upoly_squarefree_part(f);
    if (g.deg() <= 0) return out;
    auto chain = sturm_chain(g);
    // Cauchy bound
    Rat bound(1);
    {
        Rat lcabs = g.lc().abs();
        Rat m(0);
        for (const auto& c : g.c) {
            Rat a = c.abs();
            if (a > m) m = a;
        }
        bound = Rat(1) + m / lcabs;
    }
    Rat lo = -bound, hi = bound;
    // make endpoints non-roots (bound is strict, so they are)
    struct Seg { Rat a, b; int va, vb; };
    std::vector<Seg> work;
    int vlo = sign_changes(chain, lo), vhi = sign_changes(chain, hi);
    if (vlo - vhi > 0) work.push_back({lo, hi, vlo, vhi});
    while (!work.empty()) {
        Seg s = work.back();
        work.pop_back();
        int nroots = s.va - s.vb;
        if (nroots <= 0) continue;
        if (nroots == 1) {
            // shrink until endpoints are not roots of g (they are not, by
            // construction: we only bisect at non-root midpoints)
            out.emplace_back(s.a, s.b);
            continue;
        }
        Rat mid = (s.a + s.b) / Rat(2);
        while (sign_at(g, mid) == 0) {
            // midpoint is a rational root: nudge
            mid = (s.a + mid) / Rat(2);
        }
        int vm = sign_changes(chain, mid);
        work.push_back({s.a, mid, s.va, vm});
        work.push_back({mid, s.b, vm, s.vb});
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

std::pair<Rat, Rat> refine_interval(const UPoly<Rat>& f, std::pair<Rat, Rat> iv, const Rat& width) {
    UPoly<Rat> g = upoly_squarefree_part(f);
    int sa = sign_at(g, iv.first);
    invariant(sa != 0 && sign_at(g, iv.second) != 0, "refine_interval endpoints touch a root");
    while (iv.second - iv.first > width) {
        Rat mid = (iv.first + iv.second) / Rat(2);
        int sm = sign_at(g, mid);
        if (sm == 0) {
            // rational root: collapse to a tiny interval around it
            Rat eps = width / Rat(4);
            iv = {mid - eps, mid + eps};
            break;
        }
        if (sm == sa) iv.first = mid;
        else iv.second = mid;
    }
    return iv;
}

std::pair<Rat, Rat> interval_eval(const UPoly<Rat>& f, const std::pair<Rat, Rat>& x) {
    // Horner with interval arithmetic
    Rat lo(0), hi(0);
    for (size_t i = f.c.size(); i-- > 0;) {
        // [lo,hi] * [x.lo,x.hi]
        Rat a = lo * x.first, b = lo * x.second, c = hi * x.first, d = hi * x.second;
        Rat nlo = std::min(std::min(a, b), std::min(c, d));
        Rat nhi = std::max(std::max(a, b), std::max(c, d));
        lo = nlo + f.c[i];
        hi = nhi + f.c[i];
    }
    return {lo, hi};
}

NumberFieldPtr make_number_field(const UPoly<Rat>& monic_irreducible, RootSelector sel,
                                 std::string gen_name) {
    auto f = std::make_shared<NumberField>();
    f->minpoly = monic_irreducible;
    f->gen_name = std::move(gen_name);
    f->selector = sel;
    f->selector_set = true;
    return f;
}

std::vector<AlgRoot> univariate_roots(const UPoly<Rat>& f, const Limits& lim) {
    invariant(!f.is_zero_poly(), "roots of the zero polynomial");
    UFactorization fac = factor_univariate(f, lim.factor);
    std::vector<AlgRoot> real_roots, complex_roots;
    for (const auto& [g, mult] : fac.factors) {
        if (g.deg() == 1) {
            Rat r = -g.coeff(0) / g.coeff(1);
            real_roots.push_back({alg_from_rat(r), mult});
            continue;
        }
        check(g.deg() <= lim.max_field_degree, ErrorKind::ExtensionTowerLimit,
              "root requires extension beyond the configured degree limit");
        UPoly<Rat> m = monic(g);
        auto ivs = isolate_real_roots(m);
        for (const auto& iv : ivs) {
            RootSelector sel;
            sel.real = true;
            sel.lo = iv.first;
            sel.hi = iv.second;
            auto field = make_number_field(m, sel);
            real_roots.push_back({AlgNum::generator(field), mult});
        }
        int pairs = (m.deg() - static_cast<int>(ivs.size())) / 2;
        for (int k = 0; k < pairs; ++k) {
            for (int sign : {+1, -1}) {
                RootSelector sel;
                sel.real = false;
                sel.conj_index = k;
                sel.conj_sign = sign;
                auto field = make_number_field(m, sel);
                complex_roots.push_back({AlgNum::generator(field), mult});
            }
        }
    }
    // real roots ascending by interval midpoint (rational values exact)
    std::sort(real_roots.begin(), real_roots.end(), [](const AlgRoot& a, const AlgRoot& b) {
        auto key = [](const AlgRoot& r) -> Rat {
            if (alg_is_rational(r.value)) return alg_rational_value(r.value);
            const auto& s = r.value.F->selector;
            return (s.lo + s.hi) / Rat(2);
        };
        return key(a) < key(b);
    });
    // exact ordering needs disjoint intervals between fields; refine while overlapping
    for (size_t i = 0; i + 1 < real_roots.size(); ++i) {
        // best effort: intervals from isolate_real_roots of distinct minimal
        // polynomials can overlap; refine both until disjoint
        auto val_iv = [](const AlgRoot& r) -> std::pair<Rat, Rat> {
            if (alg_is_rational(r.value)) {
                Rat v = alg_rational_value(r.value);
                return {v, v};
            }
            return {r.value.F->selector.lo, r.value.F->selector.hi};
        };
        auto a = val_iv(real_roots[i]);
        auto b = val_iv(real_roots[i + 1]);
        int guard = 0;
        while (!(a.second < b.first || b.second < a.first) && guard++ < 64) {
            if (!alg_is_rational(real_roots[i].value)) {
                auto nf = std::const_pointer_cast<NumberField>(
                    std::static_pointer_cast<const NumberField>(real_roots[i].value.F));
                auto iv = refine_interval(nf->minpoly, {nf->selector.lo, nf->selector.hi},
                                          (a.second - a.first) / Rat(4));
                nf->selector.lo = iv.first;
                nf->selector.hi = iv.second;
                a = iv;
            }
            if (!alg_is_rational(real_roots[i + 1].value)) {
                auto nf = std::const_pointer_cast<NumberField>(
                    std::static_pointer_cast<const NumberField>(real_roots[i + 1].value.F));
                auto iv = refine_interval(nf->minpoly, {nf->selector.lo, nf->selector.hi},
                                          (b.second - b.first) / Rat(4));
                nf->selector.lo = iv.first;
                nf->selector.hi = iv.second;
                b = iv;
            }
            if (a.first == b.first && a.second == b.second) break;  // same root object
        }
        if (b.second < a.first) std::swap(real_roots[i], real_roots[i + 1]);
    }
    std::vector<AlgRoot> out = std::move(real_roots);
    out.insert(out.end(), complex_roots.begin(), complex_roots.end());
    return out;
}

namespace {

// Lift an element's representation to a bivariate polynomial in (u, t)=(var0, var1).
MP lift_coeff(const AlgNum& a) {
    MP r(2);
    if (a.rep.is_zero_poly()) return r;
    for (size_t i = 0; i < a.rep.c.size(); ++i) {
        if (a.rep.c[i].is_zero()) continue;
        Exp e = {static_cast<uint32_t>(i), 0};
        r.t.emplace(std::move(e), a.rep.c[i]);
    }
    return r;
}

MP lift_poly(const UPoly<AlgNum>& f) {
    MP r(2);
    for (size_t j = 0; j < f.c.size(); ++j) {
        MP cj = lift_coeff(f.c[j]);
        if (cj.is_zero_poly()) continue;
        MP tj = MP::var(1, 2, Rat(1)).pow(static_cast<int>(j));
        r = r + cj * tj;
    }
    return r;
}

} // namespace

std::vector<UPoly<AlgNum>> factor_over_field(const UPoly<AlgNum>& f, const NumberFieldPtr& field,
                                             const Limits& lim) {
    invariant(field != nullptr && field->degree() >= 1, "factor_over_field without field");
    UPoly<AlgNum> fm = monic(f);
    invariant(fm.deg() >= 1, "factor_over_field on a constant");
    if (fm.deg() == 1) return {fm};
    // squarefree required
    invariant(upoly_gcd(fm, fm.derivative()).deg() == 0, "factor_over_field needs squarefree input");

    MP p2 = from_upoly(field->minpoly, 0, 2);  // p(u)
    UPoly<Rat> norm;
    long s_used = 0;
    for (long trial = 0; trial <= 40; ++trial) {
        long s = (trial % 2 == 0) ? trial / 2 : -(trial + 1) / 2;
        // f(t - s*alpha)
        UPoly<AlgNum> shift;
        shift.c = {AlgNum::generator(field) * alg_from_rat(Rat(-s)), alg_from_rat(Rat(1))};
        shift.trim();
        UPoly<AlgNum> fs = fm.composed(shift);
        MP ft = lift_poly(fs);
        MP res = mp_resultant(p2, ft, 0);
        UPoly<Rat> N = to_upoly(res, 1);
        if (N.deg() != fm.deg() * field->degree()) continue;  // degenerate
        if (upoly_gcd(N, N.derivative()).deg() == 0) {
            norm = N;
            s_used = s;
            break;
        }
    }
    invariant(!norm.is_zero_poly(), "no squarefree norm found (Trager)");

    UFactorization nf = factor_univariate(norm, lim.factor);
    std::vector<UPoly<AlgNum>> out;
    for (const auto& [G, mult] : nf.factors) {
        invariant(mult == 1, "squarefree norm with repeated factor");
        // gcd(f(t), G(t + s*alpha)) over the field
        UPoly<AlgNum> shift;
        shift.c = {AlgNum::generator(field) * alg_from_rat(Rat(s_used)), alg_from_rat(Rat(1))};
        shift.trim();
        UPoly<AlgNum> Gq;
        for (const auto& c : G.c) Gq.c.push_back(alg_from_rat(c));
        Gq.trim();
        UPoly<AlgNum> Gs = Gq.composed(shift);
        UPoly<AlgNum> g = upoly_gcd(fm, Gs);
        if (g.deg() >= 1) out.push_back(g);
    }
    // sanity: degrees add up
    int total = 0;
    for (const auto& g : out) total += g.deg();
    invariant(total == fm.deg(), "Trager factors do not cover the input");
    std::sort(out.begin(), out.end(), [](const UPoly<AlgNum>& a, const UPoly<AlgNum>& b) {
        return a.deg() < b.deg();
    });
    return out;
}

namespace {

// Pick selectors for the roots of `minpoly` (monic irreducible over Q) that
// are consistent with being gen_image-compatible extensions; best effort,
// used for display/enumeration only.
std::vector<RootSelector> field_selectors(const UPoly<Rat>& minpoly) {
    std::vector<RootSelector> out;
    auto ivs = isolate_real_roots(minpoly);
    for (const auto& iv : ivs) {
        RootSelector s;
        s.real = true;
        s.lo = iv.first;
        s.hi = iv.second;
        out.push_back(s);
    }
    int pairs = (minpoly.deg() - static_cast<int>(ivs.size())) / 2;
    for (int k = 0; k < pairs; ++k)
        for (int sign : {+1, -1}) {
            RootSelector s;
            s.real = false;
            s.conj_index = k;
            s.conj_sign = sign;
            out.push_back(s);
        }
    return out;
}

} // namespace

std::vector<ExtRoot> univariate_roots_ext(const UPoly<AlgNum>& f, const NumberFieldPtr& current,
                                          const Limits& lim) {
    std::vector<ExtRoot> out;
    invariant(!f.is_zero_poly(), "roots of zero polynomial");
    if (current == nullptr) {
        UPoly<Rat> fq;
        for (const auto& c : f.c) {
            invariant(c.is_base(), "non-rational coefficient without a field");
            fq.c.push_back(c.base_value());
        }
        fq.trim();
        for (auto& r : univariate_roots(fq, lim)) {
            ExtRoot e;
            e.value = r.value;
            e.multiplicity = r.multiplicity;
            e.field = r.value.F ? std::static_pointer_cast<const NumberField>(r.value.F) : nullptr;
            e.field_changed = (e.field != nullptr);
            out.push_back(std::move(e));
        }
        return out;
    }

    // squarefree decomposition over the field
    UPoly<AlgNum> fm = monic(f);
    std::vector<std::pair<UPoly<AlgNum>, int>> pieces;
    {
        UPoly<AlgNum> a = fm;
        int mult = 1;
        while (a.deg() >= 1) {
            UPoly<AlgNum> g = upoly_gcd(a, a.derivative());
            UPoly<AlgNum> sf = a / g;
            // sf holds each distinct factor of a once
            pieces.emplace_back(sf, mult);
            a = g;
            ++mult;
            if (g.deg() == 0) break;
        }
        // convert "distinct factors at level >= i" into exact multiplicities
        // pieces[i] / pieces[i+1] are the factors of multiplicity exactly i+1
        std::vector<std::pair<UPoly<AlgNum>, int>> exact;
        for (size_t i = 0; i < pieces.size(); ++i) {
            UPoly<AlgNum> cur = pieces[i].first;
            if (i + 1 < pieces.size()) {
                UPoly<AlgNum> next = pieces[i + 1].first;
                UPoly<AlgNum> g = upoly_gcd(cur, next);
                cur = cur / g;
            }
            if (cur.deg() >= 1) exact.emplace_back(cur, static_cast<int>(i) + 1);
        }
        pieces = std::move(exact);
    }

    for (auto& [piece, mult] : pieces) {
        for (auto& g : factor_over_field(piece, current, lim)) {
            if (g.deg() == 1) {
                ExtRoot e;
                e.field = current;
                e.field_changed = false;
                e.value = -g.coeff(0) / g.coeff(1);
                e.multiplicity = mult;
                out.push_back(std::move(e));
                continue;
            }
            // need a bigger field: redo the norm for this factor to get its
            // primitive element
            long s_used = 0;
            UPoly<Rat> norm;
            for (long trial = 0; trial <= 40; ++trial) {
                long s = (trial % 2 == 0) ? trial / 2 : -(trial + 1) / 2;
                UPoly<AlgNum> shift;
                shift.c = {AlgNum::generator(current) * alg_from_rat(Rat(-s)), alg_from_rat(Rat(1))};
                shift.trim();
                UPoly<AlgNum> gs = g.composed(shift);
                MP gt = lift_poly(gs);
                MP p2 = from_upoly(current->minpoly, 0, 2);
                UPoly<Rat> N = to_upoly(mp_resultant(p2, gt, 0), 1);
                if (N.deg() != g.deg() * current->degree()) continue;
                if (upoly_gcd(N, N.derivative()).deg() == 0) {
                    norm = monic(N);
                    s_used = s;
                    break;
                }
            }
            invariant(!norm.is_zero_poly(), "no squarefree norm for extension");
            // norm is irreducible here (g irreducible over the field)
            check(norm.deg() <= lim.max_field_degree, ErrorKind::ExtensionTowerLimit,
                  "root requires extension beyond the configured degree limit");

            // alpha image in K_gamma: the linear gcd(p(u), g~(u, gamma - s*u)),
            // computed once (it is embedding-independent).
            UPoly<Rat> alpha_img_rep;
            {
                RootSelector tmp_sel;
                auto nf0 = make_number_field(norm, tmp_sel);
                AlgNum gamma = AlgNum::generator(nf0);
                UPoly<AlgNum> pu;
                for (const auto& c : current->minpoly.c) pu.c.push_back(alg_from_rat(c));
                pu.trim();
                MP gl = lift_poly(g);
                auto cs = gl.coeffs_in(1);
                UPoly<AlgNum> tval;  // gamma - s*u as a polynomial in u
                tval.c = {gamma, alg_from_rat(Rat(-s_used))};
                tval.trim();
                UPoly<AlgNum> gu;
                for (size_t i = cs.size(); i-- > 0;) {
                    UPoly<AlgNum> ci;
                    for (const auto& q : to_upoly(cs[i], 0).c) ci.c.push_back(alg_from_rat(q));
                    ci.trim();
                    gu = gu * tval + ci;
                }
                UPoly<AlgNum> h = upoly_gcd(pu, gu);
                invariant(h.deg() == 1, "Trager alpha-recovery gcd not linear");
                alpha_img_rep = (-h.coeff(0) / h.coeff(1)).rep;
            }

            // Keep only the deg(g) embeddings compatible with the current
            // generator's selector: real candidates are filtered exactly by
            // interval refinement; the remainder is filled from conjugate
            // pairs in deterministic order.
            std::vector<RootSelector> sels = field_selectors(norm);
            std::vector<RootSelector> chosen;
            if (current->selector_set && current->selector.real) {
                for (auto& sel : sels) {
                    if (!sel.real) continue;
                    std::pair<Rat, Rat> giv{sel.lo, sel.hi};
                    std::pair<Rat, Rat> aiv{current->selector.lo, current->selector.hi};
                    bool match = false;
                    for (int it = 0; it < 200; ++it) {
                        auto img = interval_eval(alpha_img_rep, giv);
                        if (img.second < aiv.first || aiv.second < img.first) { match = false; break; }
                        if (img.first >= aiv.first && img.second <= aiv.second) { match = true; break; }
                        giv = refine_interval(norm, giv, (giv.second - giv.first) / Rat(4));
                        aiv = refine_interval(current->minpoly, aiv, (aiv.second - aiv.first) / Rat(4));
                    }
                    if (match) {
                        sel.lo = giv.first;
                        sel.hi = giv.second;
                        chosen.push_back(sel);
                    }
                    if (static_cast<int>(chosen.size()) == g.deg()) break;
                }
            }
            for (auto& sel : sels) {
                if (static_cast<int>(chosen.size()) == g.deg()) break;
                if (sel.real) continue;
                chosen.push_back(sel);
            }
            auto same_sel = [](const RootSelector& a, const RootSelector& b) {
                if (a.real != b.real) return false;
                if (a.real) return a.lo == b.lo && a.hi == b.hi;
                return a.conj_index == b.conj_index && a.conj_sign == b.conj_sign;
            };
            for (auto& sel : sels) {
                if (static_cast<int>(chosen.size()) == g.deg()) break;
                bool dup = false;
                for (const auto& c : chosen)
                    if (same_sel(c, sel)) { dup = true; break; }
                if (!dup) chosen.push_back(sel);
            }
            invariant(static_cast<int>(chosen.size()) == g.deg(),
                      "could not assign embeddings to extension roots");
            for (auto& sel : chosen) {
                auto nf = make_number_field(norm, sel);
                AlgNum gamma = AlgNum::generator(nf);
                AlgNum alpha_img{nf, alpha_img_rep};
                ExtRoot e;
                e.field = nf;
                e.field_changed = true;
                e.gen_image = alpha_img_rep;
                e.value = gamma - alg_from_rat(Rat(s_used)) * alpha_img;
                e.multiplicity = mult;
                out.push_back(std::move(e));
            }
        }
    }
    return out;
}

} // namespace aodes
