#include "aodes/chains.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "aodes/factor.hpp"

namespace aodes {

RegularChain RegularChain::wrap(TriangularSystem t) {
    RegularChain c;
    c.pinit = MP::constant(Rat(1), t.nvars);
    for (const auto& p : t.polys) {
        MP init = p.lc_in(p.lead_var());
        c.initials.push_back(init);
        c.pinit = c.pinit * init;
    }
    c.base = std::move(t);
    return c;
}

LeadingData leading_data(const MP& f) {
    check(!f.is_constant(), ErrorKind::ConstantPolynomial, "leading_data of a constant");
    LeadingData d;
    d.lv = f.lead_var();
    d.lc = f.lc_in(d.lv);
    d.init = d.lc;
    return d;
}

MP res_against_chain(const MP& f, const TriangularSystem& T) {
    MP r = f;
    for (size_t j = T.polys.size(); j-- > 0;) {
        const MP& Fj = T.polys[j];
        int v = Fj.lead_var();
        if (r.is_constant()) {
            if (r.is_zero_poly()) return r;
            // Res(const, g) = const^deg(g); keep it simple and exact
            r = r.resized(std::max(r.nvars, Fj.nvars)).pow(Fj.deg(v));
            continue;
        }
        r = mp_resultant(r, Fj, v);
    }
    return r;
}

bool is_regular_chain(const TriangularSystem& T) {
    if (!T.triangular()) return false;
    for (size_t k = 0; k < T.polys.size(); ++k) {
        MP init = T.polys[k].lc_in(T.polys[k].lead_var());
        TriangularSystem below;
        below.nvars = T.nvars;
        below.polys.assign(T.polys.begin(), T.polys.begin() + static_cast<long>(k));
        if (res_against_chain(init, below).is_zero_poly()) return false;
    }
    return true;
}

MP prem_chain(const MP& f, const TriangularSystem& T) {
    MP r = f;
    for (size_t j = T.polys.size(); j-- > 0;) {
        const MP& Fj = T.polys[j];
        if (r.is_zero_poly()) return r;
        if (r.deg(Fj.lead_var()) >= Fj.deg(Fj.lead_var()))
            r = prem(r, Fj, Fj.lead_var());
    }
    return r;
}

int chain_dimension(const RegularChain& chain, int ambient_vars) {
    return ambient_vars - static_cast<int>(chain.base.polys.size());
}

// ---------------------------------------------------------------------------
// Triangularize: Ritt-Wu characteristic-set tree with factor splitting.
// ---------------------------------------------------------------------------

namespace {

std::string node_key(std::vector<MP> eqs) {
    std::sort(eqs.begin(), eqs.end(), MP::lex_before);
    std::ostringstream os;
    for (const auto& p : eqs) {
        for (const auto& [e, c] : p.t) {
            for (uint32_t x : e) os << x << ',';
            os << c.str() << ';';
        }
        os << '|';
    }
    return os.str();
}

// map a polynomial whose present variables are a subset of size <= 2 onto
// (u0,u1), factor it, map back
std::vector<MP> factor_few_vars(const MP& f) {
    std::vector<int> present;
    for (int v = 0; v < f.nvars; ++v)
        if (f.deg(v) > 0) present.push_back(v);
    if (present.empty() || present.size() > 2) return {f};
    MP packed(2);
    for (const auto& [e, c] : f.t) {
        Exp e2(2, 0);
        for (size_t i = 0; i < present.size(); ++i)
            e2[i] = e[static_cast<size_t>(present[i])];
        packed.t.emplace(std::move(e2), c);
    }
    Factorization fac = factor_bivariate(packed);
    std::vector<MP> out;
    for (const auto& [g, mult] : fac.factors) {
        (void)mult;  // multiplicities are irrelevant for the zero set
        MP back(f.nvars);
        for (const auto& [e, c] : g.t) {
            Exp e2(static_cast<size_t>(f.nvars), 0);
            for (size_t i = 0; i < present.size(); ++i)
                e2[static_cast<size_t>(present[i])] = i < e.size() ? e[i] : 0;
            back.t.emplace(std::move(e2), c);
        }
        out.push_back(normalize_primitive(back));
    }
    return out;
}

int rank_lv(const MP& f) { return f.lead_var(); }
int rank_deg(const MP& f) { return f.deg(f.lead_var()); }

bool rank_before(const MP& a, const MP& b) {
    if (rank_lv(a) != rank_lv(b)) return rank_lv(a) < rank_lv(b);
    if (rank_deg(a) != rank_deg(b)) return rank_deg(a) < rank_deg(b);
    return MP::lex_before(a, b);
}

bool reduced_wrt(const MP& f, const MP& b) {
    int v = b.lead_var();
    return f.deg(v) < b.deg(v);
}

struct Worklist {
    std::deque<std::vector<MP>> queue;
    std::set<std::string> seen;
    long nodes = 0;

    void push(std::vector<MP> eqs) {
        std::sort(eqs.begin(), eqs.end(), MP::lex_before);
        eqs.erase(std::unique(eqs.begin(), eqs.end()), eqs.end());
        std::string key = node_key(eqs);
        if (seen.insert(std::move(key)).second) queue.push_back(std::move(eqs));
    }
};

} // namespace

std::vector<RegularChain> triangularize(const std::vector<MP>& system, int nvars,
                                        const TriangularizeOptions& opts, const Limits& lim) {
    invariant(!system.empty(), "triangularize of an empty system");
    (void)lim;
    std::vector<TriangularSystem> found;
    Worklist wl;
    {
        std::vector<MP> eqs;
        for (const auto& p : system) eqs.push_back(normalize_primitive(p.resized(nvars)));
        wl.push(std::move(eqs));
    }

    while (!wl.queue.empty()) {
        invariant(++wl.nodes < 20000, "triangularize node budget exceeded");
        std::vector<MP> eqs = std::move(wl.queue.front());
        wl.queue.pop_front();

        // --- normalization with splitting ---
        bool dead = false, split = false;
        std::vector<MP> norm;
        for (size_t i = 0; i < eqs.size() && !dead && !split; ++i) {
            MP p = normalize_primitive(mp_squarefree_part(eqs[i]));
            if (p.is_zero_poly()) continue;
            if (p.is_constant()) { dead = true; break; }
            int v = p.lead_var();
            MP c = mp_content(p, v);
            if (!c.is_constant()) {
                // V(p) = V(pp) u V(content): two branches
                MP pp = mp_primitive_part(p, v);
                for (const MP& repl : {pp, c}) {
                    std::vector<MP> child = eqs;
                    child[i] = normalize_primitive(repl);
                    wl.push(std::move(child));
                }
                split = true;
                break;
            }
            // factor split for polynomials in at most two variables
            int present = 0;
            for (int vv = 0; vv < p.nvars; ++vv)
                if (p.deg(vv) > 0) ++present;
            if (present <= 2) {
                auto factors = factor_few_vars(p);
                if (factors.size() > 1) {
                    for (const MP& g : factors) {
                        std::vector<MP> child = eqs;
                        child[i] = g;
                        wl.push(std::move(child));
                    }
                    split = true;
                    break;
                }
                p = factors.empty() ? p : factors[0];
            }
            norm.push_back(p);
        }
        if (dead || split) continue;
        if (norm.empty()) {
            // no constraints at all
            TriangularSystem t;
            t.nvars = nvars;
            found.push_back(std::move(t));
            continue;
        }
        std::sort(norm.begin(), norm.end(), MP::lex_before);
        norm.erase(std::unique(norm.begin(), norm.end()), norm.end());
        if (node_key(norm) != node_key(eqs)) {
            wl.push(std::move(norm));
            continue;
        }
        eqs = std::move(norm);

        // --- basic set ---
        std::vector<MP> sorted = eqs;
        std::sort(sorted.begin(), sorted.end(), rank_before);
        std::vector<MP> B;
        for (const auto& f : sorted) {
            if (B.empty()) {
                B.push_back(f);
                continue;
            }
            if (rank_lv(f) <= rank_lv(B.back())) continue;
            bool red = true;
            for (const auto& b : B)
                if (!reduced_wrt(f, b)) { red = false; break; }
            if (red) B.push_back(f);
        }

        // --- pseudo-remainders of the rest ---
        TriangularSystem bt;
        bt.nvars = nvars;
        bt.polys = B;
        std::vector<MP> remainders;
        for (const auto& f : eqs) {
            if (std::find(B.begin(), B.end(), f) != B.end()) continue;
            MP r = prem_chain(f, bt);
            if (!r.is_zero_poly()) remainders.push_back(normalize_primitive(r));
        }
        if (!remainders.empty()) {
            std::vector<MP> child = eqs;
            for (auto& r : remainders) child.push_back(std::move(r));
            wl.push(std::move(child));
            continue;
        }

        // --- B is a characteristic set: branch on initials ---
        for (const auto& b : B) {
            MP init = b.lc_in(b.lead_var());
            if (init.is_constant()) continue;
            std::vector<MP> child = eqs;
            child.push_back(normalize_primitive(init));
            wl.push(std::move(child));
        }

        // --- regularity check / repair of the candidate chain ---
        bool emitted = true;
        for (size_t k = 1; k < B.size() && emitted; ++k) {
            MP g = B[k].lc_in(B[k].lead_var());
            for (size_t j = k; j-- > 0 && emitted;) {
                if (g.is_constant()) break;
                MP gnext = mp_resultant(g, B[j], B[j].lead_var());
                if (!gnext.is_zero_poly()) {
                    g = gnext;
                    continue;
                }
                // split B[j] by its common factor with g
                MP h = mp_gcd(g, B[j]);
                int v = B[j].lead_var();
                invariant(h.deg(v) >= 1, "regularity repair found no common factor");
                auto q = exact_div(B[j], h.resized(B[j].nvars));
                invariant(q.has_value(), "regularity repair division failed");
                invariant(!q->is_constant() || !(*q == MP::constant(q->constant_value(), q->nvars)) ||
                              h != B[j],
                          "regularity repair made no progress");
                check(!q->is_constant(), ErrorKind::Internal,
                      "regularity repair degenerate (initial vanishes on the whole component)");
                for (const MP& repl : {h, *q}) {
                    std::vector<MP> child;
                    for (const auto& p : eqs)
                        child.push_back(p == B[j] ? normalize_primitive(repl) : p);
                    wl.push(std::move(child));
                }
                emitted = false;
            }
        }
        if (!emitted) continue;
        found.push_back(bt);
    }

    // --- deduplicate, check, optionally remove redundant chains ---
    std::sort(found.begin(), found.end(), [](const TriangularSystem& a, const TriangularSystem& b) {
        if (a.polys.size() != b.polys.size()) return a.polys.size() < b.polys.size();
        for (size_t i = 0; i < a.polys.size(); ++i) {
            int la = a.polys[i].lead_var(), lb = b.polys[i].lead_var();
            if (la != lb) return la < lb;
        }
        for (size_t i = 0; i < a.polys.size(); ++i) {
            if (MP::lex_before(a.polys[i], b.polys[i])) return true;
            if (MP::lex_before(b.polys[i], a.polys[i])) return false;
        }
        return false;
    });
    found.erase(std::unique(found.begin(), found.end(),
                            [](const TriangularSystem& a, const TriangularSystem& b) {
                                return a.polys == b.polys;
                            }),
                found.end());

    std::vector<RegularChain> chains;
    for (auto& t : found) chains.push_back(RegularChain::wrap(std::move(t)));

    if (opts.remove_redundant && chains.size() > 1) {
        std::vector<bool> drop(chains.size(), false);
        for (size_t i = 0; i < chains.size(); ++i) {
            for (size_t j = 0; j < chains.size() && !drop[i]; ++j) {
                if (i == j || drop[j]) continue;
                if (chains[j].base.polys.size() > chains[i].base.polys.size()) continue;
                // quasi-component of i contained in j's?
                bool contained = true;
                for (const auto& d : chains[j].base.polys)
                    if (!prem_chain(d, chains[i].base).is_zero_poly()) { contained = false; break; }
                if (!contained) continue;
                if (res_against_chain(chains[j].pinit, chains[i].base).is_zero_poly()) continue;
                drop[i] = true;
            }
        }
        std::vector<RegularChain> kept;
        for (size_t i = 0; i < chains.size(); ++i)
            if (!drop[i]) kept.push_back(std::move(chains[i]));
        chains = std::move(kept);
    }
    return chains;
}

// ---------------------------------------------------------------------------
// Zero-dimensional enumeration.
// ---------------------------------------------------------------------------

namespace {

AlgNum eval_mp_at(const MP& f, const std::vector<AlgNum>& coords) {
    AlgNum acc;
    for (const auto& [e, c] : f.t) {
        AlgNum term = alg_from_rat(c);
        for (size_t v = 0; v < e.size(); ++v) {
            invariant(e[v] == 0 || v < coords.size(), "eval_mp_at missing coordinate");
            for (uint32_t i = 0; i < e[v]; ++i) term = term * coords[v];
        }
        acc = acc + term;
    }
    return acc;
}

UPoly<AlgNum> specialize_to_upoly(const MP& f, const std::vector<AlgNum>& coords, int var) {
    auto cs = f.coeffs_in(var);
    UPoly<AlgNum> r;
    for (const auto& c : cs) r.c.push_back(eval_mp_at(c, coords));
    r.trim();
    return r;
}

void enum_rec(const TriangularSystem& T, size_t idx, NumberFieldPtr field,
              std::vector<AlgNum> coords, const Limits& lim, std::vector<AlgPoint>& out) {
    if (idx == T.polys.size()) {
        out.push_back({field, std::move(coords)});
        return;
    }
    const MP& p = T.polys[idx];
    int v = p.lead_var();
    invariant(static_cast<int>(coords.size()) == v, "chain does not determine all variables");
    UPoly<AlgNum> up = specialize_to_upoly(p, coords, v);
    invariant(up.deg() >= 1, "chain polynomial degenerates under substitution");
    for (auto& root : univariate_roots_ext(up, field, lim)) {
        std::vector<AlgNum> c2 = coords;
        NumberFieldPtr f2 = field;
        if (root.field_changed) {
            f2 = root.field;
            for (auto& x : c2) x = alg_embed(x, f2, root.gen_image);
        }
        c2.push_back(root.value);
        enum_rec(T, idx + 1, f2, std::move(c2), lim, out);
    }
}

} // namespace

std::vector<AlgPoint> enumerate_chain_points(const RegularChain& chain, const Limits& lim) {
    std::vector<AlgPoint> pts;
    enum_rec(chain.base, 0, nullptr, {}, lim, pts);
    // drop points where some initial vanishes (outside the quasi-component)
    std::vector<AlgPoint> kept;
    for (auto& p : pts) {
        bool ok = true;
        for (const auto& init : chain.initials)
            if (is_zero(eval_mp_at(init, p.coords))) { ok = false; break; }
        if (ok) kept.push_back(std::move(p));
    }
    return kept;
}

namespace {

void brute_rec(const std::vector<MP>& system, int nvars, int var, NumberFieldPtr field,
               std::vector<AlgNum> coords, const Limits& lim, std::vector<AlgPoint>& out) {
    if (var == nvars) {
        for (const auto& f : system) {
            std::vector<AlgNum> full = coords;
            if (!is_zero(eval_mp_at(f, full))) return;
        }
        out.push_back({field, std::move(coords)});
        return;
    }
    // project everything above `var` away by iterated pairwise resultants
    std::vector<MP> work = system;
    for (int v = nvars - 1; v > var; --v) {
        std::vector<MP> with_v, without_v;
        for (const auto& f : work)
            (f.deg(v) >= 1 ? with_v : without_v).push_back(f);
        std::vector<MP> next = without_v;
        for (size_t i = 0; i < with_v.size(); ++i)
            for (size_t j = i + 1; j < with_v.size(); ++j) {
                MP r = mp_resultant(with_v[i], with_v[j], v);
                if (!r.is_zero_poly()) next.push_back(normalize_primitive(r));
            }
        work = std::move(next);
    }
    // candidates for u_var: roots of the gcd of all polynomials that survive
    UPoly<AlgNum> acc;
    bool have = false;
    for (const auto& f : work) {
        if (f.deg(var) < 1) continue;
        UPoly<AlgNum> up = specialize_to_upoly(f, coords, var);
        if (up.is_zero_poly()) continue;
        if (up.deg() == 0) return;  // inconsistent constant
        if (!have) {
            acc = up;
            have = true;
        } else {
            acc = upoly_gcd(acc, up);
            if (acc.deg() == 0) return;  // coprime constraints: no common root
        }
    }
    invariant(have, "brute force: variable unconstrained (system not zero-dimensional)");
    for (auto& root : univariate_roots_ext(acc, field, lim)) {
        std::vector<AlgNum> c2 = coords;
        NumberFieldPtr f2 = field;
        if (root.field_changed) {
            f2 = root.field;
            for (auto& x : c2) x = alg_embed(x, f2, root.gen_image);
        }
        c2.push_back(root.value);
        brute_rec(system, nvars, var + 1, f2, std::move(c2), lim, out);
    }
}

} // namespace

std::vector<AlgPoint> brute_force_points(const std::vector<MP>& system, int nvars,
                                         const Limits& lim) {
    std::vector<AlgPoint> out;
    std::vector<MP> sys;
    for (const auto& f : system)
        if (!f.is_zero_poly()) sys.push_back(f.resized(nvars));
    brute_rec(sys, nvars, 0, nullptr, {}, lim, out);
    return out;
}

namespace {

UPoly<Rat> minpoly_of(const AlgNum& x) {
    if (alg_is_rational(x)) {
        return UPoly<Rat>({-alg_rational_value(x), Rat(1)});
    }
    auto field = x.F;
    // charpoly N(T) = Res_u(minpoly(u), T - rep(u)), then pick the irreducible
    // factor vanishing at x
    MP p2 = from_upoly(field->minpoly, 0, 2);
    MP tm = MP::var(1, 2, Rat(1)) - from_upoly(x.rep, 0, 2);
    UPoly<Rat> N = to_upoly(mp_resultant(p2, tm, 0), 1);
    UFactorization fac = factor_univariate(N);
    for (const auto& [g, m] : fac.factors) {
        (void)m;
        AlgNum val = g.eval_in(x, [&](const Rat& q) { return inject_rat(x, q); });
        if (is_zero(val)) return monic(g);
    }
    fail(ErrorKind::Internal, "minimal polynomial not found");
}

} // namespace

UPoly<Rat> point_set_signature(const std::vector<AlgPoint>& pts, const std::vector<Rat>& lambda) {
    std::vector<UPoly<Rat>> minpolys;
    for (const auto& p : pts) {
        AlgNum v;
        for (size_t i = 0; i < p.coords.size() && i < lambda.size(); ++i)
            v = v + p.coords[i] * alg_from_rat(lambda[i]);
        if (p.coords.empty()) v = alg_from_rat(Rat(0));
        UPoly<Rat> m = minpoly_of(v);
        bool dup = false;
        for (const auto& q : minpolys)
            if (q == m) { dup = true; break; }
        if (!dup) minpolys.push_back(std::move(m));
    }
    UPoly<Rat> prod = UPoly<Rat>::constant(Rat(1));
    std::sort(minpolys.begin(), minpolys.end(), [](const UPoly<Rat>& a, const UPoly<Rat>& b) {
        if (a.deg() != b.deg()) return a.deg() < b.deg();
        for (int i = a.deg(); i >= 0; --i)
            if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
        return false;
    });
    for (const auto& m : minpolys) prod = prod * m;
    return prod;
}

} // namespace aodes
