#include "aodes/puiseux.hpp"

#include <algorithm>

#include "aodes/factor.hpp"

namespace aodes {
namespace {

// engine variables: 0 = x, 1 = z, 2 = w (w = dz/dx in the current x)

MPA embed_mpa(const MPA& f, const NumberFieldPtr& field, const UPoly<Rat>& gen_image) {
    MPA r(f.nvars);
    for (const auto& [e, c] : f.t) r.t.emplace(e, alg_embed(c, field, gen_image));
    return r;
}

// Strip the x-content (divide by the largest common power of x).
MPA strip_x_content(const MPA& E) {
    if (E.t.empty()) return E;
    uint32_t minx = UINT32_MAX;
    for (const auto& [e, c] : E.t) minx = std::min(minx, e.empty() ? 0u : e[0]);
    if (minx == 0) return E;
    MPA r(E.nvars);
    for (const auto& [e, c] : E.t) {
        Exp e2 = e;
        e2[0] -= minx;
        r.t.emplace(std::move(e2), c);
    }
    return r;
}

bool has_pure_x_terms(const MPA& E) {
    for (const auto& [e, c] : E.t)
        if ((e.size() < 2 || e[1] == 0) && (e.size() < 3 || e[2] == 0)) return true;
    return false;
}

// x -> x^q, w = dz/dx transforms to w/(q x^(q-1)); clear denominators.
MPA ramify(const MPA& E, long q) {
    int J = E.deg(2);
    MPA r(E.nvars);
    for (const auto& [e, c] : E.t) {
        uint32_t k = e.empty() ? 0 : e[0];
        uint32_t i = e.size() > 1 ? e[1] : 0;
        uint32_t j = e.size() > 2 ? e[2] : 0;
        Exp e2 = {static_cast<uint32_t>(k * q + (q - 1) * (J - static_cast<int>(j))), i, j};
        Rat scale = rat_pow(Rat(q), J - static_cast<long>(j));
        r.add_term(std::move(e2), c * inject_rat(c, scale));
    }
    return r;
}

// z -> x^p (c + z1), w -> p x^(p-1) (c + z1) + x^p w1.
MPA substitute_step(const MPA& E, long p, const AlgNum& c) {
    int n = 3;
    AlgNum one = one_like(c);
    MPA x = MPA::var(0, n, one);
    MPA z1 = MPA::var(1, n, one);
    MPA w1 = MPA::var(2, n, one);
    MPA cz = MPA::constant(c, n) + z1;
    MPA Z = x.pow(static_cast<int>(p)) * cz;
    MPA W = x.pow(static_cast<int>(p - 1)).scaled(inject_rat(c, Rat(p))) * cz +
            x.pow(static_cast<int>(p)) * w1;
    std::vector<MPA> zpow = {MPA::constant(one, n)};
    std::vector<MPA> wpow = {MPA::constant(one, n)};
    auto getp = [&](std::vector<MPA>& v, const MPA& base, int k) -> const MPA& {
        while (static_cast<int>(v.size()) <= k) v.push_back(v.back() * base);
        return v[static_cast<size_t>(k)];
    };
    MPA r(n);
    for (const auto& [e, coef] : E.t) {
        uint32_t k = e.empty() ? 0 : e[0];
        uint32_t i = e.size() > 1 ? e[1] : 0;
        uint32_t j = e.size() > 2 ? e[2] : 0;
        MPA term = MPA::constant(coef, n);
        if (k) term = term * x.pow(static_cast<int>(k));
        if (i) term = term * getp(zpow, Z, static_cast<int>(i));
        if (j) term = term * getp(wpow, W, static_cast<int>(j));
        r = r + term;
    }
    return strip_x_content(r);
}

struct PolyCand {
    Rat mu;
    Rat minval;
    std::vector<std::tuple<uint32_t, uint32_t, uint32_t, AlgNum>> edge;  // (k,i,j,a)
};

std::vector<PolyCand> polygon(const MPA& E) {
    std::vector<PolyCand> out;
    if (E.t.empty()) return out;
    // candidate mu values from pairs of support points (s, t) = (i+j, k-j)
    struct Pt {
        long s;
        Rat t;
    };
    std::vector<Pt> pts;
    for (const auto& [e, c] : E.t) {
        long k = e.empty() ? 0 : e[0];
        long i = e.size() > 1 ? e[1] : 0;
        long j = e.size() > 2 ? e[2] : 0;
        pts.push_back({i + j, Rat(k - j)});
    }
    std::vector<Rat> cands;
    for (size_t a = 0; a < pts.size(); ++a)
        for (size_t b = a + 1; b < pts.size(); ++b) {
            if (pts[a].s == pts[b].s) continue;
            Rat mu = (pts[a].t - pts[b].t) / (Rat(pts[b].s) - Rat(pts[a].s));
            if (mu > Rat(0)) cands.push_back(mu);
        }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    for (const Rat& mu : cands) {
        Rat minval;
        bool first = true;
        for (const auto& [e, c] : E.t) {
            long k = e.empty() ? 0 : e[0];
            long i = e.size() > 1 ? e[1] : 0;
            long j = e.size() > 2 ? e[2] : 0;
            Rat v = Rat(k) + (Rat(i) + Rat(j)) * mu - Rat(j);
            if (first || v < minval) { minval = v; first = false; }
        }
        PolyCand pc;
        pc.mu = mu;
        pc.minval = minval;
        long smin = -1, smax = -1;
        for (const auto& [e, c] : E.t) {
            long k = e.empty() ? 0 : e[0];
            long i = e.size() > 1 ? e[1] : 0;
            long j = e.size() > 2 ? e[2] : 0;
            Rat v = Rat(k) + (Rat(i) + Rat(j)) * mu - Rat(j);
            if (v == minval) {
                pc.edge.emplace_back(static_cast<uint32_t>(k), static_cast<uint32_t>(i),
                                     static_cast<uint32_t>(j), c);
                long s = i + j;
                if (smin < 0 || s < smin) smin = s;
                if (s > smax) smax = s;
            }
        }
        if (smin != smax) out.push_back(std::move(pc));  // needs >= 2 support weights
    }
    return out;
}

UPoly<AlgNum> char_poly_of_edge(const PolyCand& pc) {
    UPoly<AlgNum> phi;
    for (const auto& [k, i, j, a] : pc.edge) {
        (void)k;
        int s = static_cast<int>(i + j);
        if (phi.c.size() <= static_cast<size_t>(s)) phi.c.resize(static_cast<size_t>(s) + 1, AlgNum{});
        AlgNum add = a * inject_rat(a, rat_pow(pc.mu, static_cast<long>(j)));
        phi.c[static_cast<size_t>(s)] = phi.c[static_cast<size_t>(s)] + add;
    }
    phi.trim();
    return phi;
}

// Indicial pair L(nu) = A + B*nu from the edge data, with c substituted.
std::pair<AlgNum, AlgNum> indicial_from_edge(const PolyCand& pc, const AlgNum& c) {
    AlgNum A = zero_like(c), B = zero_like(c);
    for (const auto& [k, i, j, a0] : pc.edge) {
        (void)k;
        AlgNum a{c.F, a0.rep};  // same-field view (coefficients already embedded)
        long s = static_cast<long>(i) + static_cast<long>(j) - 1;
        if (s < 0) continue;
        AlgNum cpow = one_like(c);
        for (long t = 0; t < s; ++t) cpow = cpow * c;
        if (i > 0) {
            A = A + a * cpow * inject_rat(c, Rat(static_cast<long>(i)) * rat_pow(pc.mu, static_cast<long>(j)));
        }
        if (j > 0) {
            B = B + a * cpow * inject_rat(c, Rat(static_cast<long>(j)) * rat_pow(pc.mu, static_cast<long>(j) - 1));
        }
    }
    return {A, B};
}

std::optional<Rat> rational_root_of_indicial(const std::pair<AlgNum, AlgNum>& ab) {
    const auto& [A, B] = ab;
    if (is_zero(B)) return std::nullopt;
    AlgNum r = -(A / B);
    if (!r.is_base()) return std::nullopt;
    return r.base_value();
}

struct LocalBranch {
    NumberFieldPtr field;
    std::vector<std::pair<Rat, AlgNum>> terms;  // global exponents, ascending
    bool exact = false;
    bool unique = false;
    bool depth_capped = false;
    std::optional<Rat> indicial_root;  // global scale
    // parametric continuation (one free constant)
    bool has_param = false;
    std::vector<std::pair<Rat, ParamVal>> param_terms;
};

struct LocalState {
    MPA E;
    NumberFieldPtr field;
    long ram = 1;
    Rat exp_base;
    std::vector<std::pair<Rat, AlgNum>> terms;
    int depth = 0;
    std::optional<Rat> last_indicial_root;  // global scale
};

template <class K, class Inj>
PSeries<K> eval_local(const MPA& E, const PSeries<K>& z, const std::optional<Rat>& prec, Inj inj,
                      const K& one) {
    PSeries<K> w = z.derivative();
    std::vector<PSeries<K>> zpow = {PSeries<K>::monomial_exact(Rat(0), one)};
    std::vector<PSeries<K>> wpow = {PSeries<K>::monomial_exact(Rat(0), one)};
    auto getp = [&](std::vector<PSeries<K>>& v, const PSeries<K>& base, uint32_t k) {
        while (v.size() <= k) {
            PSeries<K> nx = v.back() * base;
            if (prec) nx = nx.truncated(*prec);
            v.push_back(std::move(nx));
        }
        return v[k];
    };
    PSeries<K> acc = PSeries<K>::exact_zero();
    for (const auto& [e, c] : E.t) {
        uint32_t k = e.empty() ? 0 : e[0];
        uint32_t i = e.size() > 1 ? e[1] : 0;
        uint32_t j = e.size() > 2 ? e[2] : 0;
        PSeries<K> term = PSeries<K>::monomial_exact(Rat(static_cast<long>(k)), inj(c));
        if (i) term = term * getp(zpow, z, i);
        if (j) term = term * getp(wpow, w, j);
        if (prec) term = term.truncated(*prec);
        acc = acc + term;
    }
    return acc;
}

struct LinearData {
    UPoly<AlgNum> sigma_z, sigma_w;
    Rat V0;
    AlgNum A, B;  // L(nu) = A + B nu, nu in current scale
    std::optional<Rat> nu_root;
    bool usable = false;
};

LinearData extract_linear(const MPA& E, const NumberFieldPtr& field) {
    LinearData d;
    AlgNum zero;
    if (field) zero = zero_like(AlgNum::generator(field));
    for (const auto& [e, c] : E.t) {
        uint32_t k = e.empty() ? 0 : e[0];
        uint32_t i = e.size() > 1 ? e[1] : 0;
        uint32_t j = e.size() > 2 ? e[2] : 0;
        if (i == 1 && j == 0) {
            if (d.sigma_z.c.size() <= k) d.sigma_z.c.resize(k + 1, zero);
            d.sigma_z.c[k] = d.sigma_z.c[k] + c;
        } else if (i == 0 && j == 1) {
            if (d.sigma_w.c.size() <= k) d.sigma_w.c.resize(k + 1, zero);
            d.sigma_w.c[k] = d.sigma_w.c[k] + c;
        }
    }
    d.sigma_z.trim();
    d.sigma_w.trim();
    if (d.sigma_z.is_zero_poly() && d.sigma_w.is_zero_poly()) return d;
    auto val_of = [](const UPoly<AlgNum>& f) -> std::optional<long> {
        for (size_t k = 0; k < f.c.size(); ++k)
            if (!is_zero(f.c[k])) return static_cast<long>(k);
        return std::nullopt;
    };
    auto vz = val_of(d.sigma_z);
    auto vw = val_of(d.sigma_w);
    long V0;
    if (vz && vw) V0 = std::min(*vz, *vw - 1);
    else if (vz) V0 = *vz;
    else V0 = *vw - 1;
    d.V0 = Rat(V0);
    d.A = (vz && *vz == V0) ? d.sigma_z.c[static_cast<size_t>(V0)] : zero;
    d.B = (vw && *vw - 1 <= V0 && static_cast<size_t>(V0 + 1) < d.sigma_w.c.size())
              ? d.sigma_w.c[static_cast<size_t>(V0 + 1)]
              : zero;
    if (is_zero(d.A) && is_zero(d.B)) return d;
    d.usable = true;
    d.nu_root = rational_root_of_indicial({d.A, d.B});
    return d;
}

enum class ContOutcome { Done, Dead, FreeSlot };

template <class K, class Inj>
struct ContResult {
    ContOutcome outcome = ContOutcome::Dead;
    PSeries<K> partial;
    bool exact = false;
    Rat free_nu;  // current-scale exponent of the free coefficient
};

template <class K, class Inj>
ContResult<K, Inj> continue_linear(const MPA& E, const LinearData& lin, const Rat& T_cur,
                                   PSeries<K> partial, Inj inj, const K& one,
                                   bool detect_free_slot) {
    ContResult<K, Inj> res;
    K A = inj(lin.A), B = inj(lin.B);
    Rat prec_bound = T_cur + lin.V0 + Rat(1);
    Rat last_e(-1);
    for (int guard = 0; guard < 4096; ++guard) {
        PSeries<K> R = eval_local(E, partial, prec_bound, inj, one);
        std::optional<Rat> e;
        for (const auto& [ex, c] : R.terms) {
            if (ex <= T_cur + lin.V0) { e = ex; break; }
        }
        if (!e) {
            // residual clean below the bound; is a free slot still ahead?
            if (detect_free_slot && lin.nu_root && *lin.nu_root > Rat(0) && *lin.nu_root <= T_cur) {
                // residual at the resonant slot is zero: the coefficient there
                // is free
                bool already = false;
                for (const auto& [ex, c] : partial.terms)
                    if (ex == *lin.nu_root) already = true;
                if (!already) {
                    res.outcome = ContOutcome::FreeSlot;
                    res.free_nu = *lin.nu_root;
                    res.partial = std::move(partial);
                    return res;
                }
            }
            // exactness: re-evaluate without truncation
            PSeries<K> full = eval_local(E, partial, std::nullopt, inj, one);
            res.exact = full.terms.empty() && full.exact;
            res.outcome = ContOutcome::Done;
            res.partial = std::move(partial);
            return res;
        }
        invariant(*e > last_e, "linear continuation residual stalled");
        last_e = *e;
        Rat nu = *e - lin.V0;
        if (!(nu > Rat(0))) {
            res.outcome = ContOutcome::Dead;
            return res;
        }
        // resonance strictly before this residual exponent => free slot there
        if (detect_free_slot && lin.nu_root && *lin.nu_root > Rat(0) && *lin.nu_root < nu) {
            bool already = false;
            for (const auto& [ex, c] : partial.terms)
                if (ex == *lin.nu_root) already = true;
            if (!already) {
                res.outcome = ContOutcome::FreeSlot;
                res.free_nu = *lin.nu_root;
                res.partial = std::move(partial);
                return res;
            }
        }
        K L = A + B * inj(alg_from_rat(nu));
        if (is_zero(L)) {
            res.outcome = ContOutcome::Dead;  // obstructed resonance
            return res;
        }
        K coeff = -(R.terms.begin()->second) / L;
        // find the residual coefficient exactly at *e
        for (const auto& [ex, c] : R.terms)
            if (ex == *e) { coeff = -(c / L); break; }
        partial.add_term(nu, coeff);
        partial.exact = true;  // partial sums are exact polynomials
    }
    fail(ErrorKind::Internal, "linear continuation did not terminate");
}

struct EngineCtx {
    Rat target;  // inclusive global exponent bound
    const Limits* lim;
    std::vector<LocalBranch>* out;
    bool allow_param = true;
    size_t preload = 0;  // number of pre-seeded terms (constant y0)
    std::string param_name = "c1";
};

void emit_branch(const LocalState& st, EngineCtx& ctx, bool exact, bool unique, bool capped) {
    LocalBranch b;
    b.field = st.field;
    b.terms = st.terms;
    b.exact = exact;
    b.unique = unique;
    b.depth_capped = capped;
    b.indicial_root = st.last_indicial_root;
    ctx.out->push_back(std::move(b));
}

void solve_local(LocalState st, EngineCtx& ctx);

// Handles one (mu, c) step with a simple root: substitute and continue by the
// linear recursion, branching into a parametric continuation on a free slot.
void simple_root_continue(LocalState st, EngineCtx& ctx) {
    LinearData lin = extract_linear(st.E, st.field);
    if (!lin.usable) {
        // no usable linear part: fall back to the polygon recursion
        ++st.depth;
        solve_local(std::move(st), ctx);
        return;
    }
    std::optional<Rat> root_global;
    if (lin.nu_root) root_global = st.exp_base + *lin.nu_root / Rat(st.ram);
    st.last_indicial_root = root_global;

    Rat T_cur = (ctx.target - st.exp_base) * Rat(st.ram);
    AlgNum one = st.field ? one_like(AlgNum::generator(st.field)) : alg_from_rat(Rat(1));
    auto inj_id = [](const AlgNum& a) { return a; };
    auto r = continue_linear<AlgNum>(st.E, lin, T_cur, PSeries<AlgNum>::exact_zero(), inj_id, one,
                                     true);
    if (r.outcome == ContOutcome::Dead) return;
    if (r.outcome == ContOutcome::FreeSlot) {
        if (ctx.allow_param) {
            // lift to rational functions in one parameter and continue
            ParamVal pone = ParamVal::from_const(one);
            auto inj_p = [&](const AlgNum& a) { return ParamVal::from_const(a); };
            PSeries<ParamVal> partial = PSeries<ParamVal>::exact_zero();
            partial.exact = true;
            for (const auto& [e, c] : r.partial.terms) partial.add_term(e, inj_p(c));
            partial.add_term(r.free_nu, ParamVal::generator(one));
            auto rp = continue_linear<ParamVal>(st.E, lin, T_cur, std::move(partial), inj_p, pone,
                                                false);
            if (rp.outcome == ContOutcome::Dead) return;
            LocalBranch b;
            b.field = st.field;
            b.terms = st.terms;
            b.exact = rp.exact;
            b.unique = true;  // the one resonance is carried as the parameter
            b.indicial_root = root_global;
            b.has_param = true;
            for (const auto& [e, c] : rp.partial.terms)
                b.param_terms.emplace_back(st.exp_base + e / Rat(st.ram), c);
            ctx.out->push_back(std::move(b));
            return;
        }
        // cannot introduce a second parameter: stop at the slot
        LocalState stop = st;
        for (const auto& [e, c] : r.partial.terms) {
            Rat ge = st.exp_base + e / Rat(st.ram);
            if (ge < *root_global) stop.terms.emplace_back(ge, c);
        }
        emit_branch(stop, ctx, false, false, false);
        return;
    }
    LocalState done = st;
    for (const auto& [e, c] : r.partial.terms)
        done.terms.emplace_back(st.exp_base + e / Rat(st.ram), c);
    bool unique = !(root_global && *root_global > ctx.target);
    emit_branch(done, ctx, r.exact, unique, false);
}

void solve_local(LocalState st, EngineCtx& ctx) {
    st.E = strip_x_content(st.E);
    bool tail_zero = !has_pure_x_terms(st.E);
    auto cands = polygon(st.E);
    const bool have_terms = st.terms.size() > ctx.preload;

    if (tail_zero && have_terms) {
        bool unique = cands.empty() &&
                      !(st.last_indicial_root && *st.last_indicial_root > st.terms.back().first);
        emit_branch(st, ctx, true, unique, false);
    }
    if (cands.empty()) return;

    // a candidate whose next exponent lies beyond the target: the prefix is
    // all we can certify for that branch
    bool far_candidate = false;
    std::vector<PolyCand> near;
    for (auto& pc : cands) {
        Rat ge = st.exp_base + pc.mu / Rat(st.ram);
        if (ge > ctx.target) far_candidate = true;
        else near.push_back(std::move(pc));
    }
    if (far_candidate && !tail_zero && have_terms) emit_branch(st, ctx, false, false, false);

    for (const auto& pc : near) {
        UPoly<AlgNum> phi = char_poly_of_edge(pc);
        // strip zero roots
        size_t shift = 0;
        while (shift < phi.c.size() && is_zero(phi.c[shift])) ++shift;
        if (shift) phi.c.erase(phi.c.begin(), phi.c.begin() + static_cast<long>(shift));
        phi.trim();
        if (phi.deg() < 1) continue;
        std::vector<ExtRoot> roots = univariate_roots_ext(phi, st.field, *ctx.lim);
        for (auto& root : roots) {
            if (is_zero(root.value)) continue;
            LocalState child = st;
            if (root.field_changed) {
                child.field = root.field;
                child.E = embed_mpa(child.E, root.field, root.gen_image);
                for (auto& [e, c] : child.terms) c = alg_embed(c, root.field, root.gen_image);
            }
            // ramify to make mu integral
            long q = static_cast<long>(pc.mu.den().get_si());
            long p = static_cast<long>(pc.mu.num().get_si()) ;
            if (q > 1) {
                child.E = ramify(child.E, q);
                child.ram *= q;
            }
            // mu = p/q in the pre-ramification scale -> exponent p in the new
            child.E = substitute_step(child.E, p, root.value);
            Rat ge = st.exp_base + pc.mu / Rat(st.ram);
            child.terms.emplace_back(ge, root.value);
            child.exp_base = ge;
            if (root.multiplicity == 1) {
                auto ab = indicial_from_edge(pc, root.value);
                child.last_indicial_root = rational_root_of_indicial(ab);
                if (child.last_indicial_root)
                    child.last_indicial_root =
                        st.exp_base + *child.last_indicial_root / Rat(st.ram);
                simple_root_continue(std::move(child), ctx);
            } else {
                if (child.depth + 1 >= ctx.lim->newton_depth) {
                    emit_branch(child, ctx, false, false, true);
                    continue;
                }
                ++child.depth;
                solve_local(std::move(child), ctx);
            }
        }
    }
}

std::vector<LocalBranch> run_local(const MPA& E, const NumberFieldPtr& field, const Rat& target,
                                   const Limits& lim, bool allow_param,
                                   std::vector<std::pair<Rat, AlgNum>> preload_terms = {}) {
    std::vector<LocalBranch> out;
    EngineCtx ctx;
    ctx.target = target;
    ctx.lim = &lim;
    ctx.out = &out;
    ctx.allow_param = allow_param;
    ctx.preload = preload_terms.size();
    LocalState st;
    st.E = E;
    st.field = field;
    st.terms = std::move(preload_terms);
    solve_local(std::move(st), ctx);
    // deterministic order: by first-term exponent, then coefficient shape
    std::stable_sort(out.begin(), out.end(), [](const LocalBranch& a, const LocalBranch& b) {
        if (a.terms.empty() || b.terms.empty()) return a.terms.size() < b.terms.size();
        if (a.terms[0].first != b.terms[0].first) return a.terms[0].first < b.terms[0].first;
        return false;
    });
    return out;
}

long lcm_denominators(const std::vector<std::pair<Rat, AlgNum>>& terms) {
    Int l(1);
    for (const auto& [e, c] : terms) l = int_lcm(l, e.den());
    return static_cast<long>(l.get_si());
}

Coeff demote(const AlgNum& a) {
    if (a.is_base()) return a.base_value();
    return a;
}

std::string field_note_for(const NumberFieldPtr& f);

PuiseuxTruncation branch_to_truncation(const LocalBranch& b, const Rat& order,
                                       const std::string& param_name) {
    PuiseuxTruncation t;
    t.truncation_order = order;
    t.exact = b.exact;
    t.unique_extension = b.unique;
    t.indicial_root = b.indicial_root;
    for (const auto& [e, c] : b.terms)
        if (!is_zero(c)) t.terms.emplace_back(e, demote(c));
    if (b.has_param) {
        t.param_name = param_name;
        for (const auto& [e, c] : b.param_terms)
            if (!is_zero(c)) t.terms.emplace_back(e, Coeff(c));
    }
    std::sort(t.terms.begin(), t.terms.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    Int l(1);
    for (const auto& [e, c] : t.terms) l = int_lcm(l, e.den());
    t.ramification = static_cast<long>(l.get_si());
    t.field_note = field_note_for(b.field);
    return t;
}

std::string field_note_for(const NumberFieldPtr& f) {
    if (!f) return "";
    std::string s = f->gen_name + ": root of ";
    // minimal polynomial rendered in t
    const UPoly<Rat>& m = f->minpoly;
    bool firstterm = true;
    for (int i = m.deg(); i >= 0; --i) {
        Rat c = m.coeff(i);
        if (c.is_zero()) continue;
        std::string piece;
        if (i == 0) piece = c.str();
        else {
            std::string xs = i == 1 ? "t" : ("t^" + std::to_string(i));
            piece = (c.is_one() ? xs : (c == Rat(-1) ? "-" + xs : c.str() + "*" + xs));
        }
        if (!firstterm && piece[0] != '-') s += "+";
        s += piece;
        firstterm = false;
    }
    if (f->selector_set) {
        if (f->selector.real)
            s += ", interval [" + f->selector.lo.str() + ", " + f->selector.hi.str() + "]";
        else
            s += ", conjugate pair " + std::to_string(f->selector.conj_index) +
                 (f->selector.conj_sign > 0 ? " (+)" : " (-)");
    }
    return s;
}

} // namespace

std::vector<NewtonStep> newton_step(const MPA& Htilde, const NumberFieldPtr& field,
                                    const Limits& lim) {
    std::vector<NewtonStep> out;
    MPA E = Htilde.nvars == 3 ? Htilde : Htilde.resized(3);
    for (const auto& pc : polygon(E)) {
        NewtonStep ns;
        ns.mu = pc.mu;
        ns.char_poly = char_poly_of_edge(pc);
        UPoly<AlgNum> phi = ns.char_poly;
        size_t shift = 0;
        while (shift < phi.c.size() && is_zero(phi.c[shift])) ++shift;
        if (shift) phi.c.erase(phi.c.begin(), phi.c.begin() + static_cast<long>(shift));
        phi.trim();
        if (phi.deg() < 1) continue;
        for (auto& root : univariate_roots_ext(phi, field, lim)) {
            if (is_zero(root.value)) continue;
            NewtonRootInfo info;
            info.root = root;
            if (root.multiplicity == 1) {
                // embed the edge coefficients if the root needed an extension
                PolyCand pce = pc;
                if (root.field_changed)
                    for (auto& [k, i, j, a] : pce.edge) a = alg_embed(a, root.field, root.gen_image);
                info.indicial = indicial_from_edge(pce, root.value);
                info.indicial_root = rational_root_of_indicial(*info.indicial);
            }
            ns.roots.push_back(std::move(info));
        }
        out.push_back(std::move(ns));
    }
    std::sort(out.begin(), out.end(),
              [](const NewtonStep& a, const NewtonStep& b) { return a.mu < b.mu; });
    return out;
}

std::vector<NewtonStep> newton_step(const MP& Htilde, const Limits& lim) {
    // input uses u0 = z, u1 = w; engine uses vars (x, z, w)
    MPA E(3);
    for (const auto& [e, c] : Htilde.t) {
        Exp e2 = {0, e.empty() ? 0 : e[0], e.size() > 1 ? e[1] : 0};
        E.t.emplace(std::move(e2), alg_from_rat(c));
    }
    return newton_step(E, nullptr, lim);
}

namespace {

// H(y0 + z, w) as a local engine equation over the field of y0.
MPA shifted_equation(const MP& H, const AlgNum& y0) {
    AlgNum one = one_like(y0);
    MPA z = MPA::var(1, 3, one);
    MPA zy = z + MPA::constant(y0, 3);
    MPA acc(3);
    auto cs = H.coeffs_in(1);  // coefficients in u1 = w
    for (size_t j = 0; j < cs.size(); ++j) {
        // cs[j] is a polynomial in u0
        MPA cj(3);
        auto c0 = to_upoly(cs[j], 0);
        // evaluate at zy by Horner
        for (size_t i = c0.c.size(); i-- > 0;) {
            cj = cj * zy + MPA::constant(inject_rat(y0, c0.c[i]) * one, 3);
        }
        if (cj.is_zero_poly()) continue;
        MPA wj = MPA::var(2, 3, one).pow(static_cast<int>(j));
        acc = acc + cj * wj;
    }
    return acc;
}

std::vector<UPoly<Rat>> critical_value_polys(const MP& H) {
    std::vector<UPoly<Rat>> polys;
    MP lc1 = H.lc_in(1);
    if (!lc1.is_constant()) polys.push_back(to_upoly(lc1, 0));
    MP disc = mp_resultant(H, H.derivative(1), 1);
    if (!disc.is_constant() && !disc.is_zero_poly()) polys.push_back(to_upoly(disc, 0));
    MP h0 = H.eval_var(1, Rat(0));
    if (!h0.is_constant()) polys.push_back(to_upoly(h0, 0));
    return polys;
}

std::vector<AlgRoot> critical_values(const MP& H, const Limits& lim) {
    UPoly<Rat> prod = UPoly<Rat>::constant(Rat(1));
    for (const auto& p : critical_value_polys(H)) prod = prod * p;
    if (prod.deg() < 1) return {};
    prod = upoly_squarefree_part(prod);
    auto roots = univariate_roots(prod, lim);
    // order: by minimal polynomial, then by isolating interval
    std::sort(roots.begin(), roots.end(), [](const AlgRoot& a, const AlgRoot& b) {
        auto key = [](const AlgRoot& r) {
            if (alg_is_rational(r.value)) return std::make_tuple(1, UPoly<Rat>(), Rat(0));
            auto f = r.value.F;
            return std::make_tuple(2, f->minpoly, f->selector.real ? f->selector.lo : Rat(f->selector.conj_index));
        };
        auto ka = key(a), kb = key(b);
        auto cmp_poly = [](const UPoly<Rat>& x, const UPoly<Rat>& y) {
            if (x.deg() != y.deg()) return x.deg() < y.deg() ? -1 : 1;
            for (int i = x.deg(); i >= 0; --i) {
                if (x.coeff(i) < y.coeff(i)) return -1;
                if (y.coeff(i) < x.coeff(i)) return 1;
            }
            return 0;
        };
        if (std::get<0>(ka) != std::get<0>(kb)) return std::get<0>(ka) < std::get<0>(kb);
        if (std::get<0>(ka) == 1) {
            return alg_rational_value(a.value) < alg_rational_value(b.value);
        }
        int c = cmp_poly(std::get<1>(ka), std::get<1>(kb));
        if (c != 0) return c < 0;
        return std::get<2>(ka) < std::get<2>(kb);
    });
    return roots;
}

MP invert_bivariate(const MP& H) {
    DiffSystem s = DiffSystem::make({H.resized(2)}, 1);
    return invert_system(s).eqs[0].resized(2);
}

// y(0) = infinity branches: solve the inverted equation for z -> 0 and report
// 1/z series.
std::vector<PuiseuxTruncation> infinity_value_branches(const MP& H, const Rat& order,
                                                       const Limits& lim,
                                                       std::vector<std::string>& warnings) {
    std::vector<PuiseuxTruncation> out;
    MP Hs = invert_bivariate(H);
    Factorization fac = factor_bivariate(Hs, lim.factor);
    for (const auto& [factor, mult] : fac.factors) {
        (void)mult;
        if (factor.deg(1) == 0) continue;  // pure z factor: constant infinity, not a function
        if (factor.deg(0) == 0) {
            // p(w): z' = a for each root a != 0 => z = a x exactly
            for (auto& r : univariate_roots(to_upoly(factor, 1), lim)) {
                if (is_zero(r.value)) continue;
                PuiseuxTruncation t;
                t.truncation_order = order;
                t.exact = true;
                t.unique_extension = true;
                t.via_inverse = true;
                AlgNum inv_a = inv(r.value);
                t.terms.emplace_back(Rat(-1), demote(inv_a));
                t.ramification = 1;
                t.field_note = field_note_for(
                    r.value.F ? std::static_pointer_cast<const NumberField>(r.value.F) : nullptr);
                out.push_back(std::move(t));
            }
            continue;
        }
        // local solve for z(0) = 0 on this factor
        MPA E(3);
        for (const auto& [e, c] : factor.t) {
            Exp e2 = {0, e.empty() ? 0 : e[0], e.size() > 1 ? e[1] : 0};
            E.t.emplace(std::move(e2), alg_from_rat(c));
        }
        // order for z must cover 1/y to the requested depth
        Rat ztarget = order + Rat(2);
        for (auto& b : run_local(E, nullptr, ztarget, lim, false)) {
            if (b.terms.empty()) continue;
            if (b.depth_capped)
                warnings.push_back("infinity branch hit the recursion depth cap");
            // y = 1/z
            PSeries<AlgNum> z;
            z.exact = b.exact;
            if (!b.exact) z.order = ztarget;
            for (const auto& [e, c] : b.terms) z.terms.emplace(e, c);
            AlgNum one = b.field ? one_like(AlgNum::generator(b.field)) : alg_from_rat(Rat(1));
            PSeries<AlgNum> y = invert_series(z, order + Rat(1), one);
            PuiseuxTruncation t;
            t.truncation_order = order;
            t.exact = y.exact;
            t.unique_extension = b.unique;
            t.indicial_root = b.indicial_root;
            t.via_inverse = true;
            for (const auto& [e, c] : y.terms)
                if (!is_zero(c)) t.terms.emplace_back(e, demote(c));
            std::vector<std::pair<Rat, AlgNum>> tmp;
            for (const auto& [e, c] : t.terms) tmp.emplace_back(e, AlgNum{});
            t.ramification = lcm_denominators(tmp);
            t.field_note = field_note_for(b.field);
            out.push_back(std::move(t));
        }
    }
    return out;
}

} // namespace

bool family_admits(const SolutionFamily& fam, const Rat& y0) {
    for (const auto& p : fam.constraints)
        if (p.eval(y0).is_zero()) return false;
    return true;
}

PuiseuxResult puiseux_solve(const MP& H, const Rat& order, const Limits& lim) {
    PuiseuxResult res;
    invariant(!H.is_constant(), "puiseux_solve on a constant");
    MP Hn = normalize_primitive(H.resized(2));
    invariant(Hn.deg(0) >= 1 && Hn.deg(1) >= 1, "puiseux_solve input must depend on u0 and u1");

    // ---- generic one-parameter families, one per irreducible factor ----
    Factorization fac = factor_bivariate(Hn, lim.factor);
    std::vector<UPoly<Rat>> constraints;
    {
        UPoly<Rat> prod = UPoly<Rat>::constant(Rat(1));
        for (const auto& p : critical_value_polys(Hn)) prod = prod * p;
        if (prod.deg() >= 1) {
            UFactorization cf = factor_univariate(upoly_squarefree_part(prod), lim.factor);
            for (auto& [g, m] : cf.factors) {
                (void)m;
                constraints.push_back(monic(g));
            }
        }
    }

    for (const auto& [factor, mult] : fac.factors) {
        (void)mult;
        invariant(factor.deg(0) >= 1 && factor.deg(1) >= 1, "H factor lost a variable");
        SolutionFamily fam;
        fam.source_factor = factor;
        fam.constraints = constraints;
        // the slope c satisfies m_c(c) = factor(y0, c) = 0 over Q(y0)
        RF y0 = RF::generator(Rat(1));
        UPoly<RF> mc;
        for (const auto& cj : factor.coeffs_in(1)) mc.c.push_back(RF(to_upoly(cj, 0)));
        mc.trim();
        RF lead = mc.lc();
        mc = mc.scaled(inv(lead));
        auto cf = std::make_shared<ExtField<RF>>();
        cf->minpoly = mc;
        cf->gen_name = "c";
        FamVal v0 = FamVal::from_base(y0);
        v0.F = cf;
        FamVal v1 = FamVal::generator(cf);
        // Taylor recursion: v_k = -R_{k-1}(v0..v_{k-1}) / sep(v0, v1)
        MP sep = factor.derivative(1);
        auto eval_mp = [&](const MP& f, const std::vector<FamVal>& vals) {
            FamVal acc = zero_like(v1);
            for (const auto& [e, c] : f.t) {
                FamVal term = inject_rat(v1, c);
                for (size_t vv = 0; vv < e.size(); ++vv)
                    for (uint32_t i = 0; i < e[vv]; ++i) term = term * vals[vv];
                acc = acc + term;
            }
            return acc;
        };
        std::vector<FamVal> vals = {v0, v1};
        FamVal sep_val = eval_mp(sep.resized(2), vals);
        invariant(!is_zero(sep_val), "separant vanishes identically on the family");
        long K = order.floor().get_si();
        Rat factorial(1);
        PuiseuxTruncation t;
        t.param_name = "y0";
        t.truncation_order = order;
        t.terms.emplace_back(Rat(0), Coeff(RF::generator(Rat(1))));
        if (K >= 1) {
            Coeff c1 = v1.rep.deg() <= 0
                           ? (v1.rep.is_zero_poly() ? Coeff(Rat(0)) : Coeff(v1.rep.c[0]))
                           : Coeff(v1);
            t.terms.emplace_back(Rat(1), c1);
        }
        for (long k = 2; k <= K; ++k) {
            RittSplit rs = ritt_split(factor.resized(2), static_cast<int>(k));
            FamVal rk = eval_mp(rs.remainder, vals);
            FamVal vk = -(rk / sep_val);
            vals.push_back(vk);
            factorial *= Rat(k);
            FamVal coeff = vk * inject_rat(v1, factorial.inv());
            if (is_zero(coeff)) continue;
            Coeff cc = coeff.rep.deg() <= 0 ? Coeff(coeff.rep.c[0]) : Coeff(coeff);
            t.terms.emplace_back(Rat(k), cc);
        }
        t.unique_extension = true;
        t.field_note = factor.deg(1) >= 2 ? "c: root of the source factor at u0 = y0" : "";
        fam.truncation = std::move(t);
        res.families.push_back(std::move(fam));
    }

    // ---- critical branches ----
    int param_counter = 1;
    for (auto& cv : critical_values(Hn, lim)) {
        NumberFieldPtr f0 =
            cv.value.F ? std::static_pointer_cast<const NumberField>(cv.value.F) : nullptr;
        MPA E = shifted_equation(Hn, cv.value);
        std::vector<std::pair<Rat, AlgNum>> preload;
        if (!is_zero(cv.value)) preload.emplace_back(Rat(0), cv.value);
        for (auto& b : run_local(E, f0, order, lim, true, preload)) {
            if (b.terms.size() <= preload.size() && !b.has_param) continue;
            if (b.depth_capped) res.warnings.push_back("critical branch hit the recursion depth cap");
            if (!b.unique && b.indicial_root && *b.indicial_root > order)
                res.warnings.push_back(
                    "order too small: a branch extends non-uniquely beyond the computed order");
            std::string pname = "c" + std::to_string(param_counter);
            PuiseuxTruncation t = branch_to_truncation(b, order, pname);
            if (b.has_param) ++param_counter;
            res.critical.push_back(std::move(t));
        }
    }

    // ---- y(0) = infinity branches ----
    auto inf = infinity_value_branches(Hn, order, lim, res.warnings);
    for (auto& t : inf) res.critical.push_back(std::move(t));
    return res;
}

std::vector<PuiseuxTruncation> puiseux_solve_infinity(const MP& H, const Rat& order,
                                                      const Limits& lim) {
    std::vector<PuiseuxTruncation> out;
    std::vector<std::string> warnings;
    MP Hn = normalize_primitive(H.resized(2));
    invariant(Hn.deg(1) >= 1, "puiseux_solve_infinity input must depend on u1");

    // t = 1/x: y'(x) = -t^2 dy/dt, so E(t, z, w) = H(z, -t^2 w).
    auto build_E = [](const MP& G) {
        MPA E(3);
        for (const auto& [e, c] : G.t) {
            uint32_t i = e.empty() ? 0 : e[0];
            uint32_t j = e.size() > 1 ? e[1] : 0;
            Rat sgn = (j % 2 == 0) ? Rat(1) : Rat(-1);
            Exp e2 = {2 * j, i, j};
            E.add_term(std::move(e2), alg_from_rat(c * sgn));
        }
        return E;
    };
    MPA E = build_E(Hn);

    int param_counter = 1;
    auto demote_param = [](const ParamVal& v) -> Coeff {
        if (!v.is_zero_val() && v.num.deg() <= 0 && v.den.deg() <= 0) {
            AlgNum a = v.num.c[0] / v.den.c[0];
            return demote(a);
        }
        return Coeff(v);
    };
    auto collect = [&](std::vector<LocalBranch> branches, bool invert_y, size_t preload) {
        for (auto& b : branches) {
            if (b.terms.size() <= preload && !b.has_param) continue;
            std::string pname = "c" + std::to_string(param_counter);
            PuiseuxTruncation t;
            if (invert_y && b.has_param) {
                // y = 1 / z(t) with a free constant in z
                ParamVal pone = ParamVal::from_const(alg_from_rat(Rat(1)));
                PSeries<ParamVal> z;
                z.exact = b.exact;
                if (!b.exact) z.order = order + Rat(2);
                for (const auto& [e, c] : b.terms) z.terms.emplace(e, ParamVal::from_const(c));
                for (const auto& [e, c] : b.param_terms) z.add_term(e, c);
                if (z.terms.empty()) continue;
                PSeries<ParamVal> y = invert_series(z, order + Rat(1), pone);
                t.truncation_order = order;
                t.exact = y.exact;
                t.unique_extension = b.unique;
                t.indicial_root = b.indicial_root;
                t.param_name = pname;
                t.via_inverse = true;
                for (const auto& [e, c] : y.terms)
                    if (!is_zero(c)) t.terms.emplace_back(e, demote_param(c));
                Int l(1);
                for (const auto& [e, c] : t.terms) l = int_lcm(l, e.den());
                t.ramification = static_cast<long>(l.get_si());
                t.field_note = field_note_for(b.field);
            } else if (invert_y) {
                // y = 1 / z(t)
                PSeries<AlgNum> z;
                z.exact = b.exact;
                if (!b.exact) z.order = order + Rat(2);
                for (const auto& [e, c] : b.terms) z.terms.emplace(e, c);
                if (z.terms.empty()) continue;
                AlgNum one = b.field ? one_like(AlgNum::generator(b.field)) : alg_from_rat(Rat(1));
                PSeries<AlgNum> y = invert_series(z, order + Rat(1), one);
                LocalBranch inv_b;
                inv_b.field = b.field;
                inv_b.exact = y.exact;
                inv_b.unique = b.unique;
                inv_b.indicial_root = b.indicial_root;
                for (const auto& [e, c] : y.terms) inv_b.terms.emplace_back(e, c);
                t = branch_to_truncation(inv_b, order, pname);
                t.via_inverse = true;
            } else {
                t = branch_to_truncation(b, order, pname);
            }
            if (b.has_param) ++param_counter;
            // map t-exponents to x-exponents (negate) and flip to descending
            for (auto& [e, c] : t.terms) e = -e;
            std::sort(t.terms.begin(), t.terms.end(),
                      [](const auto& a, const auto& bb) { return bb.first < a.first; });
            t.point = ExpPoint::Infinity;
            // certified down to x-exponent -(order + 1) + 1/ram
            t.truncation_order = -(order + Rat(1)) + Rat(1, t.ramification);
            out.push_back(std::move(t));
        }
    };

    // finite limits y(inf) = a: roots of H(u0, 0)
    MP h0 = Hn.eval_var(1, Rat(0));
    if (!h0.is_constant() && !h0.is_zero_poly()) {
        for (auto& r : univariate_roots(upoly_squarefree_part(to_upoly(h0, 0)), lim)) {
            NumberFieldPtr f0 =
                r.value.F ? std::static_pointer_cast<const NumberField>(r.value.F) : nullptr;
            AlgNum one = f0 ? one_like(AlgNum::generator(f0)) : alg_from_rat(Rat(1));
            MPA Ea(3);
            {
                // substitute z -> z + a
                MPA za = MPA::var(1, 3, one) + MPA::constant(r.value, 3);
                MPA acc(3);
                for (const auto& [e, c] : E.t) {
                    uint32_t k = e.empty() ? 0 : e[0];
                    uint32_t i = e.size() > 1 ? e[1] : 0;
                    uint32_t j = e.size() > 2 ? e[2] : 0;
                    MPA term = MPA::constant(f0 ? AlgNum{f0, c.rep} : c, 3);
                    if (k) term = term * MPA::var(0, 3, one).pow(static_cast<int>(k));
                    if (i) term = term * za.pow(static_cast<int>(i));
                    if (j) term = term * MPA::var(2, 3, one).pow(static_cast<int>(j));
                    acc = acc + term;
                }
                Ea = acc;
            }
            std::vector<std::pair<Rat, AlgNum>> preload = {{Rat(0), r.value}};
            collect(run_local(Ea, f0, order + Rat(2), lim, true, preload), false, 1);
        }
    }
    // zero limit y(inf) = 0
    collect(run_local(E, nullptr, order + Rat(2), lim, true), false, 0);
    // infinite limit: z = 1/y
    {
        MPA Einv(3);
        int D = 0;
        for (const auto& [e, c] : E.t) {
            int i = e.size() > 1 ? static_cast<int>(e[1]) : 0;
            int j = e.size() > 2 ? static_cast<int>(e[2]) : 0;
            D = std::max(D, i + 2 * j);
        }
        for (const auto& [e, c] : E.t) {
            uint32_t k = e.empty() ? 0 : e[0];
            uint32_t i = e.size() > 1 ? e[1] : 0;
            uint32_t j = e.size() > 2 ? e[2] : 0;
            Rat sgn = (j % 2 == 0) ? Rat(1) : Rat(-1);
            Exp e2 = {k, static_cast<uint32_t>(D - static_cast<int>(i) - 2 * static_cast<int>(j)),
                      j};
            Einv.add_term(std::move(e2), c * inject_rat(c, sgn));
        }
        Einv = strip_x_content(Einv);
        // strip z-content (pure pole terms)
        uint32_t minz = UINT32_MAX;
        for (const auto& [e, c] : Einv.t) minz = std::min(minz, e.size() > 1 ? e[1] : 0);
        if (minz > 0 && minz != UINT32_MAX) {
            MPA r2(3);
            for (const auto& [e, c] : Einv.t) {
                Exp e2 = e;
                e2[1] -= minz;
                r2.t.emplace(std::move(e2), c);
            }
            Einv = r2;
        }
        collect(run_local(Einv, nullptr, order + Rat(2), lim, true), true, 0);
    }
    return out;
}

std::vector<LinearSolution> linear_solutions(const DiffSystem& S, const Limits& lim) {
    std::vector<LinearSolution> out;
    // substitute y = alpha x + beta: u0 -> v0*v2 + v1, u1 -> v0, u_{>=2} -> 0
    // with v0 = alpha, v1 = beta, v2 = x; collect coefficients of powers of x.
    std::vector<MP> eqs;
    for (const auto& F : S.eqs) {
        MP g(3);
        for (const auto& [e, c] : F.t) {
            bool vanish = false;
            for (size_t v = 2; v < e.size(); ++v)
                if (e[v]) vanish = true;
            if (vanish) continue;
            uint32_t e0 = e.empty() ? 0 : e[0];
            uint32_t e1 = e.size() > 1 ? e[1] : 0;
            MP term = MP::constant(c, 3);
            MP lin = MP::var(0, 3, Rat(1)) * MP::var(2, 3, Rat(1)) + MP::var(1, 3, Rat(1));
            if (e0) term = term * lin.pow(static_cast<int>(e0));
            if (e1) term = term * MP::var(0, 3, Rat(1)).pow(static_cast<int>(e1));
            g = g + term;
        }
        for (auto& coeff : g.coeffs_in(2)) {
            if (coeff.is_zero_poly()) continue;
            eqs.push_back(coeff.resized(2));
        }
    }
    if (eqs.empty()) {
        // every linear function solves the system; unsupported shape
        fail(ErrorKind::Internal, "linear ansatz leaves alpha and beta unconstrained");
    }
    bool any_const = false;
    for (const auto& e : eqs)
        if (e.is_constant() && !e.is_zero_poly()) any_const = true;
    if (any_const) return out;

    auto chains = triangularize(eqs, 2, {}, lim);
    for (auto& ch : chains) {
        const auto& polys = ch.base.polys;
        if (polys.empty()) fail(ErrorKind::Internal, "linear ansatz produced an empty chain");
        if (polys.size() == 1 && polys[0].lead_var() == 0) {
            // alpha constrained, beta free
            UPoly<Rat> p = to_upoly(polys[0], 0);
            for (auto& r : univariate_roots(p, lim)) {
                if (is_zero(r.value)) continue;
                LinearSolution ls;
                ls.alpha = r.value;
                ls.beta_free = true;
                out.push_back(std::move(ls));
            }
            continue;
        }
        if (polys.size() == 1) {
            // single relation q(alpha, beta) with alpha free: not a finite
            // description; the dimension-one hypothesis excludes it upstream
            fail(ErrorKind::Internal, "linear ansatz leaves alpha free");
        }
        for (auto& pt : enumerate_chain_points(ch, lim)) {
            if (is_zero(pt.coords[0])) continue;
            LinearSolution ls;
            ls.alpha = pt.coords[0];
            ls.beta = pt.coords[1];
            ls.beta_free = false;
            out.push_back(std::move(ls));
        }
    }
    // deduplicate (chains may overlap in degenerate cases)
    auto same = [](const LinearSolution& a, const LinearSolution& b) {
        if (a.beta_free != b.beta_free) return false;
        auto eq = [](const AlgNum& x, const AlgNum& y) {
            return coeff_equal(Coeff(x), Coeff(y));
        };
        if (!eq(a.alpha, b.alpha)) return false;
        return a.beta_free || eq(a.beta, b.beta);
    };
    std::vector<LinearSolution> dedup;
    for (auto& ls : out) {
        bool dup = false;
        for (const auto& e : dedup)
            if (same(ls, e)) dup = true;
        if (!dup) dedup.push_back(std::move(ls));
    }
    return dedup;
}

SolutionSet puiseux_solve_system(const DiffSystem& S, const Rat& order, const Limits& lim) {
    SolutionSet out;
    out.reduction = reduce_system_info(S, lim);
    out.h_star = MP::constant(Rat(1), 2);
    if (!out.reduction.trivial && !out.reduction.H.is_constant()) {
        MP hs = strip_univariate_factors(mp_squarefree_part(out.reduction.H, 1)).stripped;
        out.h_star = normalize_primitive(hs);
    }
    Rat internal = order + Rat(S.order - 1);
    if (!out.h_star.is_constant()) {
        PuiseuxResult pr = puiseux_solve(out.h_star, internal, lim);
        out.families = std::move(pr.families);
        out.critical = std::move(pr.critical);
        out.warnings = std::move(pr.warnings);
    }
    out.linear = linear_solutions(S, lim);
    return out;
}

std::vector<PuiseuxTruncation> solve_at_point(const DiffSystem& S, const Rat& x0, const Rat& y0,
                                              const Rat& order, const Limits& lim) {
    std::vector<PuiseuxTruncation> out;
    ReducedEquation red = reduce_system_info(S, lim);
    Rat internal = order + Rat(S.order - 1);
    if (!red.trivial && !red.H.is_constant()) {
        MP hs = normalize_primitive(strip_univariate_factors(mp_squarefree_part(red.H, 1)).stripped);
        if (!hs.is_constant()) {
            AlgNum a = alg_from_rat(y0);
            MPA E = shifted_equation(hs, a);
            std::vector<std::pair<Rat, AlgNum>> preload;
            if (!y0.is_zero()) preload.emplace_back(Rat(0), a);
            for (auto& b : run_local(E, nullptr, internal, lim, true, preload)) {
                if (b.terms.size() <= preload.size() && !b.has_param) continue;
                PuiseuxTruncation t = branch_to_truncation(b, internal, "c1");
                t.x_shift = x0;
                out.push_back(std::move(t));
            }
        }
    }
    // linear solutions through the point
    for (auto& ls : linear_solutions(S, lim)) {
        AlgNum beta = ls.beta;
        if (ls.beta_free) {
            // choose beta with alpha x0 + beta = y0
            beta = alg_from_rat(y0) - ls.alpha * alg_from_rat(x0);
        } else {
            AlgNum val = ls.alpha * alg_from_rat(x0) + ls.beta;
            if (!coeff_equal(Coeff(val), Coeff(alg_from_rat(y0)))) continue;
        }
        PuiseuxTruncation t;
        t.x_shift = x0;
        t.truncation_order = internal;
        t.exact = true;
        t.unique_extension = true;
        if (!is_zero(beta)) t.terms.emplace_back(Rat(0), demote(beta));
        t.terms.emplace_back(Rat(1), demote(ls.alpha));
        bool dup = false;
        for (const auto& e : out)
            if (truncation_equal(e, t)) dup = true;
        if (!dup) out.push_back(std::move(t));
    }
    return out;
}

std::vector<PuiseuxTruncation> specialize_family(const SolutionFamily& fam, const Rat& y0,
                                                 const Limits& lim) {
    std::vector<PuiseuxTruncation> out;
    check(family_admits(fam, y0), ErrorKind::Internal, "family specialization at an excluded y0");
    UPoly<Rat> mc = to_upoly(fam.source_factor.eval_var(0, y0), 1);
    for (auto& r : univariate_roots(mc, lim)) {
        PuiseuxTruncation t;
        t.truncation_order = fam.truncation.truncation_order;
        t.exact = false;
        t.unique_extension = fam.truncation.unique_extension;
        for (const auto& [e, cf] : fam.truncation.terms) {
            AlgNum val;
            if (const RF* q = std::get_if<RF>(&cf)) {
                Rat num = q->num.eval(y0);
                Rat den = q->den.eval(y0);
                invariant(!den.is_zero(), "family denominator vanishes at an admissible y0");
                val = alg_from_rat(num / den);
                if (r.value.F) val = AlgNum{r.value.F, val.rep};
            } else if (const Rat* q = std::get_if<Rat>(&cf)) {
                val = alg_from_rat(*q);
            } else if (const FamVal* q = std::get_if<FamVal>(&cf)) {
                // polynomial in c with RF coefficients; evaluate at y0, then c
                AlgNum acc;
                for (size_t k = q->rep.c.size(); k-- > 0;) {
                    const RF& rc = q->rep.c[k];
                    Rat num = rc.is_zero_val() ? Rat(0) : rc.num.eval(y0);
                    Rat den = rc.is_zero_val() ? Rat(1) : rc.den.eval(y0);
                    invariant(!den.is_zero(), "family denominator vanishes at an admissible y0");
                    acc = acc * r.value + alg_from_rat(num / den);
                }
                val = acc;
            } else {
                fail(ErrorKind::Internal, "unexpected coefficient kind in a family");
            }
            if (!is_zero(val)) t.terms.emplace_back(e, demote(val));
        }
        Int l(1);
        for (const auto& [e, c] : t.terms) l = int_lcm(l, e.den());
        t.ramification = static_cast<long>(l.get_si());
        out.push_back(std::move(t));
    }
    return out;
}

} // namespace aodes
