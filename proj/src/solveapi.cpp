#include "aodes/solveapi.hpp"

#include <json.hpp>

#include "aodes/printer.hpp"

namespace aodes {
namespace {

using nlohmann::json;

json algnum_json(const AlgNum& a) {
    if (alg_is_rational(a)) return json{{"kind", "rational"}, {"value", alg_rational_value(a).str()}};
    json j{{"kind", "algebraic"},
           {"rep", upoly_str(a.rep, a.F->gen_name)},
           {"minpoly", upoly_str(a.F->minpoly, "t")}};
    if (a.F->selector_set) {
        if (a.F->selector.real)
            j["interval"] = {a.F->selector.lo.str(), a.F->selector.hi.str()};
        else
            j["conjugate_pair"] = {{"index", a.F->selector.conj_index},
                                   {"sign", a.F->selector.conj_sign}};
    }
    return j;
}

json coeff_json(const Coeff& c, const std::string& param) {
    if (const Rat* q = std::get_if<Rat>(&c)) return json{{"kind", "rational"}, {"value", q->str()}};
    if (const AlgNum* a = std::get_if<AlgNum>(&c)) return algnum_json(*a);
    if (const RF* f = std::get_if<RF>(&c)) {
        std::string p = param.empty() ? "y0" : param;
        return json{{"kind", "ratfunc"},
                    {"param", p},
                    {"num", f->is_zero_val() ? "0" : upoly_str(f->num, p)},
                    {"den", f->is_zero_val() ? "1" : upoly_str(f->den, p)}};
    }
    return json{{"kind", "expression"}, {"text", coeff_str(c, param)}};
}

json truncation_json(const PuiseuxTruncation& t) {
    json terms = json::array();
    for (const auto& [e, c] : t.terms)
        terms.push_back(json{{"exp", e.str()}, {"coeff", coeff_json(c, t.param_name)}});
    json j{{"point", t.point == ExpPoint::Zero ? "zero" : "infinity"},
           {"ramification", t.ramification},
           {"order", t.truncation_order.str()},
           {"exact", t.exact},
           {"unique_extension", t.unique_extension},
           {"terms", terms},
           {"text", truncation_str(t)}};
    if (!t.x_shift.is_zero()) j["x0"] = t.x_shift.str();
    if (!t.param_name.empty()) j["parameter"] = t.param_name;
    if (t.via_inverse) j["via_inverse"] = true;
    if (!t.field_note.empty()) j["field"] = t.field_note;
    return j;
}

json chain_json(const RegularChain& c) {
    json polys = json::array();
    for (const auto& p : c.base.polys) polys.push_back(mp_str(p));
    return polys;
}

std::string chain_text(const RegularChain& c) {
    std::string s = "{ ";
    for (size_t i = 0; i < c.base.polys.size(); ++i) {
        if (i) s += ", ";
        s += mp_str(c.base.polys[i]);
    }
    return s + " }";
}

template <class F>
CommandResult wrap(F&& body) {
    CommandResult r;
    try {
        body(r);
    } catch (const Error& e) {
        r.exit_code = e.exit_code();
        r.text = std::string("error: ") + e.what();
        r.json = json{{"error", e.what()}, {"exit_code", r.exit_code}}.dump(2);
    } catch (const std::exception& e) {
        r.exit_code = 1;
        r.text = std::string("error: ") + e.what();
        r.json = json{{"error", e.what()}, {"exit_code", 1}}.dump(2);
    }
    return r;
}

std::string mpa_str_local(const MPA& f) {
    // render an algebraic-coefficient bivariate polynomial in (x, Y)
    std::string out;
    for (auto it = f.t.rbegin(); it != f.t.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string cs = alg_is_rational(c) ? alg_rational_value(c).str() : "(" + algnum_str(c) + ")";
        std::string mono;
        if (e.size() > 0 && e[0]) {
            mono += e[0] == 1 ? "x" : "x^" + std::to_string(e[0]);
        }
        if (e.size() > 1 && e[1]) {
            if (!mono.empty()) mono += "*";
            mono += e[1] == 1 ? "Y" : "Y^" + std::to_string(e[1]);
        }
        std::string piece;
        if (mono.empty()) piece = cs;
        else if (cs == "1") piece = mono;
        else if (cs == "-1") piece = "-" + mono;
        else piece = cs + "*" + mono;
        if (out.empty()) out = piece;
        else if (piece[0] == '-') out += " - " + piece.substr(1);
        else out += " + " + piece;
    }
    return out.empty() ? "0" : out;
}

} // namespace

CommandResult run_reduce(const std::string& input) {
    return wrap([&](CommandResult& r) {
        Limits lim = Limits::from_env();
        SourceSystem src = parse_system(input, lim);
        ReducedEquation red = reduce_system_info(src.parsed, lim);
        json j;
        std::string t;
        if (red.trivial) {
            t += "reduced equation: 1   (all chains discarded: only constant solutions)\n";
        } else {
            t += "reduced equation: " + mp_str(red.H) + " = 0\n";
        }
        j["H"] = mp_str(red.H);
        j["trivial"] = red.trivial;
        json chains = json::array();
        if (!red.per_chain.empty()) t += "chains:\n";
        int idx = 1;
        for (const auto& pc : red.per_chain) {
            t += "  [" + std::to_string(idx++) + "] " + chain_text(pc.chain) +
                 "  ->  gcd = " + mp_str(pc.h_chain) + "\n";
            json pj{{"chain", chain_json(pc.chain)},
                    {"g1_normalized", mp_str(pc.g1_norm)},
                    {"h_chain", mp_str(pc.h_chain)}};
            json inter = json::array();
            for (const auto& h : pc.intermediates) inter.push_back(mp_str(h));
            pj["intermediates"] = inter;
            chains.push_back(pj);
        }
        j["per_chain"] = chains;
        json disc = json::array();
        for (const auto& c : red.discarded_dim0) disc.push_back(chain_json(c));
        j["discarded_dimension_zero"] = disc;
        json discy = json::array();
        for (const auto& c : red.discarded_y_rooted) discy.push_back(chain_json(c));
        j["discarded_algebraic_in_y"] = discy;
        if (!red.discarded_dim0.empty() || !red.discarded_y_rooted.empty()) {
            t += "discarded chains: " +
                 std::to_string(red.discarded_dim0.size() + red.discarded_y_rooted.size()) +
                 " (dimension zero or algebraic in y)\n";
        }
        json consts = json::array();
        if (red.all_constants_solve) {
            t += "constant solutions: every constant\n";
            j["all_constants_solve"] = true;
        } else if (!red.constant_solutions.empty()) {
            t += "constant solutions:";
            for (const auto& c : red.constant_solutions) {
                t += " y = " + algnum_str(c) + ";";
                consts.push_back(algnum_json(c));
            }
            t += "\n";
        }
        j["constant_solutions"] = consts;
        r.text = t;
        r.json = j.dump(2);
    });
}

CommandResult run_triangularize(const std::string& input) {
    return wrap([&](CommandResult& r) {
        Limits lim = Limits::from_env();
        SourceSystem src = parse_system(input, lim);
        auto chains = triangularize(src.parsed.eqs, src.parsed.nvars(), {}, lim);
        std::string t;
        json arr = json::array();
        t += std::to_string(chains.size()) + " regular chain(s)\n";
        for (auto& c : chains) {
            int dim = chain_dimension(c, src.parsed.nvars());
            t += "  " + chain_text(c) + "   dim " + std::to_string(dim) + "\n";
            arr.push_back(json{{"polys", chain_json(c)},
                               {"dimension", dim},
                               {"regular", is_regular_chain(c.base)}});
        }
        r.text = t;
        r.json = json{{"chains", arr}}.dump(2);
    });
}

namespace {

void verify_or_die(const DiffSystem& S, const PuiseuxTruncation& t, const Rat& order,
                   std::string& text) {
    VerifyReport rep = verify_truncation(S, t, order);
    invariant(rep.ok, "emitted solution failed oracle verification: " + truncation_str(t));
    text += "      [verified to order " + order.str() + "]\n";
}

} // namespace

CommandResult run_solve(const std::string& input, const SolveOptions& opts) {
    return wrap([&](CommandResult& r) {
        Limits lim = Limits::from_env();
        SourceSystem src = parse_system(input, lim);
        const DiffSystem& S = src.parsed;
        json j;
        std::string t;

        // reduce first to size the default order
        ReducedEquation red0 = reduce_system_info(S, lim);
        MP hstar = MP::constant(Rat(1), 2);
        if (!red0.trivial && !red0.H.is_constant())
            hstar = normalize_primitive(
                strip_univariate_factors(mp_squarefree_part(red0.H, 1)).stripped);
        Rat order = opts.order ? *opts.order
                               : Rat(std::max(3, hstar.is_constant() ? 3 : hstar.total_deg()));

        if (opts.point) {
            auto [x0, y0] = *opts.point;
            auto ts = solve_at_point(S, x0, y0, order, lim);
            t += "solutions through (x0, y0) = (" + x0.str() + ", " + y0.str() + "):\n";
            json arr = json::array();
            for (auto& tr : ts) {
                t += "  " + truncation_str(tr) + "\n";
                verify_or_die(S, tr, order, t);
                arr.push_back(truncation_json(tr));
            }
            if (ts.empty()) t += "  none\n";
            j["point"] = {{"x0", x0.str()}, {"y0", y0.str()}};
            j["solutions"] = arr;
            j["order"] = order.str();
            r.text = t;
            r.json = j.dump(2);
            return;
        }

        if (opts.at_infinity) {
            t += "reduced equation: " + mp_str(red0.H) + " = 0\n";
            j["H"] = mp_str(red0.H);
            json arr = json::array();
            if (!hstar.is_constant()) {
                auto ts = puiseux_solve_infinity(hstar, order, lim);
                t += "solution truncations at x = infinity:\n";
                for (auto& tr : ts) {
                    t += "  " + truncation_str(tr) + "\n";
                    arr.push_back(truncation_json(tr));
                }
                if (ts.empty()) t += "  none\n";
            } else {
                t += "reduced equation is constant; only linear solutions\n";
            }
            j["infinity_solutions"] = arr;
            j["order"] = order.str();
            r.text = t;
            r.json = j.dump(2);
            return;
        }

        // default order includes the determinacy bound: extend once when a
        // branch reports a rational indicial root beyond the order
        SolutionSet sol = puiseux_solve_system(S, order, lim);
        if (!opts.order) {
            Rat needed = order;
            for (const auto& tr : sol.critical)
                if (tr.indicial_root && *tr.indicial_root > needed)
                    needed = Rat(Int(tr.indicial_root->floor() + 1));
            if (needed > order) {
                order = needed;
                sol = puiseux_solve_system(S, order, lim);
            }
        }

        t += "reduced equation: " + mp_str(sol.reduction.H) + " = 0\n";
        j["H"] = mp_str(sol.reduction.H);
        j["order"] = order.str();

        json fams = json::array();
        if (!sol.families.empty()) t += "one-parameter families (generic y0 = y(0)):\n";
        for (auto& f : sol.families) {
            // display order: clip to the requested order
            SolutionFamily disp = f;
            disp.truncation.terms.clear();
            for (auto& [e, c] : f.truncation.terms)
                if (e <= order) disp.truncation.terms.emplace_back(e, c);
            disp.truncation.truncation_order = order;
            t += "  " + family_str(disp) + "\n";
            verify_or_die(S, f.truncation, order, t);
            json fj{{"truncation", truncation_json(disp.truncation)},
                    {"source_factor", mp_str(f.source_factor)}};
            json cons = json::array();
            for (auto& c : f.constraints) cons.push_back(upoly_str(c, "y0"));
            fj["constraints"] = cons;
            fams.push_back(fj);
        }
        j["families"] = fams;

        json crit = json::array();
        bool saw_crit = false;
        // deduplicate against linear solutions emitted below
        for (auto& tr : sol.critical) {
            if (!saw_crit) {
                t += "branches at critical initial values (incl. y(0) = infinity):\n";
                saw_crit = true;
            }
            PuiseuxTruncation disp = tr;
            disp.terms.clear();
            for (auto& [e, c] : tr.terms)
                if (e <= order) disp.terms.emplace_back(e, c);
            disp.truncation_order = std::min(tr.truncation_order, order);
            t += "  " + truncation_str(disp) + (tr.via_inverse ? "   [through y(0) = infinity]" : "") +
                 "\n";
            verify_or_die(S, tr, order, t);
            crit.push_back(truncation_json(disp));
        }
        int inf_count = 0;
        for (auto& tr : sol.critical)
            if (tr.via_inverse) ++inf_count;
        if (inf_count == 0) t += "no formal Puiseux series solution with y(0) = infinity\n";
        j["critical"] = crit;
        j["infinity_branch_count"] = inf_count;

        json lins = json::array();
        if (!sol.linear.empty()) t += "non-constant linear solutions:\n";
        for (auto& ls : sol.linear) {
            std::string line = "  y(x) = " + algnum_str(ls.alpha) + "*x";
            json lj{{"alpha", algnum_json(ls.alpha)}};
            if (ls.beta_free) {
                line += " + b   (b an arbitrary constant)";
                lj["beta"] = "free";
            } else {
                if (!is_zero(ls.beta)) line += " + " + algnum_str(ls.beta);
                lj["beta"] = algnum_json(ls.beta);
            }
            t += line + "\n";
            lins.push_back(lj);
        }
        j["linear"] = lins;

        json warns = json::array();
        for (auto& w : sol.warnings) {
            t += "warning: " + w + "\n";
            warns.push_back(w);
        }
        j["warnings"] = warns;

        // constant side channel
        if (sol.reduction.all_constants_solve) {
            t += "constant solutions: every constant\n";
        } else if (!sol.reduction.constant_solutions.empty()) {
            t += "constant solutions:";
            for (auto& c : sol.reduction.constant_solutions) t += " y = " + algnum_str(c) + ";";
            t += "\n";
        }
        if (sol.families.empty() && sol.critical.empty() && sol.linear.empty())
            t += "no non-constant formal Puiseux series solutions\n";

        r.text = t;
        r.json = j.dump(2);
    });
}

CommandResult run_solve_algebraic(const std::string& input, bool rational_only) {
    return wrap([&](CommandResult& r) {
        Limits lim = Limits::from_env();
        SourceSystem src = parse_system(input, lim);
        json j;
        std::string t;
        ReducedEquation red = reduce_system_info(src.parsed, lim);
        t += "reduced equation: " + mp_str(red.H) + " = 0\n";
        j["H"] = mp_str(red.H);
        auto [bx, bY] = red.H.is_constant() ? std::make_pair(0, 0) : degree_bounds(red.H);
        j["degree_bounds"] = {bx, bY};

        if (!rational_only) {
            auto fams = alg_solution_system(src.parsed, lim);
            json arr = json::array();
            if (fams.empty()) t += "no non-constant algebraic solutions\n";
            else t += "algebraic solution families (minimal polynomials, one per shift class):\n";
            for (auto& f : fams) {
                std::string gs = mpa_str_local(f.G);
                t += "  G(x, Y) = " + gs + "   [deg_x = " + std::to_string(f.deg_x) +
                     ", deg_Y = " + std::to_string(f.deg_Y) + "; bounds (" + std::to_string(bx) +
                     ", " + std::to_string(bY) + ")]\n";
                t += "    family: G(x + c, Y) = 0 for an arbitrary constant c\n";
                arr.push_back(json{{"G", gs},
                                   {"deg_x", f.deg_x},
                                   {"deg_Y", f.deg_Y},
                                   {"rational_coefficients", f.rational},
                                   {"source_factor", mp_str(f.source_factor)}});
            }
            j["families"] = arr;
        }
        auto rats = rational_solutions(src.parsed, lim);
        json rarr = json::array();
        if (rational_only) {
            if (rats.empty()) t += "no non-constant rational solutions\n";
            else t += "rational solutions:\n";
        } else if (!rats.empty()) {
            t += "rational solutions:\n";
        }
        for (auto& rs : rats) {
            std::string line = "  y(x) = ";
            std::string num = upoly_str(rs.num, "x+c");
            std::string den = upoly_str(rs.den, "x+c");
            line += rs.den.deg() == 0 && rs.den.coeff(0).is_one() ? num : "(" + num + ")/(" + den + ")";
            t += line + "   [degree " + std::to_string(rs.degree) + "]\n";
            rarr.push_back(json{{"num", upoly_str(rs.num, "x")},
                                {"den", upoly_str(rs.den, "x")},
                                {"degree", rs.degree}});
        }
        j["rational_solutions"] = rarr;
        r.text = t;
        r.json = j.dump(2);
    });
}

CommandResult run_verify(const std::string& input, const std::string& truncation_text,
                         const Rat& order) {
    return wrap([&](CommandResult& r) {
        Limits lim = Limits::from_env();
        SourceSystem src = parse_system(input, lim);
        PuiseuxTruncation tr = parse_truncation(truncation_text, lim);
        VerifyReport rep = verify_truncation(src.parsed, tr, order);
        std::string t;
        json j;
        t += "truncation: " + truncation_str(tr) + "\n";
        t += "threshold: residual valuation >= " + rep.threshold.str() + "\n";
        json vals = json::array();
        for (size_t i = 0; i < rep.residual_valuations.size(); ++i) {
            const auto& v = rep.residual_valuations[i];
            t += "  equation " + std::to_string(i + 1) + ": residual valuation " +
                 (v ? v->str() : "infinity (identically zero)") + "\n";
            vals.push_back(v ? json(v->str()) : json("infinity"));
        }
        t += rep.ok ? "ok\n" : "NOT ok\n";
        j["ok"] = rep.ok;
        j["threshold"] = rep.threshold.str();
        j["residual_valuations"] = vals;
        r.exit_code = rep.ok ? 0 : 1;
        r.text = t;
        r.json = j.dump(2);
    });
}

} // namespace aodes
