#include "aodes/printer.hpp"

#include <sstream>

namespace aodes {
namespace {

std::string var_name(int i, bool derivative_notation) {
    if (!derivative_notation) return "u" + std::to_string(i);
    if (i == 0) return "y";
    if (i <= 4) return "y" + std::string(static_cast<size_t>(i), '\'');
    return "y^(" + std::to_string(i) + ")";
}

// renders a monomial coefficient together with a (possibly empty) monomial
std::string join_coeff_monomial(const std::string& coeff, const std::string& mono) {
    if (mono.empty()) return coeff;
    if (coeff == "1") return mono;
    if (coeff == "-1") return "-" + mono;
    return coeff + "*" + mono;
}

void append_term(std::string& out, const std::string& term) {
    if (out.empty()) {
        out = term;
        return;
    }
    if (!term.empty() && term[0] == '-')
        out += " - " + term.substr(1);
    else
        out += " + " + term;
}

std::string pow_str(const std::string& base, const Rat& e) {
    if (e == Rat(1)) return base;
    if (e.is_integer()) return base + "^" + e.str();
    return base + "^(" + e.str() + ")";
}

} // namespace

std::string rat_str(const Rat& q) { return q.str(); }

std::string upoly_str(const UPoly<Rat>& f, const std::string& var) {
    if (f.is_zero_poly()) return "0";
    std::string out;
    for (int i = f.deg(); i >= 0; --i) {
        Rat c = f.coeff(i);
        if (c.is_zero()) continue;
        std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
        append_term(out, join_coeff_monomial(c.str(), mono));
    }
    return out;
}

std::string mp_str(const MP& f, bool derivative_notation) {
    if (f.is_zero_poly()) return "0";
    std::string out;
    for (auto it = f.t.rbegin(); it != f.t.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string mono;
        for (size_t v = 0; v < e.size(); ++v) {
            if (!e[v]) continue;
            if (!mono.empty()) mono += "*";
            mono += var_name(static_cast<int>(v), derivative_notation);
            if (e[v] > 1) mono += "^" + std::to_string(e[v]);
        }
        append_term(out, join_coeff_monomial(c.str(), mono));
    }
    return out;
}

std::string algnum_str(const AlgNum& a) {
    if (alg_is_rational(a)) return alg_rational_value(a).str();
    auto f = a.F;
    std::ostringstream os;
    // representation as polynomial in the generator
    std::string rep = upoly_str(a.rep, f->gen_name);
    os << rep << " {" << f->gen_name << ": minpoly " << upoly_str(f->minpoly, "t");
    if (f->selector_set) {
        if (f->selector.real)
            os << ", interval [" << f->selector.lo.str() << ", " << f->selector.hi.str() << "]";
        else
            os << ", conjugate pair " << f->selector.conj_index
               << (f->selector.conj_sign > 0 ? " (+)" : " (-)");
    }
    os << "}";
    return os.str();
}

namespace {

std::string rf_str(const RF& f, const std::string& param) {
    if (f.is_zero_val()) return "0";
    // pull the rational content of the numerator into an integer num/den pair
    auto [nprim, nscale] = z_primitive(f.num);
    UPoly<Rat> num = nprim.scaled(Rat(nscale.num()));
    UPoly<Rat> den = f.den.scaled(Rat(nscale.den()));
    std::string ns = upoly_str(num, param);
    if (den.deg() == 0 && den.coeff(0).is_one()) {
        size_t terms = 0;
        for (const auto& c : num.c)
            if (!c.is_zero()) ++terms;
        return terms > 1 ? "(" + ns + ")" : ns;
    }
    size_t nterms = 0;
    for (const auto& c : num.c)
        if (!c.is_zero()) ++nterms;
    if (nterms > 1) ns = "(" + ns + ")";
    if (den.deg() == 0) return ns + "/" + den.coeff(0).str();
    return ns + "/(" + upoly_str(den, param) + ")";
}

std::string famval_str(const FamVal& v, const std::string& param) {
    if (v.rep.is_zero_poly()) return "0";
    if (v.rep.deg() <= 0) return rf_str(v.rep.c[0], param);
    std::string out;
    for (int k = v.rep.deg(); k >= 0; --k) {
        const RF& c = v.rep.coeff(k);
        if (is_zero(c)) continue;
        std::string mono = k == 0 ? "" : (k == 1 ? "c" : "c^" + std::to_string(k));
        std::string cs = rf_str(c, param);
        if (cs == "1" && !mono.empty()) append_term(out, mono);
        else append_term(out, mono.empty() ? cs : cs + "*" + mono);
    }
    return out;
}

std::string paramval_str(const ParamVal& v, const std::string& param) {
    if (v.is_zero_val()) return "0";
    auto up_str = [&](const UPoly<AlgNum>& f) {
        std::string out;
        for (int i = f.deg(); i >= 0; --i) {
            AlgNum c = f.coeff(i);
            if (is_zero(c)) continue;
            std::string cs = alg_is_rational(c) ? alg_rational_value(c).str()
                                                : "(" + algnum_str(c) + ")";
            std::string mono = i == 0 ? "" : (i == 1 ? param : param + "^" + std::to_string(i));
            append_term(out, join_coeff_monomial(cs, mono));
        }
        return out.empty() ? std::string("0") : out;
    };
    std::string num = up_str(v.num);
    if (v.den.deg() <= 0) return v.num.deg() == 0 ? num : "(" + num + ")";
    return "(" + num + ")/(" + up_str(v.den) + ")";
}

} // namespace

std::string coeff_str(const Coeff& c, const std::string& param_name) {
    if (const Rat* q = std::get_if<Rat>(&c)) return q->str();
    if (const AlgNum* a = std::get_if<AlgNum>(&c)) return algnum_str(*a);
    if (const RF* f = std::get_if<RF>(&c)) return rf_str(*f, param_name.empty() ? "y0" : param_name);
    if (const FamVal* f = std::get_if<FamVal>(&c))
        return famval_str(*f, param_name.empty() ? "y0" : param_name);
    if (const ParamVal* f = std::get_if<ParamVal>(&c))
        return paramval_str(*f, param_name.empty() ? "c1" : param_name);
    return "?";
}

std::string truncation_str(const PuiseuxTruncation& t) {
    std::ostringstream os;
    std::string x = "x";
    if (!t.x_shift.is_zero()) {
        x = "(x - " + t.x_shift.str() + ")";
        if (t.x_shift.sign() < 0) x = "(x + " + (-t.x_shift).str() + ")";
    }
    std::string body;
    for (const auto& [e, c] : t.terms) {
        std::string cs = coeff_str(c, t.param_name);
        bool needs_parens = cs.find_first_of("+-", 1) != std::string::npos ||
                            cs.find('{') != std::string::npos || cs.find('/') != std::string::npos;
        if (needs_parens && !(cs[0] == '(' && cs.back() == ')')) cs = "(" + cs + ")";
        std::string mono = e.is_zero() ? "" : pow_str(x, e);
        append_term(body, join_coeff_monomial(cs, mono));
    }
    if (body.empty()) body = "0";
    os << "y(x) = " << body;
    if (t.exact) {
        os << "   (exact)";
    } else {
        if (t.point == ExpPoint::Zero)
            os << " + O(" << pow_str(x, t.truncation_order + Rat(1, t.ramification)) << ")";
        else
            os << " + O(" << pow_str(x, t.truncation_order) << ")";
    }
    if (!t.unique_extension) os << "   [extension not certified unique]";
    return os.str();
}

std::string family_str(const SolutionFamily& f) {
    std::ostringstream os;
    os << truncation_str(f.truncation);
    if (!f.constraints.empty()) {
        os << "   with ";
        bool first = true;
        for (const auto& p : f.constraints) {
            if (!first) os << ", ";
            first = false;
            if (p.deg() == 1 && p.coeff(0).is_zero()) os << "y0 != 0";
            else os << upoly_str(p, "y0") << " != 0";
        }
    }
    return os.str();
}

} // namespace aodes
