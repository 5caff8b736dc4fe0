#include "aodes/parser.hpp"

#include <cctype>

#include "aodes/printer.hpp"
#include "aodes/rootfind.hpp"

namespace aodes {
namespace {

enum class Tok { Num, YDer, TVar, XVar, Plus, Minus, Star, Caret, LParen, RParen, LBrack, RBrack,
                 Comma, Semi, Eq, AlgKw, End };

struct Token {
    Tok kind;
    Rat value;   // Num
    int deriv;   // YDer
    int line, col;
};

struct Lexer {
    const std::string& s;
    size_t pos = 0;
    int line = 1, col = 1;
    bool allow_t = false;  // inside alg(...) minimal polynomials
    bool allow_x = false;  // series input uses x as the indeterminate

    explicit Lexer(const std::string& text) : s(text) {}

    [[noreturn]] void err(const std::string& msg) const {
        fail(ErrorKind::Parse,
             "parse error at line " + std::to_string(line) + ", column " + std::to_string(col) +
                 ": " + msg);
    }

    void advance(size_t n = 1) {
        for (size_t i = 0; i < n && pos < s.size(); ++i) {
            if (s[pos] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++pos;
        }
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) advance();
    }

    Token next() {
        skip_ws();
        Token t;
        t.line = line;
        t.col = col;
        if (pos >= s.size()) {
            t.kind = Tok::End;
            return t;
        }
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) advance();
            std::string num = s.substr(start, pos - start);
            // a '/' directly followed by digits makes a rational literal
            if (pos < s.size() && s[pos] == '/' && pos + 1 < s.size() &&
                std::isdigit(static_cast<unsigned char>(s[pos + 1]))) {
                advance();
                size_t dstart = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) advance();
                num += "/" + s.substr(dstart, pos - dstart);
            }
            t.kind = Tok::Num;
            t.value = Rat::from_string(num);
            return t;
        }
        if (c == 'y') {
            advance();
            int k = 0;
            while (pos < s.size() && s[pos] == '\'') {
                ++k;
                advance();
            }
            if (k == 0 && pos + 1 < s.size() && s[pos] == '^' && s[pos + 1] == '(') {
                // y^(k): derivative notation
                size_t save = pos;
                int sline = line, scol = col;
                advance(2);
                size_t dstart = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) advance();
                if (pos < s.size() && s[pos] == ')' && dstart < pos) {
                    k = std::stoi(s.substr(dstart, pos - dstart));
                    advance();
                } else {
                    // not the derivative form; rewind
                    pos = save;
                    line = sline;
                    col = scol;
                }
            }
            t.kind = Tok::YDer;
            t.deriv = k;
            return t;
        }
        if (c == 'x') {
            if (!allow_x)
                fail(ErrorKind::Autonomy,
                     "the independent variable x must not appear (line " + std::to_string(line) +
                         ", column " + std::to_string(col) + ")");
            advance();
            t.kind = Tok::XVar;
            return t;
        }
        if (c == 't' && allow_t) {
            advance();
            t.kind = Tok::TVar;
            return t;
        }
        if (s.compare(pos, 4, "alg(") == 0) {
            advance(4);
            t.kind = Tok::AlgKw;
            return t;
        }
        switch (c) {
            case '+': advance(); t.kind = Tok::Plus; return t;
            case '-': advance(); t.kind = Tok::Minus; return t;
            case '*': advance(); t.kind = Tok::Star; return t;
            case '^': advance(); t.kind = Tok::Caret; return t;
            case '(': advance(); t.kind = Tok::LParen; return t;
            case ')': advance(); t.kind = Tok::RParen; return t;
            case '[': advance(); t.kind = Tok::LBrack; return t;
            case ']': advance(); t.kind = Tok::RBrack; return t;
            case ',': advance(); t.kind = Tok::Comma; return t;
            case ';': advance(); t.kind = Tok::Semi; return t;
            case '=': advance(); t.kind = Tok::Eq; return t;
            default: break;
        }
        err(std::string("unexpected character '") + c + "'");
    }
};

// recursive-descent over a token stream with one-token lookahead
struct Parser {
    Lexer lex;
    Token cur;
    const Limits& lim;
    int max_deriv_seen = 0;

    Parser(const std::string& text, const Limits& l, bool series_mode = false)
        : lex(text), lim(l) {
        lex.allow_t = series_mode;
        lex.allow_x = series_mode;
        cur = lex.next();
    }

    [[noreturn]] void err(const std::string& msg) const {
        fail(ErrorKind::Parse, "parse error at line " + std::to_string(cur.line) + ", column " +
                                   std::to_string(cur.col) + ": " + msg);
    }

    void eat(Tok k, const char* what) {
        if (cur.kind != k) err(std::string("expected ") + what);
        cur = lex.next();
    }

    int parse_int_exponent() {
        if (cur.kind != Tok::Num || !cur.value.is_integer() || cur.value.sign() < 0)
            err("expected a non-negative integer exponent");
        long e = cur.value.num().get_si();
        if (e > 64) err("exponent too large");
        cur = lex.next();
        return static_cast<int>(e);
    }

    // polynomial expressions over MP in the y-derivative variables
    MP parse_expr() {
        bool neg = false;
        if (cur.kind == Tok::Minus) {
            neg = true;
            cur = lex.next();
        } else if (cur.kind == Tok::Plus) {
            cur = lex.next();
        }
        MP acc = parse_term();
        if (neg) acc = -acc;
        while (cur.kind == Tok::Plus || cur.kind == Tok::Minus) {
            bool minus = cur.kind == Tok::Minus;
            cur = lex.next();
            MP t = parse_term();
            acc = minus ? acc - t : acc + t;
        }
        return acc;
    }

    MP parse_term() {
        MP acc = parse_factor();
        while (cur.kind == Tok::Star) {
            cur = lex.next();
            acc = acc * parse_factor();
        }
        return acc;
    }

    MP parse_factor() {
        MP base = parse_primary();
        if (cur.kind == Tok::Caret) {
            cur = lex.next();
            int e = parse_int_exponent();
            base = base.pow(e);
        }
        return base;
    }

    MP parse_primary() {
        if (cur.kind == Tok::Num) {
            MP c = MP::constant(cur.value, 1);
            cur = lex.next();
            return c;
        }
        if (cur.kind == Tok::YDer) {
            int k = cur.deriv;
            check(k <= lim.max_order, ErrorKind::OrderLimit,
                  "derivative order " + std::to_string(k) + " exceeds the configured maximum " +
                      std::to_string(lim.max_order));
            max_deriv_seen = std::max(max_deriv_seen, k);
            cur = lex.next();
            return MP::var(k, k + 1, Rat(1));
        }
        if (cur.kind == Tok::Minus) {
            cur = lex.next();
            return -parse_primary();
        }
        if (cur.kind == Tok::LParen) {
            cur = lex.next();
            MP e = parse_expr();
            eat(Tok::RParen, "')'");
            return e;
        }
        err("expected a number, y-term or parenthesized expression");
    }
};

} // namespace

SourceSystem parse_system(const std::string& text, const Limits& lim) {
    Parser p(text, lim);
    std::vector<MP> eqs;
    while (true) {
        MP lhs = p.parse_expr();
        p.eat(Tok::Eq, "'='");
        MP rhs = p.parse_expr();
        MP eq = lhs - rhs;
        check(!eq.is_zero_poly(), ErrorKind::Parse, "equation is identically zero");
        check(!eq.is_constant(), ErrorKind::Parse, "equation has no solutions (non-zero constant)");
        eqs.push_back(std::move(eq));
        if (p.cur.kind == Tok::Semi) {
            p.cur = p.lex.next();
            if (p.cur.kind == Tok::End) break;  // trailing semicolon
            continue;
        }
        if (p.cur.kind == Tok::End) break;
        p.err("expected ';' or end of input");
    }
    SourceSystem src;
    src.raw_text = text;
    src.max_derivative = p.max_deriv_seen;
    src.equation_count = static_cast<int>(eqs.size());
    int order = std::max(1, p.max_deriv_seen);
    src.parsed = DiffSystem::make(std::move(eqs), order);
    return src;
}

std::string print_system(const DiffSystem& S) {
    std::string out;
    for (size_t i = 0; i < S.eqs.size(); ++i) {
        if (i) out += "; ";
        out += mp_str(S.eqs[i], true) + " = 0";
    }
    return out;
}

namespace {

UPoly<Rat> parse_t_poly(Parser& p) {
    // polynomial in t over the rationals, reusing the arithmetic on UPoly
    struct TP {
        static UPoly<Rat> expr(Parser& p) {
            bool neg = false;
            if (p.cur.kind == Tok::Minus) {
                neg = true;
                p.cur = p.lex.next();
            }
            UPoly<Rat> acc = term(p);
            if (neg) acc = -acc;
            while (p.cur.kind == Tok::Plus || p.cur.kind == Tok::Minus) {
                bool minus = p.cur.kind == Tok::Minus;
                p.cur = p.lex.next();
                UPoly<Rat> t = term(p);
                acc = minus ? acc - t : acc + t;
            }
            return acc;
        }
        static UPoly<Rat> term(Parser& p) {
            UPoly<Rat> acc = factor(p);
            while (p.cur.kind == Tok::Star) {
                p.cur = p.lex.next();
                acc = acc * factor(p);
            }
            return acc;
        }
        static UPoly<Rat> factor(Parser& p) {
            UPoly<Rat> base = primary(p);
            if (p.cur.kind == Tok::Caret) {
                p.cur = p.lex.next();
                int e = p.parse_int_exponent();
                UPoly<Rat> r = UPoly<Rat>::constant(Rat(1));
                for (int i = 0; i < e; ++i) r = r * base;
                return r;
            }
            return base;
        }
        static UPoly<Rat> primary(Parser& p) {
            if (p.cur.kind == Tok::Num) {
                UPoly<Rat> c = UPoly<Rat>::constant(p.cur.value);
                p.cur = p.lex.next();
                return c;
            }
            if (p.cur.kind == Tok::TVar) {
                p.cur = p.lex.next();
                return UPoly<Rat>::monomial(Rat(1), 1);
            }
            if (p.cur.kind == Tok::Minus) {
                p.cur = p.lex.next();
                return -primary(p);
            }
            if (p.cur.kind == Tok::LParen) {
                p.cur = p.lex.next();
                UPoly<Rat> e = expr(p);
                p.eat(Tok::RParen, "')'");
                return e;
            }
            p.err("expected a polynomial in t");
        }
    };
    return TP::expr(p);
}

Rat parse_rational_value(Parser& p) {
    bool neg = false;
    if (p.cur.kind == Tok::Minus) {
        neg = true;
        p.cur = p.lex.next();
    }
    if (p.cur.kind != Tok::Num) p.err("expected a rational number");
    Rat v = p.cur.value;
    p.cur = p.lex.next();
    return neg ? -v : v;
}

} // namespace

PuiseuxTruncation parse_truncation(const std::string& text, const Limits& lim) {
    Parser p(text, lim, /*series_mode=*/true);
    PuiseuxTruncation t;
    t.truncation_order = Rat(0);
    bool first = true;
    while (p.cur.kind != Tok::End) {
        bool neg = false;
        if (p.cur.kind == Tok::Minus) {
            neg = true;
            p.cur = p.lex.next();
        } else if (p.cur.kind == Tok::Plus) {
            p.cur = p.lex.next();
        } else if (!first) {
            p.err("expected '+' or '-' between series terms");
        }
        first = false;
        // coefficient
        Coeff coeff = Rat(1);
        bool have_coeff = false;
        if (p.cur.kind == Tok::Num) {
            coeff = p.cur.value;
            have_coeff = true;
            p.cur = p.lex.next();
        } else if (p.cur.kind == Tok::AlgKw) {
            p.eat(Tok::AlgKw, "alg(");
            UPoly<Rat> m = parse_t_poly(p);
            p.eat(Tok::Comma, "','");
            p.eat(Tok::LBrack, "'['");
            Rat lo = parse_rational_value(p);
            p.eat(Tok::Comma, "','");
            Rat hi = parse_rational_value(p);
            p.eat(Tok::RBrack, "']'");
            p.eat(Tok::RParen, "')'");
            check(m.deg() >= 1, ErrorKind::Parse, "alg() needs a non-constant minimal polynomial");
            RootSelector sel;
            sel.real = true;
            sel.lo = lo;
            sel.hi = hi;
            auto field = make_number_field(monic(m), sel);
            coeff = AlgNum::generator(field);
            have_coeff = true;
        }
        // optional monomial
        Rat expnt(0);
        bool have_x = false;
        if (p.cur.kind == Tok::Star) {
            p.cur = p.lex.next();
            if (p.cur.kind != Tok::XVar) p.err("expected x after '*'");
        }
        if (p.cur.kind == Tok::XVar) {
            have_x = true;
            expnt = Rat(1);
            p.cur = p.lex.next();
            if (p.cur.kind == Tok::Caret) {
                p.cur = p.lex.next();
                if (p.cur.kind == Tok::LParen) {
                    p.cur = p.lex.next();
                    expnt = parse_rational_value(p);
                    p.eat(Tok::RParen, "')'");
                } else {
                    expnt = parse_rational_value(p);
                }
            }
        }
        if (!have_coeff && !have_x) p.err("expected a series term");
        if (neg) {
            if (Rat* q = std::get_if<Rat>(&coeff)) coeff = -*q;
            else coeff = -std::get<AlgNum>(coeff);
        }
        bool zero = std::visit([](const auto& v) { return is_zero(v); }, coeff);
        if (!zero) t.terms.emplace_back(expnt, coeff);
        if (expnt > t.truncation_order) t.truncation_order = expnt;
    }
    std::sort(t.terms.begin(), t.terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Int l(1);
    for (const auto& [e, c] : t.terms) l = int_lcm(l, e.den());
    t.ramification = static_cast<long>(l.get_si());
    return t;
}

} // namespace aodes
