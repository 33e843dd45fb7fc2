#include "tcert/io.hpp"

#include <cctype>
#include <sstream>

namespace tcert {

namespace {

enum class Tok { Num, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }
    const Token& peek() const { return cur_; }
    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ >= s_.size()) {
            cur_ = {Tok::End, ""};
            return;
        }
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            cur_ = {Tok::Num, s_.substr(start, pos_ - start)};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                        s_[pos_] == '_'))
                ++pos_;
            cur_ = {Tok::Ident, s_.substr(start, pos_ - start)};
            return;
        }
        ++pos_;
        switch (c) {
        case '+': cur_ = {Tok::Plus, "+"}; return;
        case '-': cur_ = {Tok::Minus, "-"}; return;
        case '*': cur_ = {Tok::Star, "*"}; return;
        case '/': cur_ = {Tok::Slash, "/"}; return;
        case '^': cur_ = {Tok::Caret, "^"}; return;
        case '(': cur_ = {Tok::LParen, "("}; return;
        case ')': cur_ = {Tok::RParen, ")"}; return;
        default: throw input_error(std::string("unexpected character '") + c + "' in expression");
        }
    }
    const std::string& s_;
    std::size_t pos_ = 0;
    Token cur_{Tok::End, ""};
};

class Parser {
public:
    Parser(const std::string& text, CtxPtr ctx) : lex_(text), ctx_(std::move(ctx)) {}

    Polynomial run() {
        Polynomial p = expr();
        if (lex_.peek().kind != Tok::End)
            throw input_error("trailing input after expression: '" + lex_.peek().text + "'");
        return p;
    }

private:
    Polynomial expr() {
        bool neg = false;
        if (lex_.peek().kind == Tok::Minus) {
            lex_.take();
            neg = true;
        }
        Polynomial acc = term();
        if (neg) acc = -acc;
        while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
            bool minus = lex_.take().kind == Tok::Minus;
            Polynomial t = term();
            acc = minus ? acc - t : acc + t;
        }
        return acc;
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (lex_.peek().kind == Tok::Star || lex_.peek().kind == Tok::Slash) {
            bool div = lex_.take().kind == Tok::Slash;
            Polynomial f = factor();
            if (div) {
                Coefficient c = as_coefficient(f, "the right operand of '/'");
                if (c.is_zero()) throw input_error("division by zero");
                acc = scale(acc, coeff_inv(c, *ctx_));
            } else {
                acc = acc * f;
            }
        }
        return acc;
    }

    Polynomial factor() {
        Polynomial a = atom();
        if (lex_.peek().kind == Tok::Caret) {
            lex_.take();
            if (lex_.peek().kind == Tok::Minus)
                throw input_error("negative exponents are not allowed");
            if (lex_.peek().kind != Tok::Num)
                throw input_error("exponent must be a nonnegative integer literal");
            std::string digits = lex_.take().text;
            if (digits.size() > 18) throw input_error("exponent overflow");
            a = poly_pow(a, std::stoll(digits));
        }
        return a;
    }

    Polynomial atom() {
        const Token& t = lex_.peek();
        switch (t.kind) {
        case Tok::Num: {
            BigInt v(lex_.take().text);
            return Polynomial::constant(ctx_, BigRat(v));
        }
        case Tok::Ident: {
            std::string name = lex_.take().text;
            if (ctx_->var_index(name)) return Polynomial::variable(ctx_, name);
            if (ctx_->param_index(name)) return Polynomial::parameter(ctx_, name);
            throw input_error("unknown identifier: '" + name + "'");
        }
        case Tok::LParen: {
            lex_.take();
            Polynomial p = expr();
            if (lex_.peek().kind != Tok::RParen) throw input_error("expected ')'");
            lex_.take();
            return p;
        }
        case Tok::Minus:
            throw input_error("unexpected '-' (unary minus is only allowed at the start of an "
                              "expression or parenthesized group)");
        default:
            throw input_error("unexpected token '" + t.text + "' in expression");
        }
    }

    Coefficient as_coefficient(const Polynomial& p, const char* what) {
        if (p.is_zero()) return Coefficient::from_int(*ctx_, 0);
        if (p.term_count() != 1 || term_total_degree(p.terms().begin()->first) != 0)
            throw input_error(std::string(what) + " must be constant in the variables");
        return p.terms().begin()->second;
    }

    Lexer lex_;
    CtxPtr ctx_;
};

} // namespace

Polynomial parse_poly(const std::string& text, const CtxPtr& ctx) {
    if (!ctx) throw input_error("parse requires a context");
    return Parser(text, ctx).run();
}

Coefficient parse_coeff(const std::string& text, const CtxPtr& ctx) {
    Polynomial p = parse_poly(text, ctx);
    if (p.is_zero()) return Coefficient::from_int(*ctx, 0);
    if (p.term_count() != 1 || term_total_degree(p.terms().begin()->first) != 0)
        throw input_error("variables are not allowed in a coefficient expression");
    return p.terms().begin()->second;
}

std::string rat_string(const BigRat& q) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(q);
    if (boost::multiprecision::denominator(q) != 1)
        os << "/" << boost::multiprecision::denominator(q);
    return os.str();
}

namespace {

// One parameter-monomial with |coeff|, e.g. "2*pi^2*q"; "1" when trivial.
std::string pp_term_magnitude(const Exp& e, const BigRat& c, const VarContext& ctx) {
    BigRat a = c < 0 ? BigRat(-c) : c;
    std::vector<std::string> parts;
    if (a != 1) parts.push_back(rat_string(a));
    for (std::size_t j = 0; j < e.size(); ++j) {
        if (e[j] == 0) continue;
        std::string f = ctx.param_name(j);
        if (e[j] != 1) f += "^" + std::to_string(e[j]);
        parts.push_back(std::move(f));
    }
    if (parts.empty()) return "1";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out += "*" + parts[i];
    return out;
}

std::vector<std::pair<const Exp*, const BigRat*>> pp_sorted(const ParamPoly& p) {
    std::vector<std::pair<const Exp*, const BigRat*>> v;
    v.reserve(p.terms.size());
    for (const auto& [e, c] : p.terms) v.emplace_back(&e, &c);
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
        return pexp_compare(*a.first, *b.first) == std::strong_ordering::greater;
    });
    return v;
}

} // namespace

std::string format_param_poly(const ParamPoly& p, const VarContext& ctx) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : pp_sorted(p)) {
        bool neg = *c < 0;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        out += pp_term_magnitude(*e, *c, ctx);
    }
    return out;
}

std::string format_monomial(const Exp& e, const VarContext& ctx) {
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        std::string f = ctx.var_name(i);
        if (e[i] != 1) f += "^" + std::to_string(e[i]);
        parts.push_back(std::move(f));
    }
    if (parts.empty()) return "1";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out += "*" + parts[i];
    return out;
}

namespace {

// Magnitude text of a coefficient whose numerator leading coefficient is
// positive; valid as a leading factor sequence of a term.
std::string coeff_magnitude(const Coefficient& c, const VarContext& ctx) {
    std::string num;
    if (c.num.terms.size() == 1) {
        num = pp_term_magnitude(c.num.terms.begin()->first, c.num.terms.begin()->second, ctx);
    } else {
        num = "(" + format_param_poly(c.num, ctx) + ")";
    }
    if (c.den.is_constant() && c.den.constant_value() == 1) return num;
    std::string den;
    if (c.den.terms.size() == 1) {
        const auto& [e, v] = *c.den.terms.begin();
        int nsym = 0;
        for (auto x : e)
            if (x > 0) ++nsym;
        bool simple = (nsym == 0) || (nsym == 1 && v == 1);
        den = pp_term_magnitude(e, v, ctx);
        if (!simple) den = "(" + den + ")";
    } else {
        den = "(" + format_param_poly(c.den, ctx) + ")";
    }
    return num + "/" + den;
}

} // namespace

std::string format_coeff(const Coefficient& c, const VarContext& ctx) {
    if (c.is_zero()) return "0";
    if (c.sign() < 0) return "-" + coeff_magnitude(coeff_neg(c, ctx), ctx);
    return coeff_magnitude(c, ctx);
}

std::string format_poly(const Polynomial& f, const MonomialOrder& ord) {
    if (!same_context(f.ctx(), ord.ctx()))
        throw input_error("context mismatch in format_poly");
    if (f.is_zero()) return "0";
    const auto& ctx = *f.ctx();

    // Single constant term over a trivial denominator reads best unwrapped.
    if (f.term_count() == 1) {
        const auto& [e, c] = *f.terms().begin();
        if (term_total_degree(e) == 0 && c.den.is_constant() && c.den.constant_value() == 1 &&
            c.num.terms.size() > 1)
            return format_param_poly(c.num, ctx);
    }

    std::vector<const Exp*> order;
    order.reserve(f.term_count());
    for (const auto& [e, c] : f.terms()) order.push_back(&e);
    std::sort(order.begin(), order.end(), [&](const Exp* a, const Exp* b) {
        return ord.compare(*a, *b) == std::strong_ordering::greater;
    });

    std::string out;
    bool first = true;
    for (const Exp* e : order) {
        const Coefficient& c = f.terms().at(*e);
        bool neg = c.sign() < 0;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        Coefficient mag = neg ? coeff_neg(c, ctx) : c;
        bool trivial_mono = term_total_degree(*e) == 0;
        if (trivial_mono) {
            out += coeff_magnitude(mag, ctx);
        } else if (mag.is_one()) {
            out += format_monomial(*e, ctx);
        } else {
            out += coeff_magnitude(mag, ctx) + "*" + format_monomial(*e, ctx);
        }
    }
    return out;
}

std::string format_poly(const Polynomial& f) {
    return format_poly(f, MonomialOrder::grlex(f.ctx()));
}

} // namespace tcert
