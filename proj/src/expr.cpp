#include "qk/expr.hpp"

#include <cctype>
#include <sstream>

#include "qk/point.hpp"

namespace qk {

// ------------------------------------------------------------------ printing

std::string monomial_str(const Monomial& m, const RingConfig& cfg) {
    std::ostringstream os;
    bool first = true;
    for (size_t g = 0; g < m.size(); ++g) {
        if (m[g] == 0) continue;
        if (!first) os << "*";
        first = false;
        os << cfg.generator_name(static_cast<int>(g));
        if (m[g] > 1) os << "^" << m[g];
    }
    return os.str();
}

namespace {

std::string term_str(const Monomial& mono, const Rat& c, const RingConfig& cfg) {
    std::string ms = monomial_str(mono, cfg);
    if (ms.empty()) return rat_str(c);
    if (c == 1) return ms;
    if (c == -1) return "-" + ms;
    return rat_str(c) + "*" + ms;
}

void join_signed(std::ostringstream& os, bool& first, const std::string& body) {
    if (first) {
        os << body;
        first = false;
        return;
    }
    if (!body.empty() && body[0] == '-')
        os << " - " << body.substr(1);
    else
        os << " + " << body;
}

}  // namespace

std::string lambda_str(const LambdaElem& e) {
    if (e.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mono, c] : e.terms()) join_signed(os, first, term_str(mono, c, *e.config()));
    return os.str();
}

std::string laurent_str(const LaurentPoly& p) {
    if (p.rank() != 1) throw error("laurent_str: rank-1 only");
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, v] : p.terms()) {
        const LambdaElem& c = v[0];
        std::string body =
            c.terms().size() > 1 ? "(" + lambda_str(c) + ")" : term_str(c.terms().begin()->first, c.terms().begin()->second, *c.config());
        std::string qpart;
        if (e != 0) {
            qpart = "q";
            if (e != 1) qpart += "^" + std::to_string(e);
        }
        std::string full;
        if (qpart.empty())
            full = body;
        else if (body == "1")
            full = qpart;
        else if (body == "-1")
            full = "-" + qpart;
        else
            full = body + "*" + qpart;
        join_signed(os, first, full);
    }
    return os.str();
}

std::string loop_str(const RationalLoop& f) {
    if (f.is_zero()) return "0";
    if (f.is_polynomial()) return laurent_str(f.num());
    return "(" + laurent_str(f.num()) + ")/(" + f.den().str("q") + ")";
}

std::string kvector_str(const KVector& v) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < v.rank(); ++i) {
        if (i) os << ", ";
        os << lambda_str(v[i]);
    }
    os << "]";
    return os.str();
}

// -------------------------------------------------------------------- lexing

namespace {

struct Token {
    enum class T { Int, Name, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };
    T t;
    std::string text;
    int line = 1, col = 1;
};

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto push = [&](Token::T t, std::string text) { out.push_back({t, std::move(text), line, col}); };
    while (i < src.size()) {
        char ch = src[i];
        if (ch == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (isspace(static_cast<unsigned char>(ch))) {
            ++col;
            ++i;
            continue;
        }
        int start_col = col;
        if (isdigit(static_cast<unsigned char>(ch))) {
            size_t j = i;
            while (j < src.size() && isdigit(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Token::T::Int, src.substr(i, j - i), line, start_col});
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (isalpha(static_cast<unsigned char>(ch))) {
            size_t j = i;
            while (j < src.size() && (isalnum(static_cast<unsigned char>(src[j])))) ++j;
            out.push_back({Token::T::Name, src.substr(i, j - i), line, start_col});
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        switch (ch) {
            case '+': push(Token::T::Plus, "+"); break;
            case '-': push(Token::T::Minus, "-"); break;
            case '*': push(Token::T::Star, "*"); break;
            case '/': push(Token::T::Slash, "/"); break;
            case '^': push(Token::T::Caret, "^"); break;
            case '(': push(Token::T::LParen, "("); break;
            case ')': push(Token::T::RParen, ")"); break;
            case ',': push(Token::T::Comma, ","); break;
            default:
                throw parse_error(std::string("unexpected character '") + ch + "'", line, col);
        }
        ++col;
        ++i;
    }
    out.push_back({Token::T::End, "", line, col});
    return out;
}

struct Parser {
    const std::vector<Token>& toks;
    size_t pos = 0;

    const Token& peek() const { return toks[pos]; }
    Token take() { return toks[pos++]; }
    bool at(Token::T t) const { return toks[pos].t == t; }
    Token expect(Token::T t, const std::string& what) {
        if (!at(t)) throw parse_error("expected " + what, peek().line, peek().col);
        return take();
    }

    ElementExpr parse_expr() {
        ElementExpr lhs;
        if (at(Token::T::Minus)) {
            Token m = take();
            lhs = ElementExpr();
            lhs.kind = ElementExpr::Kind::Neg;
            lhs.line = m.line;
            lhs.col = m.col;
            lhs.args.push_back(parse_term());
        } else {
            lhs = parse_term();
        }
        while (at(Token::T::Plus) || at(Token::T::Minus)) {
            Token op = take();
            ElementExpr node;
            node.kind = op.t == Token::T::Plus ? ElementExpr::Kind::Add : ElementExpr::Kind::Sub;
            node.line = op.line;
            node.col = op.col;
            node.args.push_back(std::move(lhs));
            node.args.push_back(parse_term());
            lhs = std::move(node);
        }
        return lhs;
    }

    ElementExpr parse_term() {
        ElementExpr lhs = parse_factor();
        while (at(Token::T::Star) || at(Token::T::Slash)) {
            Token op = take();
            ElementExpr node;
            node.kind = op.t == Token::T::Star ? ElementExpr::Kind::Mul : ElementExpr::Kind::Div;
            node.line = op.line;
            node.col = op.col;
            node.args.push_back(std::move(lhs));
            node.args.push_back(parse_factor());
            lhs = std::move(node);
        }
        return lhs;
    }

    ElementExpr parse_factor() {
        ElementExpr base = parse_base();
        if (!at(Token::T::Caret)) return base;
        Token op = take();
        bool negative = false;
        if (at(Token::T::Minus)) {
            take();
            negative = true;
        }
        Token n = expect(Token::T::Int, "an integer exponent");
        long v;
        try {
            v = std::stol(n.text);
        } catch (...) {
            throw parse_error("exponent out of range", n.line, n.col);
        }
        ElementExpr node;
        node.kind = ElementExpr::Kind::Pow;
        node.line = op.line;
        node.col = op.col;
        node.exponent = static_cast<int>(negative ? -v : v);
        node.args.push_back(std::move(base));
        return node;
    }

    ElementExpr parse_base() {
        const Token& tk = peek();
        if (tk.t == Token::T::Int) {
            Token t = take();
            ElementExpr node;
        node.kind = ElementExpr::Kind::Number;
            node.number = rat_parse(t.text);
            node.line = t.line;
            node.col = t.col;
            return node;
        }
        if (tk.t == Token::T::LParen) {
            take();
            ElementExpr inner = parse_expr();
            expect(Token::T::RParen, "')'");
            return inner;
        }
        if (tk.t == Token::T::Name) {
            Token name = take();
            if (at(Token::T::LParen)) {
                take();
                ElementExpr node;
        node.kind = ElementExpr::Kind::Call;
                node.name = name.text;
                node.line = name.line;
                node.col = name.col;
                node.args.push_back(parse_expr());
                while (at(Token::T::Comma)) {
                    take();
                    node.args.push_back(parse_expr());
                }
                expect(Token::T::RParen, "')'");
                return node;
            }
            ElementExpr node;
        node.kind = ElementExpr::Kind::Name;
            node.name = name.text;
            node.line = name.line;
            node.col = name.col;
            return node;
        }
        throw parse_error("expected a number, name, or '('", tk.line, tk.col);
    }
};

}  // namespace

ElementExpr parse_element(const std::string& src) {
    std::vector<Token> toks = lex(src);
    Parser p{toks};
    ElementExpr e = p.parse_expr();
    if (!p.at(Token::T::End))
        throw parse_error("unexpected trailing input", p.peek().line, p.peek().col);
    return e;
}

// --------------------------------------------------------------- elaboration

RationalLoop Value::as_loop() const {
    if (is_lambda()) return RationalLoop::from_lambda(lambda());
    return loop();
}

std::string Value::str() const { return is_lambda() ? lambda_str(lambda()) : loop_str(loop()); }

namespace {

std::string at(const ElementExpr& e) {
    return std::to_string(e.line) + ":" + std::to_string(e.col) + ": ";
}

Value v_add(const Value& a, const Value& b, bool sub) {
    if (a.is_lambda() && b.is_lambda())
        return {sub ? a.lambda() - b.lambda() : a.lambda() + b.lambda()};
    RationalLoop r = sub ? a.as_loop() - b.as_loop() : a.as_loop() + b.as_loop();
    return {std::move(r)};
}

Value v_mul(const Value& a, const Value& b) {
    if (a.is_lambda() && b.is_lambda()) return {a.lambda() * b.lambda()};
    if (a.is_lambda()) return {b.loop().scaled(a.lambda())};
    if (b.is_lambda()) return {a.loop().scaled(b.lambda())};
    return {mul(a.loop(), b.loop())};
}

Value v_div(const ElementExpr& where, const Value& a, const Value& b) {
    if (b.is_lambda()) {
        LambdaElem inv;
        try {
            inv = inverse_unit(b.lambda());
        } catch (const error&) {
            throw semantic_error(at(where) + "non-unit divisor");
        }
        if (a.is_lambda()) return {a.lambda() * inv};
        return {a.loop().scaled(inv)};
    }
    RationalLoop recip;
    try {
        recip = reciprocal(b.loop());
    } catch (const error& e) {
        throw semantic_error(at(where) + e.what());
    }
    return v_mul(a, Value{std::move(recip)});
}

Value v_pow(const ElementExpr& where, const Value& a, int n) {
    if (a.is_lambda()) {
        try {
            return {pow(a.lambda(), n)};
        } catch (const error&) {
            throw semantic_error(at(where) + "negative power of a non-unit");
        }
    }
    RationalLoop base = a.loop();
    if (n < 0) {
        try {
            base = reciprocal(base);
        } catch (const error& e) {
            throw semantic_error(at(where) + e.what());
        }
        n = -n;
    }
    RationalLoop out(1);
    bool have_cfg = false;
    for (const auto& [e, v] : base.num().terms())
        if (v[0].config()) {
            out = RationalLoop::one(v[0].config());
            have_cfg = true;
            break;
        }
    if (!have_cfg) throw semantic_error(at(where) + "cannot raise an empty loop to a power");
    for (int i = 0; i < n; ++i) out = mul(out, base);
    return {std::move(out)};
}

}  // namespace

Value elaborate(const ElementExpr& e, const ConfigPtr& cfg) {
    switch (e.kind) {
        case ElementExpr::Kind::Number:
            return {LambdaElem(cfg, e.number)};
        case ElementExpr::Kind::Name: {
            if (e.name == "q") return {RationalLoop(LaurentPoly::q_power(cfg, 1))};
            int g = cfg->generator_index(e.name);
            if (g < 0) throw semantic_error(at(e) + "unknown name '" + e.name + "'");
            return {LambdaElem::generator(cfg, g)};
        }
        case ElementExpr::Kind::Neg: {
            Value a = elaborate(e.args[0], cfg);
            if (a.is_lambda()) return {-a.lambda()};
            return {-a.loop()};
        }
        case ElementExpr::Kind::Add:
            return v_add(elaborate(e.args[0], cfg), elaborate(e.args[1], cfg), false);
        case ElementExpr::Kind::Sub:
            return v_add(elaborate(e.args[0], cfg), elaborate(e.args[1], cfg), true);
        case ElementExpr::Kind::Mul:
            return v_mul(elaborate(e.args[0], cfg), elaborate(e.args[1], cfg));
        case ElementExpr::Kind::Div:
            return v_div(e, elaborate(e.args[0], cfg), elaborate(e.args[1], cfg));
        case ElementExpr::Kind::Pow:
            return v_pow(e, elaborate(e.args[0], cfg), e.exponent);
        case ElementExpr::Kind::Call:
            break;
    }
    // function heads
    const std::string& f = e.name;
    auto arity = [&](size_t n) {
        if (e.args.size() != n)
            throw semantic_error(at(e) + f + " expects " + std::to_string(n) + " argument(s)");
    };
    auto lambda_arg = [&](size_t i) {
        Value v = elaborate(e.args[i], cfg);
        if (!v.is_lambda()) {
            // demote a loop that is constant in q
            const RationalLoop& L = v.loop();
            if (L.is_zero()) return LambdaElem(cfg);
            if (L.is_polynomial() && L.num().terms().size() == 1 && L.num().terms().begin()->first == 0)
                return L.num().terms().begin()->second[0];
            throw semantic_error(at(e.args[i]) + f + ": argument must be constant in q");
        }
        return v.lambda();
    };
    if (f == "exp") {
        arity(1);
        Value a = elaborate(e.args[0], cfg);
        try {
            if (a.is_lambda()) return {exp_filtered(a.lambda())};
            return {exp_loop(a.loop(), cfg)};
        } catch (const error& err) {
            throw semantic_error(at(e) + err.what());
        }
    }
    if (f == "log") {
        arity(1);
        try {
            return {log_filtered(lambda_arg(0))};
        } catch (const semantic_error&) {
            throw;
        } catch (const error& err) {
            throw semantic_error(at(e) + err.what());
        }
    }
    if (f.size() > 3 && f.compare(0, 3, "psi") == 0) {
        bool digits = true;
        for (size_t i = 3; i < f.size(); ++i)
            if (!isdigit(static_cast<unsigned char>(f[i]))) digits = false;
        if (digits) {
            arity(1);
            int k = std::stoi(f.substr(3));
            try {
                return {adams(k, lambda_arg(0))};
            } catch (const semantic_error&) {
                throw;
            } catch (const error& err) {
                throw semantic_error(at(e) + err.what());
            }
        }
    }
    if (f == "J" || f == "S" || f == "Sinv") {
        arity(2);
        LambdaElem tau = lambda_arg(0), t = lambda_arg(1);
        if (!tau.config()) tau = LambdaElem(cfg);
        if (!t.config()) t = LambdaElem(cfg);
        try {
            TheoryParams p(tau, t);
            if (f == "J") return {j_function(p)};
            SOperators ops = s_operators(p);
            return {f == "S" ? ops.S : ops.S_inv};
        } catch (const error& err) {
            throw semantic_error(at(e) + err.what());
        }
    }
    throw semantic_error(at(e) + "unknown function '" + f + "'");
}

Value parse_value(const std::string& src, const ConfigPtr& cfg) {
    return elaborate(parse_element(src), cfg);
}

LambdaElem parse_lambda(const std::string& src, const ConfigPtr& cfg) {
    Value v = parse_value(src, cfg);
    if (v.is_lambda()) return v.lambda();
    const RationalLoop& L = v.loop();
    if (L.is_zero()) return LambdaElem(cfg);
    if (L.is_polynomial() && L.num().terms().size() == 1 && L.num().terms().begin()->first == 0)
        return L.num().terms().begin()->second[0];
    throw semantic_error("expected an element constant in q: " + src);
}

}  // namespace qk
