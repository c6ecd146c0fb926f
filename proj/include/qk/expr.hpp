#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "qk/loop.hpp"
#include "qk/ring.hpp"

namespace qk {

// ------------------------------------------------------------------ printing
// Canonical text forms; printing any parsed element and re-parsing yields an
// equal element.

std::string monomial_str(const Monomial& m, const RingConfig& cfg);
std::string lambda_str(const LambdaElem& e);
std::string laurent_str(const LaurentPoly& p);   // rank 1
std::string loop_str(const RationalLoop& f);     // rank 1
std::string kvector_str(const KVector& v);       // diagnostic bracket form

// ------------------------------------------------------------------- parsing

struct parse_error : error {
    int line, col;
    parse_error(const std::string& msg, int line_in, int col_in)
        : error(std::to_string(line_in) + ":" + std::to_string(col_in) + ": " + msg),
          line(line_in),
          col(col_in) {}
};

struct semantic_error : error {
    using error::error;
};

// Abstract syntax over literals, generators, arithmetic, and function heads
// (exp, log, psi<k>, J, S, Sinv).
struct ElementExpr {
    enum class Kind { Number, Name, Add, Sub, Mul, Div, Pow, Neg, Call };
    Kind kind = Kind::Number;
    Rat number;
    std::string name;                 // Name / Call
    std::vector<ElementExpr> args;    // operands
    int exponent = 0;                 // Pow
    int line = 1, col = 1;
};

ElementExpr parse_element(const std::string& src);

// A parsed value is either a Lambda element or a (rank-1) rational loop.
struct Value {
    std::variant<LambdaElem, RationalLoop> v;
    bool is_lambda() const { return std::holds_alternative<LambdaElem>(v); }
    const LambdaElem& lambda() const { return std::get<LambdaElem>(v); }
    const RationalLoop& loop() const { return std::get<RationalLoop>(v); }
    RationalLoop as_loop() const;  // promote a Lambda constant
    std::string str() const;
};

Value elaborate(const ElementExpr& ast, const ConfigPtr& cfg);

Value parse_value(const std::string& src, const ConfigPtr& cfg);
// Requires the result to be constant in q.
LambdaElem parse_lambda(const std::string& src, const ConfigPtr& cfg);

}  // namespace qk
