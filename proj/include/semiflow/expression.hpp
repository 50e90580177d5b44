#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "semiflow/types.hpp"

namespace semiflow {

enum class ExprOp { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Log, Exp, Sqrt };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable expression tree over one complex variable z.
// All branch functions (log, sqrt, pow) take principal values.
struct Expr {
    ExprOp op;
    Cplx value{};  // Const only
    ExprPtr a;
    ExprPtr b;

    static ExprPtr constant(Cplx v);
    static ExprPtr var();
    static ExprPtr unary(ExprOp op, ExprPtr a);
    static ExprPtr binary(ExprOp op, ExprPtr a, ExprPtr b);
};

Cplx eval_expr(const Expr& e, Cplx z);

// Parenthesized-as-needed text that parses back to an equivalent tree.
std::string to_string(const Expr& e);

// Parses one expression covering text[start..]; trailing input is an error.
// ParseError offsets refer to positions in the full `text`.
ExprPtr parse_expression(std::string_view text, std::size_t start = 0);

// Scans a complex literal with optional leading sign and "a+bi" sum sugar
// ("2", "-0.5i", "1+0.5i") starting at *pos; advances *pos past it.
Cplx parse_complex_value(std::string_view text, std::size_t* pos);

}  // namespace semiflow
