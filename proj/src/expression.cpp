#include "semiflow/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>

namespace semiflow {

ExprPtr Expr::constant(Cplx v) {
    auto e = std::make_shared<Expr>();
    e->op = ExprOp::Const;
    e->value = v;
    return e;
}

ExprPtr Expr::var() {
    auto e = std::make_shared<Expr>();
    e->op = ExprOp::Var;
    return e;
}

ExprPtr Expr::unary(ExprOp op, ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->op = op;
    e->a = std::move(a);
    return e;
}

ExprPtr Expr::binary(ExprOp op, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->op = op;
    e->a = std::move(a);
    e->b = std::move(b);
    return e;
}

Cplx eval_expr(const Expr& e, Cplx z) {
    switch (e.op) {
        case ExprOp::Const: return e.value;
        case ExprOp::Var: return z;
        case ExprOp::Neg: return -eval_expr(*e.a, z);
        case ExprOp::Add: return eval_expr(*e.a, z) + eval_expr(*e.b, z);
        case ExprOp::Sub: return eval_expr(*e.a, z) - eval_expr(*e.b, z);
        case ExprOp::Mul: return eval_expr(*e.a, z) * eval_expr(*e.b, z);
        case ExprOp::Div: return eval_expr(*e.a, z) / eval_expr(*e.b, z);
        case ExprOp::Pow: return std::pow(eval_expr(*e.a, z), eval_expr(*e.b, z));
        case ExprOp::Log: return std::log(eval_expr(*e.a, z));
        case ExprOp::Exp: return std::exp(eval_expr(*e.a, z));
        case ExprOp::Sqrt: return std::sqrt(eval_expr(*e.a, z));
    }
    throw Error("eval_expr: corrupt node");
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_complex(Cplx v) {
    const double re = v.real(), im = v.imag();
    if (im == 0.0) return format_double(re);
    std::string imag = format_double(std::fabs(im)) + "i";
    if (re == 0.0) return (im < 0 ? "-" : "") + imag;
    return format_double(re) + (im < 0 ? "-" : "+") + imag;
}

namespace {

[[noreturn]] void fail_at(std::string_view text, std::size_t pos, const std::string& what,
                          std::vector<std::string> expected) {
    std::size_t off = pos;
    if (off >= text.size() && !text.empty()) off = text.size() - 1;
    throw ParseError(what + " at offset " + std::to_string(off), off, std::move(expected));
}

void skip_spaces(std::string_view text, std::size_t* pos) {
    while (*pos < text.size() && std::isspace(static_cast<unsigned char>(text[*pos]))) ++*pos;
}

// Unsigned real literal: digits [. digits] [e[+-]digits] or .digits.
bool scan_real_literal(std::string_view text, std::size_t* pos, double* out) {
    std::size_t p = *pos, start = p;
    while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) ++p;
    if (p < text.size() && text[p] == '.') {
        ++p;
        while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) ++p;
    }
    if (p == start || (p == start + 1 && text[start] == '.')) return false;
    if (p < text.size() && (text[p] == 'e' || text[p] == 'E')) {
        std::size_t mark = p++;
        if (p < text.size() && (text[p] == '+' || text[p] == '-')) ++p;
        if (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) {
            while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) ++p;
        } else {
            p = mark;
        }
    }
    auto res = std::from_chars(text.data() + start, text.data() + p, *out);
    if (res.ec != std::errc()) return false;
    *pos = p;
    return true;
}

// One literal component: [sign] real ['i']. Returns value and axis.
Cplx scan_component(std::string_view text, std::size_t* pos, bool* is_imag, bool allow_sign) {
    skip_spaces(text, pos);
    double sign = 1.0;
    if (allow_sign && *pos < text.size() && (text[*pos] == '+' || text[*pos] == '-')) {
        if (text[*pos] == '-') sign = -1.0;
        ++*pos;
        skip_spaces(text, pos);
    }
    double v = 0.0;
    if (!scan_real_literal(text, pos, &v)) fail_at(text, *pos, "malformed number", {"number"});
    *is_imag = (*pos < text.size() && text[*pos] == 'i');
    if (*is_imag) ++*pos;
    return *is_imag ? Cplx(0.0, sign * v) : Cplx(sign * v, 0.0);
}

}  // namespace

Cplx parse_complex_value(std::string_view text, std::size_t* pos) {
    bool imag1 = false;
    Cplx v = scan_component(text, pos, &imag1, true);
    skip_spaces(text, pos);
    if (*pos < text.size() && (text[*pos] == '+' || text[*pos] == '-')) {
        double sign = text[*pos] == '-' ? -1.0 : 1.0;
        ++*pos;
        bool imag2 = false;
        std::size_t comp_at = *pos;
        Cplx w = scan_component(text, pos, &imag2, false);
        if (imag1 == imag2)
            fail_at(text, comp_at, "complex literal repeats a component",
                    {imag1 ? "real part" : "imaginary part"});
        v += sign * w;
    }
    return v;
}

namespace {

// Printing precedence levels; higher binds tighter.
// 1 additive, 2 multiplicative, 3 unary minus, 4 power, 5 atom.
int node_prec(const Expr& e) {
    switch (e.op) {
        case ExprOp::Add:
        case ExprOp::Sub: return 1;
        case ExprOp::Mul:
        case ExprOp::Div: return 2;
        case ExprOp::Neg: return 3;
        case ExprOp::Pow: return 4;
        case ExprOp::Const: {
            const Cplx v = e.value;
            if (v.real() != 0.0 && v.imag() != 0.0) return 1;  // prints as a sum
            if (v.real() < 0.0 || v.imag() < 0.0) return 3;    // leading minus
            return 5;
        }
        default: return 5;  // Var and function calls
    }
}

void print(const Expr& e, std::string& out);

void print_child(const Expr& child, int min_prec, std::string& out) {
    if (node_prec(child) < min_prec) {
        out += '(';
        print(child, out);
        out += ')';
    } else {
        print(child, out);
    }
}

void print(const Expr& e, std::string& out) {
    switch (e.op) {
        case ExprOp::Const: out += format_complex(e.value); return;
        case ExprOp::Var: out += 'z'; return;
        case ExprOp::Neg:
            out += '-';
            print_child(*e.a, 3, out);
            return;
        case ExprOp::Add:
            print_child(*e.a, 1, out);
            out += " + ";
            print_child(*e.b, 1, out);
            return;
        case ExprOp::Sub:
            print_child(*e.a, 1, out);
            out += " - ";
            print_child(*e.b, 2, out);
            return;
        case ExprOp::Mul:
            print_child(*e.a, 2, out);
            out += '*';
            print_child(*e.b, 2, out);
            return;
        case ExprOp::Div:
            print_child(*e.a, 2, out);
            out += '/';
            print_child(*e.b, 3, out);
            return;
        case ExprOp::Pow:
            print_child(*e.a, 5, out);
            out += '^';
            print_child(*e.b, 5, out);
            return;
        case ExprOp::Log:
            out += "log(";
            print(*e.a, out);
            out += ')';
            return;
        case ExprOp::Exp:
            out += "exp(";
            print(*e.a, out);
            out += ')';
            return;
        case ExprOp::Sqrt:
            out += "sqrt(";
            print(*e.a, out);
            out += ')';
            return;
    }
}

class ExprParser {
  public:
    ExprParser(std::string_view text, std::size_t start) : text_(text), pos_(start) {}

    ExprPtr parse_to_end() {
        ExprPtr e = additive();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input", {"end of input"});
        return e;
    }

  private:
    std::string_view text_;
    std::size_t pos_;

    [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) {
        std::size_t off = pos_;
        if (off >= text_.size() && !text_.empty()) off = text_.size() - 1;
        throw ParseError(what + " at offset " + std::to_string(off), off, std::move(expected));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    char peek() { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ExprPtr additive() {
        ExprPtr e = multiplicative();
        for (;;) {
            if (eat('+'))
                e = Expr::binary(ExprOp::Add, e, multiplicative());
            else if (eat('-'))
                e = Expr::binary(ExprOp::Sub, e, multiplicative());
            else
                return e;
        }
    }

    ExprPtr multiplicative() {
        ExprPtr e = unary();
        for (;;) {
            if (eat('*'))
                e = Expr::binary(ExprOp::Mul, e, unary());
            else if (eat('/'))
                e = Expr::binary(ExprOp::Div, e, unary());
            else
                return e;
        }
    }

    ExprPtr unary() {
        if (eat('-')) return Expr::unary(ExprOp::Neg, power());
        return power();
    }

    ExprPtr power() {
        ExprPtr base = atom();
        if (eat('^')) return Expr::binary(ExprOp::Pow, base, atom());
        return base;
    }

    ExprPtr atom() {
        if (at_end()) fail("unexpected end of input", {"z", "number", "function", "("});
        const char c = peek();
        if (c == '(') {
            ++pos_;
            ExprPtr e = additive();
            if (!eat(')')) fail("missing closing parenthesis", {")"});
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return literal();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            std::string_view word = text_.substr(start, pos_ - start);
            if (word == "z") return Expr::var();
            ExprOp op;
            if (word == "log")
                op = ExprOp::Log;
            else if (word == "exp")
                op = ExprOp::Exp;
            else if (word == "sqrt")
                op = ExprOp::Sqrt;
            else {
                pos_ = start;
                fail("unknown name '" + std::string(word) + "'", {"z", "log", "exp", "sqrt"});
            }
            if (!eat('(')) fail("function call needs parentheses", {"("});
            ExprPtr arg = additive();
            if (!eat(')')) fail("missing closing parenthesis", {")"});
            return Expr::unary(op, arg);
        }
        fail(std::string("unexpected character '") + c + "'", {"z", "number", "function", "("});
    }

    ExprPtr literal() {
        double v = 0.0;
        if (!scan_real_literal(text_, &pos_, &v)) fail("malformed number", {"number"});
        if (pos_ < text_.size() && text_[pos_] == 'i') {
            ++pos_;
            return Expr::constant(Cplx(0.0, v));
        }
        return Expr::constant(Cplx(v, 0.0));
    }
};

}  // namespace

std::string to_string(const Expr& e) {
    std::string out;
    print(e, out);
    return out;
}

ExprPtr parse_expression(std::string_view text, std::size_t start) {
    return ExprParser(text, start).parse_to_end();
}

}  // namespace semiflow
