#include "annulus/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>

namespace annulus {

ExprPtr constant(double value) { return std::make_shared<const Expr>(Expr{Constant{value}}); }
ExprPtr variable(Var v) { return std::make_shared<const Expr>(Expr{Variable{v}}); }
ExprPtr negate(ExprPtr e) { return std::make_shared<const Expr>(Expr{Negate{std::move(e)}}); }
ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
    return std::make_shared<const Expr>(Expr{Binary{op, std::move(lhs), std::move(rhs)}});
}
ExprPtr call(Func f, ExprPtr arg) { return std::make_shared<const Expr>(Expr{Call{f, std::move(arg)}}); }

bool is_constant(const ExprPtr& e) { return std::holds_alternative<Constant>(e->node); }

bool is_constant(const ExprPtr& e, double value) {
    const auto* c = std::get_if<Constant>(&e->node);
    return c != nullptr && c->value == value;
}

// ---------------------------------------------------------------------------
// Parser: recursive descent over a byte string.
//
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' unary)?          right-associative, so x^-2 works
//   atom   := number | 'x' | 'y' | func '(' expr ')' | '(' expr ')'
// ---------------------------------------------------------------------------

namespace {

const std::map<std::string, Func, std::less<>> kFunctions = {
    {"sin", Func::Sin},   {"cos", Func::Cos}, {"tan", Func::Tan},
    {"exp", Func::Exp},   {"ln", Func::Ln},   {"sqrt", Func::Sqrt},
    {"tanh", Func::Tanh}, {"abs", Func::Abs},
};

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExprPtr run() {
        if (text_.empty()) throw ParseError(0, "empty expression", {"expression"});
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError(pos_, "unexpected trailing input", {"operator", "end of input"});
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::optional<char> peek() {
        skip_ws();
        if (pos_ >= text_.size()) return std::nullopt;
        return text_[pos_];
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!accept(c)) throw ParseError(pos_, "missing token", {std::string(what)});
    }

    ExprPtr expr() {
        ExprPtr e = term();
        while (auto c = peek()) {
            if (*c == '+') {
                ++pos_;
                e = add(e, term());
            } else if (*c == '-') {
                ++pos_;
                e = sub(e, term());
            } else {
                break;
            }
        }
        return e;
    }

    ExprPtr term() {
        ExprPtr e = unary();
        while (auto c = peek()) {
            if (*c == '*') {
                ++pos_;
                e = mul(e, unary());
            } else if (*c == '/') {
                ++pos_;
                e = div(e, unary());
            } else {
                break;
            }
        }
        return e;
    }

    ExprPtr unary() {
        if (accept('-')) return negate(unary());
        return power();
    }

    ExprPtr power() {
        ExprPtr base = atom();
        if (accept('^')) return pow(base, unary());
        return base;
    }

    ExprPtr atom() {
        auto c = peek();
        if (!c) throw ParseError(pos_, "unexpected end of input", {"number", "identifier", "("});
        if (*c == '(') {
            ++pos_;
            ExprPtr e = expr();
            expect(')', ")");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(*c)) || *c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(*c))) return identifier();
        throw ParseError(pos_, std::string("unexpected character '") + *c + "'",
                         {"number", "identifier", "(", "-"});
    }

    ExprPtr number() {
        std::size_t start = pos_;
        bool digits = false;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
            digits = true;
        }
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
                digits = true;
            }
        }
        if (!digits) throw ParseError(start, "malformed number", {"digit"});
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t mark = pos_++;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            } else {
                pos_ = mark;  // 'e' was not an exponent; leave it for the caller
            }
        }
        std::string slice(text_.substr(start, pos_ - start));
        return constant(std::strtod(slice.c_str(), nullptr));
    }

    ExprPtr identifier() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        if (name == "x") return variable(Var::X);
        if (name == "y") return variable(Var::Y);
        auto it = kFunctions.find(name);
        if (it != kFunctions.end()) {
            expect('(', "(");
            ExprPtr arg = expr();
            expect(')', ")");
            return call(it->second, arg);
        }
        throw UnknownIdentifierError(start, name);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse(std::string_view text) { return Parser(text).run(); }

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

bool is_integer(double v) { return std::isfinite(v) && v == std::nearbyint(v); }

[[noreturn]] void domain_error(const ExprPtr& e, const std::string& why) {
    throw DomainError(why + " in subtree '" + to_string(e) + "'");
}

double eval_node(const ExprPtr& e, double x, double y);

double eval_binary(const ExprPtr& e, const Binary& b, double x, double y) {
    double l = eval_node(b.lhs, x, y);
    double r = eval_node(b.rhs, x, y);
    switch (b.op) {
        case BinaryOp::Add: return l + r;
        case BinaryOp::Sub: return l - r;
        case BinaryOp::Mul: return l * r;
        case BinaryOp::Div:
            if (r == 0.0) domain_error(e, "division by zero");
            return l / r;
        case BinaryOp::Pow:
            if (l < 0.0 && !is_integer(r)) domain_error(e, "non-integer power of negative base");
            if (l == 0.0 && r < 0.0) domain_error(e, "negative power of zero");
            return std::pow(l, r);
    }
    domain_error(e, "unreachable");
}

double eval_call(const ExprPtr& e, const Call& c, double x, double y) {
    double a = eval_node(c.arg, x, y);
    switch (c.func) {
        case Func::Sin: return std::sin(a);
        case Func::Cos: return std::cos(a);
        case Func::Tan: return std::tan(a);
        case Func::Exp: return std::exp(a);
        case Func::Ln:
            if (a <= 0.0) domain_error(e, "ln of non-positive argument");
            return std::log(a);
        case Func::Sqrt:
            if (a < 0.0) domain_error(e, "sqrt of negative argument");
            return std::sqrt(a);
        case Func::Tanh: return std::tanh(a);
        case Func::Abs: return std::abs(a);
    }
    domain_error(e, "unreachable");
}

double eval_node(const ExprPtr& e, double x, double y) {
    return std::visit(
        [&](const auto& n) -> double {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Constant>) return n.value;
            else if constexpr (std::is_same_v<T, Variable>) return n.var == Var::X ? x : y;
            else if constexpr (std::is_same_v<T, Negate>) return -eval_node(n.operand, x, y);
            else if constexpr (std::is_same_v<T, Binary>) return eval_binary(e, n, x, y);
            else return eval_call(e, n, x, y);
        },
        e->node);
}

}  // namespace

double evaluate(const ExprPtr& e, double x, double y) { return eval_node(e, x, y); }

// ---------------------------------------------------------------------------
// Constant folding
// ---------------------------------------------------------------------------

ExprPtr fold(const ExprPtr& e) {
    return std::visit(
        [&](const auto& n) -> ExprPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Constant> || std::is_same_v<T, Variable>) {
                return e;
            } else if constexpr (std::is_same_v<T, Negate>) {
                ExprPtr a = fold(n.operand);
                if (const auto* c = std::get_if<Constant>(&a->node)) return constant(-c->value);
                return a == n.operand ? e : negate(a);
            } else if constexpr (std::is_same_v<T, Binary>) {
                ExprPtr l = fold(n.lhs);
                ExprPtr r = fold(n.rhs);
                if (is_constant(l) && is_constant(r)) {
                    ExprPtr collapsed = binary(n.op, l, r);
                    try {
                        return constant(evaluate(collapsed, 0.0, 0.0));
                    } catch (const DomainError&) {
                        return collapsed;  // e.g. 1/0: keep for evaluation-time error
                    }
                }
                switch (n.op) {
                    case BinaryOp::Add:
                        if (is_constant(l, 0.0)) return r;
                        if (is_constant(r, 0.0)) return l;
                        break;
                    case BinaryOp::Sub:
                        if (is_constant(r, 0.0)) return l;
                        if (is_constant(l, 0.0)) return negate(r);
                        break;
                    case BinaryOp::Mul:
                        if (is_constant(l, 1.0)) return r;
                        if (is_constant(r, 1.0)) return l;
                        if (is_constant(l, 0.0) || is_constant(r, 0.0)) return constant(0.0);
                        break;
                    case BinaryOp::Div:
                        if (is_constant(r, 1.0)) return l;
                        break;
                    case BinaryOp::Pow:
                        if (is_constant(r, 1.0)) return l;
                        break;
                }
                return (l == n.lhs && r == n.rhs) ? e : binary(n.op, l, r);
            } else {
                ExprPtr a = fold(n.arg);
                if (is_constant(a)) {
                    ExprPtr collapsed = call(n.func, a);
                    try {
                        return constant(evaluate(collapsed, 0.0, 0.0));
                    } catch (const DomainError&) {
                        return collapsed;
                    }
                }
                return a == n.arg ? e : call(n.func, a);
            }
        },
        e->node);
}

// ---------------------------------------------------------------------------
// Symbolic differentiation
// ---------------------------------------------------------------------------

namespace {

ExprPtr diff_node(const ExprPtr& e, Var v);

ExprPtr diff_binary(const Binary& b, Var v) {
    switch (b.op) {
        case BinaryOp::Add: return add(diff_node(b.lhs, v), diff_node(b.rhs, v));
        case BinaryOp::Sub: return sub(diff_node(b.lhs, v), diff_node(b.rhs, v));
        case BinaryOp::Mul:
            return add(mul(diff_node(b.lhs, v), b.rhs), mul(b.lhs, diff_node(b.rhs, v)));
        case BinaryOp::Div:
            return div(sub(mul(diff_node(b.lhs, v), b.rhs), mul(b.lhs, diff_node(b.rhs, v))),
                       pow(b.rhs, constant(2.0)));
        case BinaryOp::Pow: {
            if (const auto* c = std::get_if<Constant>(&b.rhs->node)) {
                // power rule; valid for negative bases with integer exponents
                return mul(mul(constant(c->value), pow(b.lhs, constant(c->value - 1.0))),
                           diff_node(b.lhs, v));
            }
            // u^v = exp(v ln u): derivative u^v (v' ln u + v u'/u)
            return mul(pow(b.lhs, b.rhs),
                       add(mul(diff_node(b.rhs, v), call(Func::Ln, b.lhs)),
                           div(mul(b.rhs, diff_node(b.lhs, v)), b.lhs)));
        }
    }
    throw Error("unreachable");
}

ExprPtr diff_call(const ExprPtr& e, const Call& c, Var v) {
    ExprPtr da = diff_node(c.arg, v);
    switch (c.func) {
        case Func::Sin: return mul(call(Func::Cos, c.arg), da);
        case Func::Cos: return negate(mul(call(Func::Sin, c.arg), da));
        case Func::Tan:
            return div(da, pow(call(Func::Cos, c.arg), constant(2.0)));
        case Func::Exp: return mul(call(Func::Exp, c.arg), da);
        case Func::Ln: return div(da, c.arg);
        case Func::Sqrt: return div(da, mul(constant(2.0), call(Func::Sqrt, c.arg)));
        case Func::Tanh:
            return mul(sub(constant(1.0), pow(call(Func::Tanh, c.arg), constant(2.0))), da);
        case Func::Abs:
            throw NonDifferentiableError("abs is not differentiable: '" + to_string(e) + "'");
    }
    throw Error("unreachable");
}

ExprPtr diff_node(const ExprPtr& e, Var v) {
    return std::visit(
        [&](const auto& n) -> ExprPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Constant>) return constant(0.0);
            else if constexpr (std::is_same_v<T, Variable>) return constant(n.var == v ? 1.0 : 0.0);
            else if constexpr (std::is_same_v<T, Negate>) return negate(diff_node(n.operand, v));
            else if constexpr (std::is_same_v<T, Binary>) return diff_binary(n, v);
            else return diff_call(e, n, v);
        },
        e->node);
}

}  // namespace

ExprPtr differentiate(const ExprPtr& e, Var v) { return fold(diff_node(e, v)); }

// ---------------------------------------------------------------------------
// Printing and inspection
// ---------------------------------------------------------------------------

namespace {

// Precedence levels for printing: add/sub 1, mul/div 2, unary 3, pow 4.
int print_prec(const ExprPtr& e) {
    return std::visit(
        [](const auto& n) -> int {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Binary>) {
                switch (n.op) {
                    case BinaryOp::Add:
                    case BinaryOp::Sub: return 1;
                    case BinaryOp::Mul:
                    case BinaryOp::Div: return 2;
                    case BinaryOp::Pow: return 4;
                }
            }
            if constexpr (std::is_same_v<T, Negate>) return 3;
            return 5;
        },
        e->node);
}

std::string wrap(const ExprPtr& e, int min_prec) {
    std::string s = to_string(e);
    if (print_prec(e) < min_prec) return "(" + s + ")";
    return s;
}

std::string num_str(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* func_name(Func f) {
    switch (f) {
        case Func::Sin: return "sin";
        case Func::Cos: return "cos";
        case Func::Tan: return "tan";
        case Func::Exp: return "exp";
        case Func::Ln: return "ln";
        case Func::Sqrt: return "sqrt";
        case Func::Tanh: return "tanh";
        case Func::Abs: return "abs";
    }
    return "?";
}

}  // namespace

std::string to_string(const ExprPtr& e) {
    return std::visit(
        [&](const auto& n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Constant>) {
                return n.value < 0 ? "(" + num_str(n.value) + ")" : num_str(n.value);
            } else if constexpr (std::is_same_v<T, Variable>) {
                return n.var == Var::X ? "x" : "y";
            } else if constexpr (std::is_same_v<T, Negate>) {
                return "-" + wrap(n.operand, 4);
            } else if constexpr (std::is_same_v<T, Binary>) {
                switch (n.op) {
                    case BinaryOp::Add: return wrap(n.lhs, 1) + "+" + wrap(n.rhs, 1);
                    case BinaryOp::Sub: return wrap(n.lhs, 1) + "-" + wrap(n.rhs, 2);
                    case BinaryOp::Mul: return wrap(n.lhs, 2) + "*" + wrap(n.rhs, 2);
                    case BinaryOp::Div: return wrap(n.lhs, 2) + "/" + wrap(n.rhs, 3);
                    case BinaryOp::Pow: return wrap(n.lhs, 5) + "^" + wrap(n.rhs, 4);
                }
                return "?";
            } else {
                return std::string(func_name(n.func)) + "(" + to_string(n.arg) + ")";
            }
        },
        e->node);
}

std::size_t node_count(const ExprPtr& e) {
    return std::visit(
        [](const auto& n) -> std::size_t {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Constant> || std::is_same_v<T, Variable>) return 1;
            else if constexpr (std::is_same_v<T, Negate>) return 1 + node_count(n.operand);
            else if constexpr (std::is_same_v<T, Binary>) return 1 + node_count(n.lhs) + node_count(n.rhs);
            else return 1 + node_count(n.arg);
        },
        e->node);
}

}  // namespace annulus
