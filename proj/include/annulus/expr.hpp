#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "annulus/errors.hpp"

namespace annulus {

// Immutable AST of a bivariate real expression. Nodes are shared, never
// mutated, so trees are cheap to copy and safe to evaluate concurrently.

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class Var { X, Y };

enum class BinaryOp { Add, Sub, Mul, Div, Pow };

enum class Func { Sin, Cos, Tan, Exp, Ln, Sqrt, Tanh, Abs };

struct Constant {
    double value;
};
struct Variable {
    Var var;
};
struct Negate {
    ExprPtr operand;
};
struct Binary {
    BinaryOp op;
    ExprPtr lhs;
    ExprPtr rhs;
};
struct Call {
    Func func;
    ExprPtr arg;
};

struct Expr {
    std::variant<Constant, Variable, Negate, Binary, Call> node;
};

// Node factories.
ExprPtr constant(double value);
ExprPtr variable(Var v);
ExprPtr negate(ExprPtr e);
ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);
ExprPtr call(Func f, ExprPtr arg);

inline ExprPtr add(ExprPtr a, ExprPtr b) { return binary(BinaryOp::Add, std::move(a), std::move(b)); }
inline ExprPtr sub(ExprPtr a, ExprPtr b) { return binary(BinaryOp::Sub, std::move(a), std::move(b)); }
inline ExprPtr mul(ExprPtr a, ExprPtr b) { return binary(BinaryOp::Mul, std::move(a), std::move(b)); }
inline ExprPtr div(ExprPtr a, ExprPtr b) { return binary(BinaryOp::Div, std::move(a), std::move(b)); }
inline ExprPtr pow(ExprPtr a, ExprPtr b) { return binary(BinaryOp::Pow, std::move(a), std::move(b)); }

/// Parse an expression. Grammar: `+ -` < `* /` < unary minus < `^`
/// (right-associative) < atoms; function calls and parentheses as usual.
/// Whitespace is ignored. Throws ParseError / UnknownIdentifierError.
ExprPtr parse(std::string_view text);

/// Exact symbolic derivative with respect to `v`, constant-folded.
/// Throws NonDifferentiableError on abs nodes.
ExprPtr differentiate(const ExprPtr& e, Var v);

/// Collapse constant subtrees and apply the 0/1 identities
/// (e+0, e*1, e*0, e^1, and mirror images). A constant subtree whose
/// evaluation fails (e.g. 1/0) is kept as-is so the error surfaces at
/// evaluation time.
ExprPtr fold(const ExprPtr& e);

/// Evaluate at (x, y). Throws DomainError naming the offending subtree.
double evaluate(const ExprPtr& e, double x, double y);

/// Printable form with minimal parentheses.
std::string to_string(const ExprPtr& e);

std::size_t node_count(const ExprPtr& e);

/// True if the node is a constant with exactly this value.
bool is_constant(const ExprPtr& e, double value);
bool is_constant(const ExprPtr& e);

}  // namespace annulus
