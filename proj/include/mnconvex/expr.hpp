#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>

namespace mnconvex::expr {

enum class BinOp { Add, Sub, Mul, Div, Pow };
enum class Func { Exp, Ln, Sqrt, Abs, Sinh, Cosh };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable expression tree over a single variable `x`.
struct Expr {
    enum class Tag { Number, Var, Neg, Bin, Call };

    Tag tag;
    double number = 0.0;    // Tag::Number
    BinOp op = BinOp::Add;  // Tag::Bin
    Func func = Func::Exp;  // Tag::Call
    ExprPtr a;              // unary operand / left operand / call argument
    ExprPtr b;              // right operand
};

ExprPtr make_number(double v);
ExprPtr make_var();
ExprPtr make_neg(ExprPtr e);
ExprPtr make_bin(BinOp op, ExprPtr lhs, ExprPtr rhs);
ExprPtr make_call(Func f, ExprPtr arg);

// Grammar (no implicit multiplication, `^` binds tighter than unary minus
// and is right-associative, so -x^2 == -(x^2) and 2^3^2 == 2^(3^2)):
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' factor)?
//   atom   := number | 'x' | ident '(' expr (',' expr)? ')' | '(' expr ')'
//
// Functions: exp, ln, sqrt, abs, sinh, cosh (unary) and pow (binary; pow(a,b)
// parses to the same node as a^b). Throws parse_error with the byte offset of
// the first unusable character.
ExprPtr parse(std::string_view text);

// Evaluates at x. Throws eval_error on a domain violation (ln of a
// non-positive value, sqrt of a negative value, 0 raised to a negative power,
// a negative base raised to a non-integer power) or when the final result is
// not finite; the error carries the offending subexpression's printed form.
double eval(const Expr& e, double x);

// Prints with the minimal parenthesization that reparses to the same tree.
std::string pretty_print(const Expr& e);

// Structural equality (same shape, same operators, identical literals).
bool equal(const Expr& lhs, const Expr& rhs);

// (f(x+h) - f(x-h)) / ((x+h) - (x-h)); the denominator uses the realized
// spacing so the estimate stays consistent when x+h rounds.
double central_difference(const std::function<double(double)>& f, double x, double h);

// A named scalar function on (0, inf) with a derivative. Built-in specs carry
// exact derivatives; parsed specs differentiate numerically with a central
// difference at step cbrt(eps) * max(|x|, 1).
class FunctionSpec {
  public:
    static FunctionSpec exponential();          // exp(x)
    static FunctionSpec ln1p();                 // ln(1+x)
    static FunctionSpec power(double a);        // x^a
    static FunctionSpec affine(double a, double b);  // a*x + b
    static FunctionSpec xexp();                 // x*exp(x)
    static FunctionSpec parsed(std::string_view source);  // throws parse_error

    double eval(double x) const { return f_(x); }
    double derivative(double x) const;
    const std::string& label() const { return label_; }
    bool has_exact_derivative() const { return static_cast<bool>(df_); }

  private:
    FunctionSpec(std::string label, std::function<double(double)> f,
                 std::function<double(double)> df);

    std::string label_;
    std::function<double(double)> f_;
    std::function<double(double)> df_;  // empty => numeric differentiation
};

}  // namespace mnconvex::expr
