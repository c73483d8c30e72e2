#include "mnconvex/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <utility>

#include "mnconvex/errors.hpp"
#include "mnconvex/format.hpp"

namespace mnconvex::expr {

ExprPtr make_number(double v) {
    auto e = std::make_shared<Expr>();
    e->tag = Expr::Tag::Number;
    e->number = v;
    return e;
}

ExprPtr make_var() {
    auto e = std::make_shared<Expr>();
    e->tag = Expr::Tag::Var;
    return e;
}

ExprPtr make_neg(ExprPtr child) {
    auto e = std::make_shared<Expr>();
    e->tag = Expr::Tag::Neg;
    e->a = std::move(child);
    return e;
}

ExprPtr make_bin(BinOp op, ExprPtr lhs, ExprPtr rhs) {
    auto e = std::make_shared<Expr>();
    e->tag = Expr::Tag::Bin;
    e->op = op;
    e->a = std::move(lhs);
    e->b = std::move(rhs);
    return e;
}

ExprPtr make_call(Func f, ExprPtr arg) {
    auto e = std::make_shared<Expr>();
    e->tag = Expr::Tag::Call;
    e->func = f;
    e->a = std::move(arg);
    return e;
}

namespace {

struct FuncName {
    std::string_view name;
    Func func;
};

constexpr std::array<FuncName, 6> kFuncs{{
    {"exp", Func::Exp},
    {"ln", Func::Ln},
    {"sqrt", Func::Sqrt},
    {"abs", Func::Abs},
    {"sinh", Func::Sinh},
    {"cosh", Func::Cosh},
}};

const char* func_name(Func f) {
    for (const auto& fn : kFuncs)
        if (fn.func == f) return fn.name.data();
    return "?";
}

class Parser {
  public:
    explicit Parser(std::string_view src) : src_(src) {}

    ExprPtr run() {
        ExprPtr e = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) throw parse_error(pos_, "operator or end of input");
        return e;
    }

  private:
    std::string_view src_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool at_end() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }
    bool accept(char c) {
        if (!at_end() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        for (;;) {
            skip_ws();
            if (accept('+'))
                lhs = make_bin(BinOp::Add, std::move(lhs), parse_term());
            else if (accept('-'))
                lhs = make_bin(BinOp::Sub, std::move(lhs), parse_term());
            else
                return lhs;
        }
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_factor();
        for (;;) {
            skip_ws();
            if (accept('*'))
                lhs = make_bin(BinOp::Mul, std::move(lhs), parse_factor());
            else if (accept('/'))
                lhs = make_bin(BinOp::Div, std::move(lhs), parse_factor());
            else
                return lhs;
        }
    }

    ExprPtr parse_factor() {
        skip_ws();
        if (accept('-')) return make_neg(parse_factor());
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        skip_ws();
        if (accept('^')) return make_bin(BinOp::Pow, std::move(base), parse_factor());
        return base;
    }

    ExprPtr parse_atom() {
        skip_ws();
        if (at_end()) throw parse_error(pos_, "number, 'x', function call, or '('");
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (c == '(') {
            ++pos_;
            ExprPtr inner = parse_expr();
            skip_ws();
            if (!accept(')')) throw parse_error(pos_, "')'");
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        throw parse_error(pos_, "number, 'x', function call, or '('");
    }

    ExprPtr parse_number() {
        const std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (!at_end() && peek() == '.') {
            ++pos_;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        }
        if (pos_ == start || (pos_ == start + 1 && src_[start] == '.'))
            throw parse_error(start, "number");
        // Consume an exponent only when digits actually follow it, so "2e"
        // and "1e+" leave the 'e' for the caller to reject as a stray token.
        if (!at_end() && (peek() == 'e' || peek() == 'E')) {
            std::size_t probe = pos_ + 1;
            if (probe < src_.size() && (src_[probe] == '+' || src_[probe] == '-')) ++probe;
            if (probe < src_.size() && std::isdigit(static_cast<unsigned char>(src_[probe]))) {
                pos_ = probe;
                while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            }
        }
        // from_chars wants a digit on both sides of the point: ".5" -> "0.5",
        // "2." -> "2.0".
        std::string text(src_.substr(start, pos_ - start));
        if (text.front() == '.') text.insert(text.begin(), '0');
        std::size_t dot = text.find('.');
        if (dot != std::string::npos &&
            (dot + 1 == text.size() || !std::isdigit(static_cast<unsigned char>(text[dot + 1]))))
            text.insert(dot + 1, "0");
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec == std::errc::result_out_of_range || !std::isfinite(value))
            throw parse_error(start, "representable number");
        if (ec != std::errc() || ptr != text.data() + text.size())
            throw parse_error(start, "number");
        return make_number(value);
    }

    ExprPtr parse_ident() {
        const std::size_t start = pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
            ++pos_;
        std::string_view name = src_.substr(start, pos_ - start);
        if (name == "x") return make_var();
        if (name == "pow") return parse_pow_call(start);
        for (const auto& fn : kFuncs) {
            if (name == fn.name) {
                skip_ws();
                if (!accept('(')) throw parse_error(pos_, "'('");
                ExprPtr arg = parse_expr();
                skip_ws();
                if (accept(',')) throw parse_error(pos_ - 1, "')' (unary function)");
                if (!accept(')')) throw parse_error(pos_, "')'");
                return make_call(fn.func, std::move(arg));
            }
        }
        throw parse_error(start, "'x' or a function name (exp, ln, sqrt, abs, sinh, cosh, pow)");
    }

    ExprPtr parse_pow_call(std::size_t) {
        skip_ws();
        if (!accept('(')) throw parse_error(pos_, "'('");
        ExprPtr base = parse_expr();
        skip_ws();
        if (!accept(',')) throw parse_error(pos_, "',' (pow takes two arguments)");
        ExprPtr exponent = parse_expr();
        skip_ws();
        if (!accept(')')) throw parse_error(pos_, "')'");
        return make_bin(BinOp::Pow, std::move(base), std::move(exponent));
    }
};

// Literals print with the fewest digits that reparse to the same value, so
// printed forms stay minimal ("0.1", not "0.10000000000000001").
std::string format_literal(double v) {
    char buf[40];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, end);
}

// Precedence levels for printing: looser binds lower. A child is
// parenthesized when its level is below what its position requires.
int print_prec(const Expr& e) {
    switch (e.tag) {
        case Expr::Tag::Number:
            // A negative literal prints with a leading '-', so give it the
            // same binding as an explicit negation.
            return e.number < 0.0 ? 3 : 5;
        case Expr::Tag::Var:
        case Expr::Tag::Call:
            return 5;
        case Expr::Tag::Neg:
            return 3;
        case Expr::Tag::Bin:
            switch (e.op) {
                case BinOp::Add:
                case BinOp::Sub:
                    return 1;
                case BinOp::Mul:
                case BinOp::Div:
                    return 2;
                case BinOp::Pow:
                    return 4;
            }
    }
    return 5;
}

void print_node(const Expr& e, int need, std::string& out);

void print_child(const Expr& e, int need, std::string& out) {
    if (print_prec(e) < need) {
        out += '(';
        print_node(e, 0, out);
        out += ')';
    } else {
        print_node(e, 0, out);
    }
}

void print_node(const Expr& e, int, std::string& out) {
    switch (e.tag) {
        case Expr::Tag::Number:
            out += format_literal(e.number);
            return;
        case Expr::Tag::Var:
            out += 'x';
            return;
        case Expr::Tag::Neg:
            out += '-';
            print_child(*e.a, 3, out);
            return;
        case Expr::Tag::Call:
            out += func_name(e.func);
            out += '(';
            print_node(*e.a, 0, out);
            out += ')';
            return;
        case Expr::Tag::Bin:
            switch (e.op) {
                case BinOp::Add:
                    print_child(*e.a, 1, out);
                    out += '+';
                    print_child(*e.b, 2, out);
                    return;
                case BinOp::Sub:
                    print_child(*e.a, 1, out);
                    out += '-';
                    print_child(*e.b, 2, out);
                    return;
                case BinOp::Mul:
                    print_child(*e.a, 2, out);
                    out += '*';
                    print_child(*e.b, 3, out);
                    return;
                case BinOp::Div:
                    print_child(*e.a, 2, out);
                    out += '/';
                    print_child(*e.b, 3, out);
                    return;
                case BinOp::Pow:
                    // The base must reprint as an atom: -2^2 and (-2)^2 differ.
                    print_child(*e.a, 5, out);
                    out += '^';
                    print_child(*e.b, 3, out);
                    return;
            }
    }
}

[[noreturn]] void domain_fail(const Expr& e, double argument, const char* reason) {
    throw eval_error(pretty_print(e), argument,
                     std::string("domain error in '") + pretty_print(e) + "': " + reason +
                         " (argument " + format17(argument) + ")");
}

double eval_node(const Expr& e, double x) {
    switch (e.tag) {
        case Expr::Tag::Number:
            return e.number;
        case Expr::Tag::Var:
            return x;
        case Expr::Tag::Neg:
            return -eval_node(*e.a, x);
        case Expr::Tag::Bin: {
            const double l = eval_node(*e.a, x);
            const double r = eval_node(*e.b, x);
            switch (e.op) {
                case BinOp::Add:
                    return l + r;
                case BinOp::Sub:
                    return l - r;
                case BinOp::Mul:
                    return l * r;
                case BinOp::Div:
                    return l / r;
                case BinOp::Pow:
                    if (l == 0.0 && r < 0.0) domain_fail(e, l, "0 raised to a negative power");
                    if (l < 0.0 && std::isfinite(r) && r != std::floor(r))
                        domain_fail(e, l, "negative base with non-integer exponent");
                    return std::pow(l, r);
            }
            return 0.0;
        }
        case Expr::Tag::Call: {
            const double v = eval_node(*e.a, x);
            switch (e.func) {
                case Func::Exp:
                    return std::exp(v);
                case Func::Ln:
                    if (v <= 0.0) domain_fail(e, v, "ln of a non-positive value");
                    return std::log(v);
                case Func::Sqrt:
                    if (v < 0.0) domain_fail(e, v, "sqrt of a negative value");
                    return std::sqrt(v);
                case Func::Abs:
                    return std::fabs(v);
                case Func::Sinh:
                    return std::sinh(v);
                case Func::Cosh:
                    return std::cosh(v);
            }
            return 0.0;
        }
    }
    return 0.0;
}

}  // namespace

ExprPtr parse(std::string_view text) { return Parser(text).run(); }

double eval(const Expr& e, double x) {
    const double v = eval_node(e, x);
    if (!std::isfinite(v))
        throw eval_error(pretty_print(e), x,
                         "non-finite result from '" + pretty_print(e) + "' at x = " + format17(x));
    return v;
}

std::string pretty_print(const Expr& e) {
    std::string out;
    print_node(e, 0, out);
    return out;
}

bool equal(const Expr& lhs, const Expr& rhs) {
    if (lhs.tag != rhs.tag) return false;
    switch (lhs.tag) {
        case Expr::Tag::Number:
            return lhs.number == rhs.number;
        case Expr::Tag::Var:
            return true;
        case Expr::Tag::Neg:
            return equal(*lhs.a, *rhs.a);
        case Expr::Tag::Bin:
            return lhs.op == rhs.op && equal(*lhs.a, *rhs.a) && equal(*lhs.b, *rhs.b);
        case Expr::Tag::Call:
            return lhs.func == rhs.func && equal(*lhs.a, *rhs.a);
    }
    return false;
}

double central_difference(const std::function<double(double)>& f, double x, double h) {
    const double xp = x + h;
    const double xm = x - h;
    return (f(xp) - f(xm)) / (xp - xm);
}

FunctionSpec::FunctionSpec(std::string label, std::function<double(double)> f,
                           std::function<double(double)> df)
    : label_(std::move(label)), f_(std::move(f)), df_(std::move(df)) {}

FunctionSpec FunctionSpec::exponential() {
    return FunctionSpec(
        "exp(x)", [](double x) { return std::exp(x); }, [](double x) { return std::exp(x); });
}

FunctionSpec FunctionSpec::ln1p() {
    return FunctionSpec(
        "ln(1+x)", [](double x) { return std::log1p(x); },
        [](double x) { return 1.0 / (1.0 + x); });
}

FunctionSpec FunctionSpec::power(double a) {
    return FunctionSpec(
        "x^" + format17(a), [a](double x) { return std::pow(x, a); },
        [a](double x) { return a * std::pow(x, a - 1.0); });
}

FunctionSpec FunctionSpec::affine(double a, double b) {
    std::string label = format17(a) + "*x" + (b < 0.0 ? "-" : "+") + format17(std::fabs(b));
    return FunctionSpec(
        std::move(label), [a, b](double x) { return a * x + b; }, [a](double) { return a; });
}

FunctionSpec FunctionSpec::xexp() {
    return FunctionSpec(
        "x*exp(x)", [](double x) { return x * std::exp(x); },
        [](double x) { return (1.0 + x) * std::exp(x); });
}

FunctionSpec FunctionSpec::parsed(std::string_view source) {
    ExprPtr tree = parse(source);
    std::string label = pretty_print(*tree);
    return FunctionSpec(
        std::move(label), [tree](double x) { return expr::eval(*tree, x); }, nullptr);
}

double FunctionSpec::derivative(double x) const {
    if (df_) return df_(x);
    const double h =
        std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(std::fabs(x), 1.0);
    return central_difference(f_, x, h);
}

}  // namespace mnconvex::expr
