#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "doctest.h"
#include "mnconvex/errors.hpp"
#include "mnconvex/expr.hpp"

using namespace mnconvex;

namespace {

double rel_err(double got, double want) {
    if (got == want) return 0.0;
    return std::fabs(got - want) / std::fabs(want);
}

double eval_str(const std::string& src, double x) { return expr::eval(*expr::parse(src), x); }

}  // namespace

TEST_CASE("print round-trips to an equal tree") {
    const std::vector<std::string> corpus = {
        "x",
        "42",
        "1.5",
        "0.5",
        ".5",
        "2.",
        "1e-3",
        "2.5e2",
        "x+1",
        "x-1",
        "2*x",
        "x/3",
        "x^2",
        "-x",
        "-x^2",
        "(-x)^2",
        "-2^2",
        "2^3^2",
        "x^-1",
        "x^0.5",
        "x^(1/3)",
        "x*(x+1)",
        "(x+1)*(x-1)",
        "x-(x-1)",
        "x--2",
        "-(x+1)",
        "x/2/3",
        "1-2-3",
        "2+3*4",
        "exp(x)",
        "ln(x)",
        "sqrt(x)",
        "abs(x)",
        "sinh(x)",
        "cosh(x)",
        "exp(-x^2/2)",
        "1/(1+x)",
        "ln(1+x)",
        "x*exp(x)",
        "x^3+x",
        "(x^2+1)/(x^2-1)",
        "cosh(x)-sinh(x)",
        "sqrt(x^2+1)",
        "abs(x-2)",
        "pow(x,2)",
        "pow(x+1,-0.5)",
        "  x  +  1  ",
    };
    for (const auto& src : corpus) {
        const auto tree = expr::parse(src);
        const std::string printed = expr::pretty_print(*tree);
        const auto again = expr::parse(printed);
        CHECK_MESSAGE(expr::equal(*tree, *again), src << " printed as " << printed);
        // The printed form is already minimal: printing it again is a fixpoint.
        CHECK(expr::pretty_print(*again) == printed);
    }
}

TEST_CASE("printer drops redundant parentheses and keeps required ones") {
    auto printed = [](const std::string& src) { return expr::pretty_print(*expr::parse(src)); };
    CHECK(printed("((x))") == "x");
    CHECK(printed("(x)+(1)") == "x+1");
    CHECK(printed("(x*2)+1") == "x*2+1");
    CHECK(printed("x*(2+1)") == "x*(2+1)");
    CHECK(printed("-(x^2)") == "-x^2");
    CHECK(printed("(-x)^2") == "(-x)^2");
    CHECK(printed("pow(x,2)") == "x^2");
    CHECK(printed("x-(x-1)") == "x-(x-1)");
    CHECK(printed("(x-x)-1") == "x-x-1");
    CHECK(printed("2^(3^2)") == "2^3^2");
    CHECK(printed("(2^3)^2") == "(2^3)^2");
}

TEST_CASE("operator precedence and associativity") {
    CHECK(eval_str("2^3^2", 0.0) == 512.0);    // right-associative
    CHECK(eval_str("(2^3)^2", 0.0) == 64.0);
    CHECK(eval_str("-x^2", 3.0) == -9.0);      // '^' binds tighter than unary '-'
    CHECK(eval_str("(-x)^2", 3.0) == 9.0);
    CHECK(eval_str("-2^2", 0.0) == -4.0);
    CHECK(eval_str("2^-3", 0.0) == 0.125);
    CHECK(eval_str("1-2-3", 0.0) == -4.0);     // left-associative
    CHECK(eval_str("8/4/2", 0.0) == 1.0);
    CHECK(eval_str("2+3*4", 0.0) == 14.0);
    CHECK(eval_str("2*3^2", 0.0) == 18.0);
    CHECK(eval_str("x--2", 5.0) == 7.0);
    CHECK(eval_str("x*exp(0)", 7.0) == 7.0);
    CHECK(expr::equal(*expr::parse("pow(x,2)"), *expr::parse("x^2")));
    CHECK(expr::equal(*expr::parse("pow(x+1,x)"), *expr::parse("(x+1)^x")));
    CHECK_FALSE(expr::equal(*expr::parse("x+1"), *expr::parse("1+x")));
    CHECK_FALSE(expr::equal(*expr::parse("x^2"), *expr::parse("x^2.5")));
}

TEST_CASE("number literals") {
    CHECK(eval_str("1.5e3", 0.0) == 1500.0);
    CHECK(eval_str("2.5E2", 0.0) == 250.0);
    CHECK(eval_str(".5", 0.0) == 0.5);
    CHECK(eval_str("2.", 0.0) == 2.0);
    CHECK(eval_str("1e-3", 0.0) == 1e-3);
    CHECK(eval_str("0.1", 0.0) == 0.1);  // shortest round-trip literal survives printing
    CHECK(expr::pretty_print(*expr::parse("0.1")) == "0.1");
    CHECK(expr::pretty_print(*expr::parse("1500")) == "1500");
}

TEST_CASE("parse errors carry the offset of the first unusable character") {
    struct Case {
        const char* src;
        std::size_t offset;
        const char* expected;
    };
    const Case cases[] = {
        {"", 0, "number, 'x', function call, or '('"},
        {"(x", 2, "')'"},
        {"2x", 1, "operator or end of input"},
        {"x+", 2, "number, 'x', function call, or '('"},
        {"()", 1, "number, 'x', function call, or '('"},
        {"y", 0, "'x' or a function name (exp, ln, sqrt, abs, sinh, cosh, pow)"},
        {"foo(x)", 0, "'x' or a function name (exp, ln, sqrt, abs, sinh, cosh, pow)"},
        {"pow(x)", 5, "',' (pow takes two arguments)"},
        {"exp(x,x)", 5, "')' (unary function)"},
        {"exp x", 4, "'('"},  // whitespace is skipped before the offset is taken
        {"1e999", 0, "representable number"},
        {".", 0, "number"},
        {"2e", 1, "operator or end of input"},
        {"x + * 2", 4, "number, 'x', function call, or '('"},
    };
    for (const auto& c : cases) {
        try {
            (void)expr::parse(c.src);
            FAIL_CHECK("no parse_error for \"" << c.src << "\"");
        } catch (const parse_error& e) {
            CHECK_MESSAGE(e.offset() == c.offset, c.src << ": offset " << e.offset());
            CHECK_MESSAGE(e.expected() == c.expected, c.src << ": expected " << e.expected());
        }
    }
}

TEST_CASE("domain errors name the offending subexpression") {
    try {
        (void)eval_str("ln(x)", -1.0);
        FAIL_CHECK("ln of negative did not throw");
    } catch (const eval_error& e) {
        CHECK(e.subexpr() == "ln(x)");
        CHECK(e.argument() == -1.0);
        CHECK(std::string(e.what()).find("non-positive") != std::string::npos);
    }
    try {
        (void)eval_str("1+sqrt(x-2)", 0.0);
        FAIL_CHECK("sqrt of negative did not throw");
    } catch (const eval_error& e) {
        CHECK(e.subexpr() == "sqrt(x-2)");
        CHECK(e.argument() == -2.0);
    }
    try {
        (void)eval_str("x^0.5", -4.0);
        FAIL_CHECK("negative base did not throw");
    } catch (const eval_error& e) {
        CHECK(e.subexpr() == "x^0.5");
        CHECK(std::string(e.what()).find("non-integer") != std::string::npos);
    }
    try {
        (void)eval_str("(x-x)^-1", 5.0);
        FAIL_CHECK("0^-1 did not throw");
    } catch (const eval_error& e) {
        CHECK(e.subexpr() == "(x-x)^-1");
        CHECK(std::string(e.what()).find("negative power") != std::string::npos);
    }
    // Overflow is reported at the top level, not per node.
    try {
        (void)eval_str("exp(exp(x))", 10.0);
        FAIL_CHECK("overflow did not throw");
    } catch (const eval_error& e) {
        CHECK(std::string(e.what()).find("non-finite") != std::string::npos);
    }
    CHECK_THROWS_AS((void)eval_str("1/x", 0.0), eval_error);
    // Integer exponents on negative bases are fine.
    CHECK(eval_str("x^2", -3.0) == 9.0);
    CHECK(eval_str("x^3", -2.0) == -8.0);
}

TEST_CASE("central difference converges at the expected rate") {
    auto f = [](double x) { return std::exp(x); };
    const double want = std::exp(1.0);
    // O(h^2) truncation: shrinking h by 10 should shave ~100x until rounding
    // takes over near h ~ cbrt(eps).
    const double e2 = std::fabs(expr::central_difference(f, 1.0, 1e-2) - want);
    const double e3 = std::fabs(expr::central_difference(f, 1.0, 1e-3) - want);
    const double e4 = std::fabs(expr::central_difference(f, 1.0, 1e-4) - want);
    CHECK(e2 / e3 > 50.0);
    CHECK(e2 / e3 < 200.0);
    CHECK(e3 / e4 > 50.0);
    CHECK(e3 / e4 < 200.0);
    // Quadratics differentiate exactly up to rounding at any step.
    auto q = [](double x) { return 3.0 * x * x + 2.0 * x + 1.0; };
    CHECK(rel_err(expr::central_difference(q, 5.0, 0.125), 32.0) <= 1e-14);
    // The realized-spacing denominator makes the identity differentiate to
    // exactly 1 even when x + h rounds far from the nominal step (here the
    // realized spacing is 134 ulps of 1e8, not 2e-6; a nominal-2h quotient
    // would report ~0.9984).
    const double ident = expr::central_difference([](double x) { return x; }, 1e8, 1e-6);
    CHECK(ident == 1.0);
}

TEST_CASE("builtin specs carry exact values and derivatives") {
    auto e = expr::FunctionSpec::exponential();
    CHECK(e.eval(2.0) == std::exp(2.0));
    CHECK(e.derivative(2.0) == std::exp(2.0));
    CHECK(e.label() == "exp(x)");
    CHECK(e.has_exact_derivative());

    auto l = expr::FunctionSpec::ln1p();
    CHECK(l.eval(1.0) == std::log1p(1.0));
    CHECK(l.derivative(1.0) == 0.5);
    CHECK(l.label() == "ln(1+x)");

    auto p = expr::FunctionSpec::power(2.5);
    CHECK(p.eval(4.0) == 32.0);
    CHECK(p.derivative(4.0) == 20.0);

    auto a = expr::FunctionSpec::affine(2.0, -3.0);
    CHECK(a.eval(5.0) == 7.0);
    CHECK(a.derivative(100.0) == 2.0);
    CHECK(a.label() == "2*x-3");

    auto xe = expr::FunctionSpec::xexp();
    CHECK(xe.eval(2.0) == 2.0 * std::exp(2.0));
    CHECK(xe.derivative(2.0) == 3.0 * std::exp(2.0));
    CHECK(xe.label() == "x*exp(x)");
}

TEST_CASE("parsed specs agree with builtins") {
    auto grid = []() {
        std::vector<double> xs;
        for (int i = -30; i <= 30; ++i) xs.push_back(std::pow(10.0, i / 10.0));
        return xs;
    }();

    const double step = std::cbrt(std::numeric_limits<double>::epsilon());
    for (double a : {0.5, 2.0, 3.0, -1.0}) {
        auto exact = expr::FunctionSpec::power(a);
        auto approx = expr::FunctionSpec::parsed("x^" + std::to_string(a));
        CHECK_FALSE(approx.has_exact_derivative());
        for (double x : grid) {
            CHECK(rel_err(approx.eval(x), exact.eval(x)) <= 1e-15);
            // O(h^2) truncation of the central difference: the relative error
            // is |(a-1)(a-2)|/6 * (h/x)^2 with h = cbrt(eps)*max(|x|,1).
            const double r = step / std::min(x, 1.0);
            const double tol = 1e-9 + 4.0 * std::fabs((a - 1.0) * (a - 2.0)) / 6.0 * r * r;
            CHECK_MESSAGE(rel_err(approx.derivative(x), exact.derivative(x)) <= tol,
                          "a=" << a << " x=" << x);
        }
    }

    auto exact = expr::FunctionSpec::exponential();
    auto approx = expr::FunctionSpec::parsed("exp(x)");
    for (double x = 1e-3; x <= 8.0; x += 0.25) {
        CHECK(approx.eval(x) == exact.eval(x));
        CHECK_MESSAGE(rel_err(approx.derivative(x), exact.derivative(x)) <= 1e-9, "x=" << x);
    }

    // The parsed label is the canonical printed form, not the raw source.
    CHECK(expr::FunctionSpec::parsed(" x ^ 2 ").label() == "x^2");
    CHECK_THROWS_AS((void)expr::FunctionSpec::parsed("exp(x"), parse_error);
}
