#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mnconvex {

// Thrown by expr::parse. `offset` is a byte offset into the source string,
// pointing at the first character that could not be consumed (== source.size()
// when the input ended too early). `expected` names what the parser wanted.
class parse_error : public std::runtime_error {
public:
    parse_error(std::size_t offset, std::string expected)
        : std::runtime_error("parse error at offset " + std::to_string(offset) +
                             ": expected " + expected),
          offset_(offset),
          expected_(std::move(expected)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::string expected_;
};

// Thrown by expr::eval when a node is applied outside its domain (ln of a
// non-positive value, sqrt of a negative, 0 raised to a negative power,
// a negative base raised to a non-integer power) or when the final result is
// non-finite. `subexpr` is the pretty-printed offending subexpression.
class eval_error : public std::runtime_error {
public:
    eval_error(std::string subexpr, double argument, const std::string& what_arg)
        : std::runtime_error(what_arg),
          subexpr_(std::move(subexpr)),
          argument_(argument) {}

    const std::string& subexpr() const noexcept { return subexpr_; }
    double argument() const noexcept { return argument_; }

private:
    std::string subexpr_;
    double argument_;
};

// Thrown by quadrature::integrate. MaxDepth means the bisection stack hit its
// depth limit before the local tolerance was met; NonFiniteSample means the
// integrand returned NaN/Inf at `abscissa`. `panel_lo/hi` bound the offending
// subinterval.
class quad_error : public std::runtime_error {
public:
    enum class Kind { NonFiniteSample, MaxDepth };

    quad_error(Kind kind, double panel_lo, double panel_hi, double abscissa,
               const std::string& what_arg)
        : std::runtime_error(what_arg),
          kind_(kind),
          panel_lo_(panel_lo),
          panel_hi_(panel_hi),
          abscissa_(abscissa) {}

    Kind kind() const noexcept { return kind_; }
    double panel_lo() const noexcept { return panel_lo_; }
    double panel_hi() const noexcept { return panel_hi_; }
    double abscissa() const noexcept { return abscissa_; }

private:
    Kind kind_;
    double panel_lo_;
    double panel_hi_;
    double abscissa_;
};

// Thrown when a structural requirement of a computation is violated (mean
// arguments must be positive, f must be positive for a multiplicative mean,
// weight must be positive, interval malformed) as opposed to a check merely
// failing.
class precondition_error : public std::runtime_error {
public:
    explicit precondition_error(const std::string& what_arg)
        : std::runtime_error(what_arg) {}
};

}  // namespace mnconvex
