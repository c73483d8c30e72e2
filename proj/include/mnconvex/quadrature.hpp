#pragma once

#include <functional>

namespace mnconvex::quadrature {

// Bisection depth limit; exceeding it raises quad_error{MaxDepth} rather than
// returning a value whose error estimate was never met.
inline constexpr int kMaxDepth = 60;

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;  // sum of accepted per-panel estimates
    long long evaluations = 0;    // integrand calls (15 per panel)
};

// Adaptive Gauss(7)/Kronrod(15) integration of f over [a, b]. Panels split
// until |K15 - G7| (floored at 50*eps*resabs) meets the local share of
// max(abs_tol, rel_tol * |first Kronrod estimate|), halved per bisection.
// a > b integrates the reversed interval and negates; a == b returns zero.
// Throws quad_error on a non-finite sample or depth exhaustion,
// precondition_error on non-finite bounds or non-positive tolerances.
// Deterministic: fixed node order, left-to-right panel summation.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = 1e-10, double abs_tol = 1e-12);

// integrate(f, a, b) / (b - a); symmetric in a, b. Requires a != b.
double mean_value(const std::function<double(double)>& f, double a, double b,
                  double rel_tol = 1e-10, double abs_tol = 1e-12);

}  // namespace mnconvex::quadrature
