#include "mnconvex/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>

#include "mnconvex/errors.hpp"
#include "mnconvex/format.hpp"

namespace mnconvex::quadrature {

namespace {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15 nodes/weights).
// Abscissae are for the half-interval; index 7 is the midpoint. Odd indices
// (1, 3, 5) plus the midpoint form the embedded Gauss rule.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
    double kronrod;
    double gauss;
    double resabs;  // Kronrod rule applied to |f|
};

struct Accum {
    double value = 0.0;
    double error = 0.0;
    long long evaluations = 0;
};

double sample(const std::function<double(double)>& f, double x, double lo, double hi) {
    const double v = f(x);
    if (!std::isfinite(v))
        throw quad_error(quad_error::Kind::NonFiniteSample, lo, hi, x,
                         "integrand returned a non-finite value at x = " + format17(x) +
                             " in panel [" + format17(lo) + ", " + format17(hi) + "]");
    return v;
}

Panel gk15(const std::function<double(double)>& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    const double fc = sample(f, center, lo, hi);
    double kron = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    double resabs = kWgk[7] * std::fabs(fc);

    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = sample(f, center - dx, lo, hi);
        const double f2 = sample(f, center + dx, lo, hi);
        kron += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
    }
    return {kron * half, gauss * half, resabs * half};
}

double panel_error(const Panel& p) {
    // |K - G| is zero whenever both rules are exact, so floor the estimate at
    // the rounding noise of the function values themselves.
    return std::max(std::fabs(p.kronrod - p.gauss), 50.0 * kEps * p.resabs);
}

void refine(const std::function<double(double)>& f, double lo, double hi, const Panel& panel,
            double tol, int depth, Accum& acc) {
    const double err = panel_error(panel);
    if (err <= tol) {
        acc.value += panel.kronrod;
        acc.error += err;
        return;
    }
    if (depth >= kMaxDepth) {
        throw quad_error(quad_error::Kind::MaxDepth, lo, hi, 0.5 * (lo + hi),
                         "bisection depth limit (" + std::to_string(kMaxDepth) +
                             ") reached on panel [" + format17(lo) + ", " + format17(hi) +
                             "] with error estimate " + format17(err) +
                             " above local tolerance " + format17(tol));
    }
    const double mid = 0.5 * (lo + hi);
    const Panel left = gk15(f, lo, mid);
    const Panel right = gk15(f, mid, hi);
    acc.evaluations += 30;
    refine(f, lo, mid, left, 0.5 * tol, depth + 1, acc);
    refine(f, mid, hi, right, 0.5 * tol, depth + 1, acc);
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                     double abs_tol) {
    if (!std::isfinite(a) || !std::isfinite(b))
        throw precondition_error("integrate: bounds must be finite (got [" + format17(a) + ", " +
                                 format17(b) + "])");
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw precondition_error("integrate: tolerances must be positive (rel " +
                                 format17(rel_tol) + ", abs " + format17(abs_tol) + ")");
    if (a == b) return {0.0, 0.0, 0};

    double lo = a, hi = b, sign = 1.0;
    if (lo > hi) {
        std::swap(lo, hi);
        sign = -1.0;
    }

    Accum acc;
    const Panel root = gk15(f, lo, hi);
    acc.evaluations = 15;
    const double tol = std::max(abs_tol, rel_tol * std::fabs(root.kronrod));
    refine(f, lo, hi, root, tol, 0, acc);
    return {sign * acc.value, acc.error, acc.evaluations};
}

double mean_value(const std::function<double(double)>& f, double a, double b, double rel_tol,
                  double abs_tol) {
    if (a == b)
        throw precondition_error("mean_value: endpoints must differ (got " + format17(a) + ")");
    return integrate(f, a, b, rel_tol, abs_tol).value / (b - a);
}

}  // namespace mnconvex::quadrature
