#include "mnconvex/convexity.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <utility>

#include "mnconvex/errors.hpp"
#include "mnconvex/format.hpp"

namespace mnconvex::convexity {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double norm_margin(double lhs, double rhs) {
    return (rhs - lhs) / (1.0 + std::fabs(lhs) + std::fabs(rhs));
}

struct StepScan {
    long long rises = 0;
    long long falls = 0;
    std::optional<Witness> min_step;  // most negative normalized step
    std::optional<Witness> max_step;  // most positive normalized step
};

// Consecutive-difference scan of an already-evaluated sequence. Points must
// be in grid order.
StepScan scan_steps(const std::vector<std::pair<double, double>>& pts, double tol) {
    StepScan s;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const auto& [x1, g1] = pts[i];
        const auto& [x2, g2] = pts[i + 1];
        const double m = norm_margin(g1, g2);  // positive when rising
        if (m > tol) ++s.rises;
        if (m < -tol) ++s.falls;
        const Witness w{x1, x2, g1, g2, m};
        if (!s.min_step || m < s.min_step->margin) s.min_step = w;
        if (!s.max_step || m > s.max_step->margin) s.max_step = w;
    }
    return s;
}

Monotonicity steps_to_monotonicity(const StepScan& s) {
    if (s.rises > 0 && s.falls > 0) return Monotonicity::Neither;
    if (s.rises > 0) return Monotonicity::Increasing;
    if (s.falls > 0) return Monotonicity::Decreasing;
    return Monotonicity::Constant;
}

Outcome monotonicity_to_outcome(Monotonicity m) {
    switch (m) {
        case Monotonicity::Increasing:
            return Outcome::ConvexHolds;
        case Monotonicity::Decreasing:
            return Outcome::ConcaveHolds;
        case Monotonicity::Constant:
            return Outcome::BothHold;
        case Monotonicity::Neither:
            return Outcome::NeitherHolds;
    }
    return Outcome::Inconclusive;
}

// Shared between step scans and pairwise scans: the same extremes-and-counts
// summary determines the verdict shape.
Verdict assemble_verdict(const StepScan& s, long long samples_used) {
    Verdict v;
    v.samples_used = samples_used;
    if (!s.min_step) {  // fewer than two usable values
        v.outcome = Outcome::Inconclusive;
        v.min_margin = kNaN;
        return v;
    }
    const double lo = s.min_step->margin;
    const double hi = s.max_step->margin;
    v.outcome = monotonicity_to_outcome(steps_to_monotonicity(s));
    switch (v.outcome) {
        case Outcome::ConvexHolds:
            v.witnesses = {*s.min_step};
            v.min_margin = lo;
            break;
        case Outcome::ConcaveHolds:
            v.witnesses = {*s.max_step};
            v.min_margin = -hi;
            break;
        case Outcome::BothHold:
            v.witnesses = {std::fabs(lo) >= std::fabs(hi) ? *s.min_step : *s.max_step};
            v.min_margin = -std::max(std::fabs(lo), std::fabs(hi));
            break;
        case Outcome::NeitherHolds:
            v.witnesses = {*s.min_step, *s.max_step};
            v.min_margin = std::min(lo, -hi);
            break;
        case Outcome::Inconclusive:
            v.min_margin = kNaN;
            break;
    }
    return v;
}

struct GridEval {
    std::vector<std::pair<double, double>> pts;
    long long failures = 0;
    long long total = 0;
};

template <typename Fn>
GridEval eval_on_grid(const IntervalSpec& iv, Fn&& fn) {
    const auto grid = monotone_grid(iv);
    GridEval ge;
    ge.total = static_cast<long long>(grid.size());
    ge.pts.reserve(grid.size());
    for (double x : grid) {
        try {
            const double g = fn(x);
            if (std::isfinite(g))
                ge.pts.emplace_back(x, g);
            else
                ++ge.failures;
        } catch (const eval_error&) {
            ++ge.failures;
        }
    }
    return ge;
}

bool too_many_failures(const GridEval& ge) {
    return ge.failures * 100 > ge.total || ge.pts.size() < 2;
}

Verdict inconclusive_verdict(long long samples_used) {
    Verdict v;
    v.outcome = Outcome::Inconclusive;
    v.min_margin = kNaN;
    v.samples_used = samples_used;
    return v;
}

}  // namespace

Monotonicity monotone_classify(const std::function<double(double)>& g, const IntervalSpec& iv,
                               double tol) {
    const auto grid = monotone_grid(iv);
    std::vector<std::pair<double, double>> pts;
    pts.reserve(grid.size());
    for (double x : grid) {
        const double v = g(x);
        if (!std::isfinite(v))
            throw precondition_error("monotone_classify: non-finite sample at x = " +
                                     format17(x));
        pts.emplace_back(x, v);
    }
    return steps_to_monotonicity(scan_steps(pts, tol));
}

Verdict monotone_verdict(const std::function<double(double)>& g, const IntervalSpec& iv,
                         double tol) {
    const GridEval ge = eval_on_grid(iv, g);
    if (too_many_failures(ge))
        return inconclusive_verdict(static_cast<long long>(ge.pts.size()));
    Verdict v = assemble_verdict(scan_steps(ge.pts, tol), static_cast<long long>(ge.pts.size()));
    return v;
}

Verdict criterion_check(const expr::FunctionSpec& f, PQPair pq, const IntervalSpec& iv,
                        double tol) {
    if (!std::isfinite(pq.p) || !std::isfinite(pq.q))
        throw precondition_error("criterion exponents must be finite");
    const GridEval ge = eval_on_grid(iv, [&](double x) {
        const double fx = f.eval(x);
        if (std::isfinite(fx) && fx <= 0.0)
            throw precondition_error("criterion requires f > 0 on the interval; f(" +
                                     format17(x) + ") = " + format17(fx));
        const double dfx = f.derivative(x);
        return std::pow(x, 1.0 - pq.p) * dfx * std::pow(fx, pq.q - 1.0);
    });
    if (too_many_failures(ge)) return inconclusive_verdict(static_cast<long long>(ge.pts.size()));
    return assemble_verdict(scan_steps(ge.pts, tol), static_cast<long long>(ge.pts.size()));
}

namespace {

double mean_letter_exponent(means::MeanKind k, const char* which) {
    switch (k.family) {
        case means::Family::Arithmetic:
            return 1.0;
        case means::Family::Geometric:
            return 0.0;
        case means::Family::Harmonic:
            return -1.0;
        default:
            throw precondition_error(std::string("nine-case criterion: ") + which +
                                     " must be one of A, G, H");
    }
}

}  // namespace

Verdict nine_case_check(const expr::FunctionSpec& f, means::MeanKind M, means::MeanKind N,
                        const IntervalSpec& iv, double tol) {
    return criterion_check(
        f, {mean_letter_exponent(M, "inner mean"), mean_letter_exponent(N, "outer mean")}, iv,
        tol);
}

Verdict log_convexity_check(const expr::FunctionSpec& f, const IntervalSpec& iv, double tol) {
    return criterion_check(f, {1.0, 0.0}, iv, tol);
}

Verdict definitional_check(const expr::FunctionSpec& f, means::MeanKind M, means::MeanKind N,
                           const IntervalSpec& iv, double tol) {
    const auto pairs = sample_pairs(iv, true);
    const bool outer_arithmetic = N.family == means::Family::Arithmetic;

    StepScan s;  // reused as a min/max/counters accumulator over pair margins
    long long failures = 0;
    long long used = 0;
    for (const auto& pr : pairs) {
        try {
            const double mx = means::evaluate(M, means::PositivePair(pr.x, pr.y));
            const double fm = f.eval(mx);
            const double fx = f.eval(pr.x);
            const double fy = f.eval(pr.y);
            if (!std::isfinite(fm) || !std::isfinite(fx) || !std::isfinite(fy)) {
                ++failures;
                continue;
            }
            double outer;
            if (outer_arithmetic) {
                outer = 0.5 * fx + 0.5 * fy;
            } else {
                if (!(fx > 0.0) || !(fy > 0.0))
                    throw precondition_error(
                        "definitional check: outer mean " + N.str() +
                        " needs positive values, got f(" + format17(pr.x) + ") = " +
                        format17(fx) + ", f(" + format17(pr.y) + ") = " + format17(fy));
                outer = means::evaluate(N, means::PositivePair(fx, fy));
            }
            if (!std::isfinite(outer)) {
                ++failures;
                continue;
            }
            const double m = norm_margin(fm, outer);  // >= 0 on the convex side
            if (m > tol) ++s.rises;
            if (m < -tol) ++s.falls;
            const Witness w{pr.x, pr.y, fm, outer, m};
            if (!s.min_step || m < s.min_step->margin) s.min_step = w;
            if (!s.max_step || m > s.max_step->margin) s.max_step = w;
            ++used;
        } catch (const eval_error&) {
            ++failures;
        }
    }
    if (failures * 100 > static_cast<long long>(pairs.size()) || used < 2)
        return inconclusive_verdict(used);
    return assemble_verdict(s, used);
}

}  // namespace mnconvex::convexity
