#pragma once

#include <functional>
#include <vector>

#include "mnconvex/expr.hpp"
#include "mnconvex/means.hpp"
#include "mnconvex/sampling.hpp"

namespace mnconvex::convexity {

inline constexpr double kDefaultTol = 1e-9;

// Normalized comparison tolerance: two values are tied when their difference
// is within tol * (1 + |lhs| + |rhs|).

enum class Outcome {
    ConvexHolds,
    ConcaveHolds,
    BothHold,      // every comparison within the tie band (affine-like)
    NeitherHolds,  // strict violations in both directions
    Inconclusive,  // too many evaluation failures to classify
};

enum class Monotonicity { Increasing, Decreasing, Constant, Neither };

// One concrete comparison backing a verdict. For interval scans, (x, y) are
// consecutive grid points and lhs/rhs the scanned values; for pairwise checks,
// (x, y) is the sampled pair and lhs/rhs the two sides of the inequality.
// margin is the normalized difference, oriented so negative means "against
// the convex reading".
struct Witness {
    double x = 0.0;
    double y = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
};

struct Verdict {
    Outcome outcome = Outcome::Inconclusive;
    // ConvexHolds/ConcaveHolds: the closest call. BothHold: the largest
    // excursion. NeitherHolds: one witness violating each direction.
    std::vector<Witness> witnesses;
    // Most adverse normalized margin in the direction of the outcome
    // (>= -tol when the outcome holds); NaN when Inconclusive.
    double min_margin = 0.0;
    long long samples_used = 0;
};

struct PQPair {
    double p;
    double q;
};

// Classifies g on the interval's deterministic grid via consecutive
// differences. Throws precondition_error if g produces a non-finite value.
Monotonicity monotone_classify(const std::function<double(double)>& g, const IntervalSpec& iv,
                               double tol = kDefaultTol);

// Failure-tolerant variant: per-point exceptions and non-finite values are
// skipped (more than 1% of the grid failing gives Inconclusive). The
// monotonicity lands in Outcome as Increasing -> ConvexHolds,
// Decreasing -> ConcaveHolds, Constant -> BothHold, Neither -> NeitherHolds.
Verdict monotone_verdict(const std::function<double(double)>& g, const IntervalSpec& iv,
                         double tol = kDefaultTol);

// Power-mean convexity criterion: f is (M_p, M_q)-convex on the interval iff
// g(x) = x^(1-p) * f'(x) * f(x)^(q-1) is increasing. Scans g on the grid and
// reports the monotonicity as an Outcome (mapping as in monotone_verdict).
// Requires f > 0 on the interval (precondition_error otherwise).
Verdict criterion_check(const expr::FunctionSpec& f, PQPair pq, const IntervalSpec& iv,
                        double tol = kDefaultTol);

// criterion_check with (p, q) taken from mean letters A -> 1, G -> 0, H -> -1.
// Only those three families are accepted.
Verdict nine_case_check(const expr::FunctionSpec& f, means::MeanKind M, means::MeanKind N,
                        const IntervalSpec& iv, double tol = kDefaultTol);

// (A, G)-convexity, i.e. log-convexity: criterion_check with (p, q) = (1, 0).
Verdict log_convexity_check(const expr::FunctionSpec& f, const IntervalSpec& iv,
                            double tol = kDefaultTol);

// Direct definition on sampled pairs: f(M(x, y)) vs N(f(x), f(y)), margin
// normalized as (N_side - f(M)) / (1 + |f(M)| + |N_side|). Unless N is the
// arithmetic mean, f must stay positive (precondition_error otherwise).
Verdict definitional_check(const expr::FunctionSpec& f, means::MeanKind M, means::MeanKind N,
                           const IntervalSpec& iv, double tol = kDefaultTol);

}  // namespace mnconvex::convexity
