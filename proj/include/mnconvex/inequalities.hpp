#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mnconvex/convexity.hpp"
#include "mnconvex/expr.hpp"
#include "mnconvex/means.hpp"
#include "mnconvex/quadrature.hpp"
#include "mnconvex/sampling.hpp"

namespace mnconvex::inequalities {

struct Tolerances {
    // A normalized margin below -equality counts as a failure; margins are
    // (big - small) / (1 + |lhs| + |rhs|) oriented so the claim holds at >= 0.
    double equality = 1e-9;
    double quad_rel = 1e-10;
    double quad_abs = 1e-12;
};

enum class Satisfied { Yes, No, Inconclusive };

// A hypothesis of a claim, with the classification evidence behind it. For
// monotonicity hypotheses the verdict encodes the direction as in
// convexity::monotone_verdict (increasing -> ConvexHolds, decreasing ->
// ConcaveHolds, constant -> BothHold).
struct Precondition {
    std::string name;
    Satisfied satisfied = Satisfied::Inconclusive;
    convexity::Verdict verdict;
};

// Aggregate over all tested pairs of one inequality row. A pair lands in
// `inconclusive` when its margin is within 10x the propagated quadrature
// error (only quadrature-backed rows); failures count unconditionally
// otherwise, whether or not the row's preconditions held -- consumers gate on
// `depends_on` against the report's preconditions.
struct InequalityStat {
    std::string description;
    std::vector<std::string> depends_on;
    long long pairs_tested = 0;
    long long failures = 0;
    long long inconclusive = 0;
    // Most adverse conclusive margin; NaN when no pair was conclusive.
    double min_margin = std::numeric_limits<double>::quiet_NaN();
    std::optional<convexity::Witness> worst_witness;
};

struct CheckReport {
    std::string name;
    std::vector<Precondition> preconditions;
    std::vector<InequalityStat> inequalities;
    std::uint64_t seed = 0;
    Tolerances tolerances;
    // Per-pair or per-entry evaluation breakdowns that aborted part of the
    // run (first few messages plus a count); empty on a clean run.
    std::vector<std::string> errors;
};

// P = f(E(x,y)) with E = sqrt(G * A), R = mean value of f between x and y.
struct EbanksFunctionals {
    double inner_mean = 0.0;
    double P = 0.0;
    double R = 0.0;
    quadrature::QuadResult quad;
};

struct EbanksOutcome {
    CheckReport report;
    EbanksFunctionals functionals;
};

enum class Profile { Lower, Upper };
enum class Part { One, Two };

// Sampling recipe for suite runs. Leaving the interval range empty
// (lo >= hi) or the sample count non-positive lets each suite fill in its
// documented default window / trial count; the seed is always honored.
struct SamplePlan {
    IntervalSpec interval{0.0, 0.0, 0, Sampling::LogUniform, 0};
    bool structured = true;
    Tolerances tol{};
};

// Default windows (lo, hi, trial count) per suite family.
inline constexpr IntervalSpec kEbanksWindow{1e-2, 1e2, 10000, Sampling::LogUniform, 0};
inline constexpr IntervalSpec kIdentricWindow{0.1, 5.0, 10000, Sampling::LogUniform, 0};
inline constexpr IntervalSpec kAlzerWindow{1e-2, 1e2, 1000, Sampling::LogUniform, 0};
inline constexpr IntervalSpec kChainWindow{1e-6, 1e6, 100000, Sampling::LogUniform, 0};
inline constexpr IntervalSpec kAlzerMonoWindow{1e-2, 1e2, 1000, Sampling::LogUniform, 0};
inline constexpr IntervalSpec kChebyshevWindow{0.5, 5.0, 1000, Sampling::Uniform, 0};
inline constexpr IntervalSpec kJensenWindow{0.2, 3.0, 1000, Sampling::Uniform, 0};
inline constexpr IntervalSpec kLlAlWindow{0.5, 3.0, 1000, Sampling::LogUniform, 0};

// Fills defaulted fields of plan.interval from the window (see SamplePlan).
SamplePlan resolve_plan(SamplePlan plan, const IntervalSpec& window);

// -5.0 .. 5.0 in steps of 0.1; hits 0 and -1 exactly (both are continuous
// extensions of J_p).
std::vector<double> default_p_grid();

// ---- Single-instance checks. These classify preconditions on the pair's
// span (x != y required) and evaluate one pair; errors propagate.

// f(E(x,y)) <= mean value of f. Hypotheses: f strictly increasing, f convex.
EbanksOutcome ebanks_check(const expr::FunctionSpec& f, const means::PositivePair& pair,
                           const Tolerances& tol = {});

// Lower: I(f(x),f(y)) >= f(I(x,y)) under f strictly increasing, convex,
// log-convex. Upper: I(f(x),f(y)) <= f(A(x,y)) under f strictly increasing,
// concave, log-concave.
CheckReport identric_sandwich(const expr::FunctionSpec& f, const means::PositivePair& pair,
                              Profile profile, const Tolerances& tol = {});

// J_p(f(x),f(y)) >= f(J_p(x,y)) and <= f(A(x,y)), plus the three-step
// decomposition through the mean value of f. Part One requires p <= 1
// (hypotheses: f strictly increasing, convex, f^p increasing); Part Two
// requires p > 1 (f strictly decreasing, convex, f^p decreasing). The
// decomposition's first step is gated by f^(p-1)*f' increasing in both parts.
CheckReport alzer_sandwich(const expr::FunctionSpec& f, double p, const means::PositivePair& pair,
                           Part part, const Tolerances& tol = {});

// L(x,y) <= I(x,y) <= A(x,y); no hypotheses. x == y allowed (ties).
CheckReport mean_chain(const means::PositivePair& pair, const Tolerances& tol = {});

// J_p(x,y) increasing in p along the grid; ties allowed. Witnesses carry
// (p1, p2) in their x/y slots. x == y allowed.
CheckReport alzer_monotone(const means::PositivePair& pair, const std::vector<double>& p_grid,
                           const Tolerances& tol = {});

// f(L(x,y)) <= L(f(x),f(y)) and f(A(x,y)) <= L(f(x),f(y)) when f is
// increasing and log-convex; both reversed when log-concave (log-affine f
// tests the forward direction).
CheckReport ll_al_check(const expr::FunctionSpec& f, const means::PositivePair& pair,
                        const Tolerances& tol = {});

// int(w f) int(w g) <= int(w) int(w f g) for co-monotone f, g (>= when
// oppositely monotone), weight w > 0. Requires 0 < a < b. Margins are scaled
// by int(w)^2 * (1 + max|f|) * (1 + max|g|) and insulated against the
// propagated quadrature error.
CheckReport chebyshev_check(const std::function<double(double)>& f,
                            const std::function<double(double)>& g,
                            const std::function<double(double)>& w, double a, double b,
                            const Tolerances& tol = {});

// f(mean of phi) vs mean of f(phi) on [a, b]; the direction follows f's
// convexity classified over the range of phi (equality row when f is affine
// there). phi's range must stay positive.
CheckReport jensen_check(const expr::FunctionSpec& f, const std::function<double(double)>& phi,
                         double a, double b, const Tolerances& tol = {});

// ---- Sampled suites: same rows aggregated over sample_pairs(plan) (or
// randomized instances for chebyshev/jensen). Per-pair evaluation errors are
// collected into report.errors instead of aborting.

CheckReport ebanks_suite(const expr::FunctionSpec& f, const SamplePlan& plan = {});
CheckReport identric_suite(const expr::FunctionSpec& f, Profile profile,
                           const SamplePlan& plan = {});
CheckReport alzer_suite(const expr::FunctionSpec& f, double p, Part part,
                        const SamplePlan& plan = {});
CheckReport mean_chain_suite(const SamplePlan& plan = {});
CheckReport alzer_monotone_suite(const std::vector<double>& p_grid, const SamplePlan& plan = {});
CheckReport chebyshev_suite(const SamplePlan& plan = {});
CheckReport jensen_suite(const SamplePlan& plan = {});
CheckReport ll_al_suite(const expr::FunctionSpec& f, const SamplePlan& plan = {});

// Aggregates the preconditions a row depends on: No if any is No, else
// Inconclusive if any is (or a depended-on name is missing), else Yes.
// Rows with an empty depends_on are unconditional (Yes).
Satisfied hypotheses_met(const CheckReport& report, const InequalityStat& row);

// A named, runnable audit; id matches the report name the run produces.
struct CatalogEntry {
    std::string id;
    std::function<CheckReport(const SamplePlan&)> run;
};

// Every theorem family over its default function/parameter instances,
// including the deliberate stress entries whose stated hypotheses fail.
std::vector<CatalogEntry> builtin_catalog();

// Runs every entry; an entry that throws contributes a report holding only
// its id and the error message.
std::vector<CheckReport> audit_all(const std::vector<CatalogEntry>& catalog,
                                   const SamplePlan& plan = {});

}  // namespace mnconvex::inequalities
