#include "mnconvex/inequalities.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "mnconvex/errors.hpp"
#include "mnconvex/format.hpp"
#include "mnconvex/rng.hpp"

namespace mnconvex::inequalities {

namespace {

using convexity::Outcome;
using convexity::Verdict;
using expr::FunctionSpec;

constexpr int kClassifyGrid = 1001;  // suite-level precondition scans
constexpr int kSpanGrid = 257;       // single-pair span scans

// Precondition names shared between reports and row dependencies.
constexpr const char* kIncr = "f strictly increasing";
constexpr const char* kDecr = "f strictly decreasing";
constexpr const char* kConvex = "f convex";
constexpr const char* kConcave = "f concave";
constexpr const char* kLogConvex = "f log-convex";
constexpr const char* kLogConcave = "f log-concave";
constexpr const char* kAuxLitIncr = "aux literal: f^p increasing";
constexpr const char* kAuxLitDecr = "aux literal: f^p decreasing";
constexpr const char* kAuxProof = "aux proof: f^(p-1)*f' increasing";
constexpr const char* kFMono = "f monotone";
constexpr const char* kGMono = "g monotone";
constexpr const char* kJensenPre = "f convex or concave on phi range";

// Row descriptions (stable strings; goldens and report consumers key on
// them).
constexpr const char* kEbanksRow = "f(E(x,y)) <= mean_value(f,x,y)";
constexpr const char* kIdentricLowerRow = "I(f(x),f(y)) >= f(I(x,y))";
constexpr const char* kIdentricUpperRow = "I(f(x),f(y)) <= f(A(x,y))";
constexpr const char* kAlzerLowerRow = "J_p(f(x),f(y)) >= f(J_p(x,y))";
constexpr const char* kAlzerUpperRow = "J_p(f(x),f(y)) <= f(A(x,y))";
constexpr const char* kChain1Row = "J_p(f(x),f(y)) >= mean_value(f,x,y)";
constexpr const char* kChain2Row = "mean_value(f,x,y) >= f(A(x,y))";
constexpr const char* kChain3Row = "f(A(x,y)) >= f(J_p(x,y))";
constexpr const char* kChainLIRow = "L(x,y) <= I(x,y)";
constexpr const char* kChainIARow = "I(x,y) <= A(x,y)";
constexpr const char* kAlzerMonoRow = "J_p(x,y) increasing in p";
constexpr const char* kLlRowFwd = "f(L(x,y)) <= L(f(x),f(y))";
constexpr const char* kAlRowFwd = "f(A(x,y)) <= L(f(x),f(y))";
constexpr const char* kLlRowRev = "f(L(x,y)) >= L(f(x),f(y))";
constexpr const char* kAlRowRev = "f(A(x,y)) >= L(f(x),f(y))";
constexpr const char* kChebRowCo = "int(w f) * int(w g) <= int(w) * int(w f g)";
constexpr const char* kChebRowOpp = "int(w f) * int(w g) >= int(w) * int(w f g)";
constexpr const char* kJensenConvexRow = "f(mean_value(phi)) <= mean_value(f o phi)";
constexpr const char* kJensenConcaveRow = "f(mean_value(phi)) >= mean_value(f o phi)";
constexpr const char* kJensenEqRow = "f(mean_value(phi)) == mean_value(f o phi)";

double nscale(double a, double b) { return 1.0 + std::fabs(a) + std::fabs(b); }

// Accumulates one inequality row. `margin` must be normalized and oriented so
// the claim holds at >= 0; `quad_err` is the normalized quadrature
// uncertainty of the margin (0 for quadrature-free rows).
class RowAccum {
  public:
    RowAccum(std::string description, std::vector<std::string> depends_on) {
        stat_.description = std::move(description);
        stat_.depends_on = std::move(depends_on);
    }

    void add(double x, double y, double lhs, double rhs, double margin, double quad_err,
             const Tolerances& tol) {
        ++stat_.pairs_tested;
        if (!std::isfinite(margin) || (quad_err > 0.0 && std::fabs(margin) <= 10.0 * quad_err)) {
            ++stat_.inconclusive;
            return;
        }
        if (margin < -tol.equality) ++stat_.failures;
        if (margin < worst_) {
            worst_ = margin;
            stat_.min_margin = margin;
            stat_.worst_witness = convexity::Witness{x, y, lhs, rhs, margin};
        }
    }

    InequalityStat take() { return std::move(stat_); }

  private:
    InequalityStat stat_;
    double worst_ = std::numeric_limits<double>::infinity();
};

std::function<double(double)> fn_of(const FunctionSpec& f) {
    return [f](double x) { return f.eval(x); };
}

Satisfied satisfied_of(Outcome got, Outcome want, bool weak_ok) {
    if (got == Outcome::Inconclusive) return Satisfied::Inconclusive;
    if (got == want) return Satisfied::Yes;
    if (got == Outcome::BothHold && weak_ok) return Satisfied::Yes;
    return Satisfied::No;
}

Precondition monotone_precond(std::string name, std::function<double(double)> g,
                              const IntervalSpec& iv, double tol, bool want_increasing,
                              bool constant_ok) {
    Precondition pc;
    pc.name = std::move(name);
    pc.verdict = convexity::monotone_verdict(std::move(g), iv, tol);
    pc.satisfied = satisfied_of(
        pc.verdict.outcome, want_increasing ? Outcome::ConvexHolds : Outcome::ConcaveHolds,
        constant_ok);
    return pc;
}

Precondition criterion_precond(std::string name, const FunctionSpec& f, convexity::PQPair pq,
                               const IntervalSpec& iv, double tol, bool want_convex,
                               bool weak_ok) {
    Precondition pc;
    pc.name = std::move(name);
    pc.verdict = convexity::criterion_check(f, pq, iv, tol);
    pc.satisfied = satisfied_of(pc.verdict.outcome,
                                want_convex ? Outcome::ConvexHolds : Outcome::ConcaveHolds,
                                weak_ok);
    return pc;
}

IntervalSpec classify_iv(IntervalSpec iv) {
    iv.samples = kClassifyGrid;
    return iv;
}

IntervalSpec span_iv(const means::PositivePair& pr, const char* who) {
    const double lo = std::min(pr.x(), pr.y());
    const double hi = std::max(pr.x(), pr.y());
    if (lo == hi)
        throw precondition_error(std::string(who) + ": the pair must have x != y, got both = " +
                                 format17(lo));
    return {lo, hi, kSpanGrid, Sampling::LogUniform, 0};
}

template <typename Body>
void run_pairs(CheckReport& rep, const std::vector<Pair>& pairs, Body&& body) {
    long long errs = 0;
    for (const auto& pr : pairs) {
        try {
            body(pr);
        } catch (const std::exception& e) {
            if (errs < 3) rep.errors.push_back(e.what());
            ++errs;
        }
    }
    if (errs > 3)
        rep.errors.push_back(std::to_string(errs) + " pair evaluations failed in total");
}

}  // namespace

SamplePlan resolve_plan(SamplePlan plan, const IntervalSpec& window) {
    IntervalSpec& iv = plan.interval;
    if (!(iv.lo > 0.0 && iv.lo < iv.hi)) {
        iv.lo = window.lo;
        iv.hi = window.hi;
        iv.sampling = window.sampling;
    }
    if (iv.samples <= 0) iv.samples = window.samples;
    return plan;
}

std::vector<double> default_p_grid() {
    std::vector<double> grid(101);
    for (int i = 0; i <= 100; ++i) grid[static_cast<std::size_t>(i)] = (i - 50) / 10.0;
    return grid;
}

// ---- Ebanks: f(E) <= mean value of f.

namespace {

EbanksFunctionals ebanks_functionals(const FunctionSpec& f, double x, double y,
                                     const Tolerances& tol) {
    EbanksFunctionals e;
    e.inner_mean = means::ebanks(x, y);
    e.P = f.eval(e.inner_mean);
    const double lo = std::min(x, y), hi = std::max(x, y);
    e.quad = quadrature::integrate([&f](double t) { return f.eval(t); }, lo, hi, tol.quad_rel,
                                   tol.quad_abs);
    e.R = e.quad.value / (hi - lo);
    return e;
}

void add_ebanks_row(RowAccum& row, const FunctionSpec& f, double x, double y,
                    const Tolerances& tol) {
    const auto e = ebanks_functionals(f, x, y, tol);
    const double n = nscale(e.P, e.R);
    const double span = std::fabs(y - x);
    row.add(x, y, e.P, e.R, (e.R - e.P) / n, (e.quad.error_estimate / span) / n, tol);
}

std::vector<Precondition> ebanks_preconds(const FunctionSpec& f, const IntervalSpec& civ,
                                          double tol) {
    std::vector<Precondition> pcs;
    pcs.push_back(monotone_precond(kIncr, fn_of(f), civ, tol, true, false));
    pcs.push_back(criterion_precond(kConvex, f, {1.0, 1.0}, civ, tol, true, true));
    return pcs;
}

}  // namespace

EbanksOutcome ebanks_check(const FunctionSpec& f, const means::PositivePair& pair,
                           const Tolerances& tol) {
    const IntervalSpec iv = span_iv(pair, "ebanks_check");
    EbanksOutcome out;
    CheckReport& rep = out.report;
    rep.name = "ebanks f=" + f.label();
    rep.tolerances = tol;
    rep.preconditions = ebanks_preconds(f, iv, tol.equality);
    out.functionals = ebanks_functionals(f, pair.x(), pair.y(), tol);
    RowAccum row(kEbanksRow, {kIncr, kConvex});
    const double n = nscale(out.functionals.P, out.functionals.R);
    row.add(pair.x(), pair.y(), out.functionals.P, out.functionals.R,
            (out.functionals.R - out.functionals.P) / n,
            (out.functionals.quad.error_estimate / (iv.hi - iv.lo)) / n, tol);
    rep.inequalities.push_back(row.take());
    return out;
}

CheckReport ebanks_suite(const FunctionSpec& f, const SamplePlan& plan_in) {
    const SamplePlan plan = resolve_plan(plan_in, kEbanksWindow);
    validate(plan.interval);
    CheckReport rep;
    rep.name = "ebanks f=" + f.label();
    rep.seed = plan.interval.seed;
    rep.tolerances = plan.tol;
    rep.preconditions = ebanks_preconds(f, classify_iv(plan.interval), plan.tol.equality);
    RowAccum row(kEbanksRow, {kIncr, kConvex});
    run_pairs(rep, sample_pairs(plan.interval, plan.structured), [&](const Pair& pr) {
        if (pr.x == pr.y) return;
        add_ebanks_row(row, f, pr.x, pr.y, plan.tol);
    });
    rep.inequalities.push_back(row.take());
    return rep;
}

// ---- Identric sandwich.

namespace {

std::vector<Precondition> identric_preconds(const FunctionSpec& f, Profile profile,
                                            const IntervalSpec& civ, double tol) {
    std::vector<Precondition> pcs;
    pcs.push_back(monotone_precond(kIncr, fn_of(f), civ, tol, true, false));
    if (profile == Profile::Lower) {
        pcs.push_back(criterion_precond(kConvex, f, {1.0, 1.0}, civ, tol, true, true));
        pcs.push_back(criterion_precond(kLogConvex, f, {1.0, 0.0}, civ, tol, true, true));
    } else {
        pcs.push_back(criterion_precond(kConcave, f, {1.0, 1.0}, civ, tol, false, true));
        pcs.push_back(criterion_precond(kLogConcave, f, {1.0, 0.0}, civ, tol, false, true));
    }
    return pcs;
}

std::vector<std::string> identric_deps(Profile profile) {
    if (profile == Profile::Lower) return {kIncr, kConvex, kLogConvex};
    return {kIncr, kConcave, kLogConcave};
}

void add_identric_row(RowAccum& row, const FunctionSpec& f, Profile profile, double x, double y,
                      const Tolerances& tol) {
    const double fx = f.eval(x), fy = f.eval(y);
    const double lhs = means::identric(fx, fy);
    if (profile == Profile::Lower) {
        const double rhs = f.eval(means::identric(x, y));
        row.add(x, y, lhs, rhs, (lhs - rhs) / nscale(lhs, rhs), 0.0, tol);
    } else {
        const double rhs = f.eval(means::arithmetic(x, y));
        row.add(x, y, lhs, rhs, (rhs - lhs) / nscale(lhs, rhs), 0.0, tol);
    }
}

std::string identric_name(const FunctionSpec& f, Profile profile) {
    return std::string("identric profile=") + (profile == Profile::Lower ? "lower" : "upper") +
           " f=" + f.label();
}

}  // namespace

CheckReport identric_sandwich(const FunctionSpec& f, const means::PositivePair& pair,
                              Profile profile, const Tolerances& tol) {
    const IntervalSpec iv = span_iv(pair, "identric_sandwich");
    CheckReport rep;
    rep.name = identric_name(f, profile);
    rep.tolerances = tol;
    rep.preconditions = identric_preconds(f, profile, iv, tol.equality);
    RowAccum row(profile == Profile::Lower ? kIdentricLowerRow : kIdentricUpperRow,
                 identric_deps(profile));
    add_identric_row(row, f, profile, pair.x(), pair.y(), tol);
    rep.inequalities.push_back(row.take());
    return rep;
}

CheckReport identric_suite(const FunctionSpec& f, Profile profile, const SamplePlan& plan_in) {
    const SamplePlan plan = resolve_plan(plan_in, kIdentricWindow);
    validate(plan.interval);
    CheckReport rep;
    rep.name = identric_name(f, profile);
    rep.seed = plan.interval.seed;
    rep.tolerances = plan.tol;
    rep.preconditions = identric_preconds(f, profile, classify_iv(plan.interval),
                                          plan.tol.equality);
    RowAccum row(profile == Profile::Lower ? kIdentricLowerRow : kIdentricUpperRow,
                 identric_deps(profile));
    run_pairs(rep, sample_pairs(plan.interval, plan.structured), [&](const Pair& pr) {
        add_identric_row(row, f, profile, pr.x, pr.y, plan.tol);
    });
    rep.inequalities.push_back(row.take());
    return rep;
}

// ---- Alzer sandwich and its mean-value decomposition.

namespace {

void check_alzer_part(double p, Part part) {
    if (!std::isfinite(p)) throw precondition_error("alzer: p must be finite");
    if (part == Part::One && p > 1.0)
        throw precondition_error("alzer part one requires p <= 1, got p = " + format17(p));
    if (part == Part::Two && p <= 1.0)
        throw precondition_error("alzer part two requires p > 1, got p = " + format17(p));
}

std::vector<Precondition> alzer_preconds(const FunctionSpec& f, double p, Part part,
                                         const IntervalSpec& civ, double tol) {
    const bool one = part == Part::One;
    std::vector<Precondition> pcs;
    pcs.push_back(monotone_precond(one ? kIncr : kDecr, fn_of(f), civ, tol, one, false));
    pcs.push_back(criterion_precond(kConvex, f, {1.0, 1.0}, civ, tol, true, true));
    pcs.push_back(monotone_precond(
        one ? kAuxLitIncr : kAuxLitDecr,
        [f, p](double x) { return std::pow(f.eval(x), p); }, civ, tol, one, true));
    // The decomposition's Chebyshev step wants f^(p-1) * f' increasing in
    // both parts: the weight integral's sign flips together with f's
    // direction.
    pcs.push_back(monotone_precond(
        kAuxProof, [f, p](double x) { return std::pow(f.eval(x), p - 1.0) * f.derivative(x); },
        civ, tol, true, true));
    return pcs;
}

struct AlzerRows {
    RowAccum lower;
    RowAccum upper;
    RowAccum chain1;
    RowAccum chain2;
    RowAccum chain3;

    explicit AlzerRows(Part part)
        : lower(kAlzerLowerRow, main_deps(part)),
          upper(kAlzerUpperRow, main_deps(part)),
          chain1(kChain1Row, {part == Part::One ? kIncr : kDecr, kAuxProof}),
          chain2(kChain2Row, {kConvex}),
          chain3(kChain3Row, {part == Part::One ? kIncr : kDecr}) {}

    static std::vector<std::string> main_deps(Part part) {
        if (part == Part::One) return {kIncr, kConvex, kAuxLitIncr};
        return {kDecr, kConvex, kAuxLitDecr};
    }

    void finish_into(CheckReport& rep) {
        rep.inequalities.push_back(lower.take());
        rep.inequalities.push_back(upper.take());
        rep.inequalities.push_back(chain1.take());
        rep.inequalities.push_back(chain2.take());
        rep.inequalities.push_back(chain3.take());
    }
};

void add_alzer_rows(AlzerRows& rows, const FunctionSpec& f, double p, double x, double y,
                    const Tolerances& tol) {
    const double fx = f.eval(x), fy = f.eval(y);
    const double jff = means::alzer(p, fx, fy);
    const double fj = f.eval(means::alzer(p, x, y));
    const double fa = f.eval(means::arithmetic(x, y));
    rows.lower.add(x, y, jff, fj, (jff - fj) / nscale(jff, fj), 0.0, tol);
    rows.upper.add(x, y, jff, fa, (fa - jff) / nscale(jff, fa), 0.0, tol);

    const double lo = std::min(x, y), hi = std::max(x, y);
    const auto q = quadrature::integrate([&f](double t) { return f.eval(t); }, lo, hi,
                                         tol.quad_rel, tol.quad_abs);
    const double r = q.value / (hi - lo);
    const double qe = q.error_estimate / (hi - lo);
    rows.chain1.add(x, y, jff, r, (jff - r) / nscale(jff, r), qe / nscale(jff, r), tol);
    rows.chain2.add(x, y, r, fa, (r - fa) / nscale(r, fa), qe / nscale(r, fa), tol);
    rows.chain3.add(x, y, fa, fj, (fa - fj) / nscale(fa, fj), 0.0, tol);
}

std::string alzer_name(const FunctionSpec& f, double p, Part part) {
    return std::string("alzer part=") + (part == Part::One ? "one" : "two") +
           " p=" + format17(p) + " f=" + f.label();
}

}  // namespace

CheckReport alzer_sandwich(const FunctionSpec& f, double p, const means::PositivePair& pair,
                           Part part, const Tolerances& tol) {
    check_alzer_part(p, part);
    const IntervalSpec iv = span_iv(pair, "alzer_sandwich");
    CheckReport rep;
    rep.name = alzer_name(f, p, part);
    rep.tolerances = tol;
    rep.preconditions = alzer_preconds(f, p, part, iv, tol.equality);
    AlzerRows rows(part);
    add_alzer_rows(rows, f, p, pair.x(), pair.y(), tol);
    rows.finish_into(rep);
    return rep;
}

CheckReport alzer_suite(const FunctionSpec& f, double p, Part part, const SamplePlan& plan_in) {
    check_alzer_part(p, part);
    const SamplePlan plan = resolve_plan(plan_in, kAlzerWindow);
    validate(plan.interval);
    CheckReport rep;
    rep.name = alzer_name(f, p, part);
    rep.seed = plan.interval.seed;
    rep.tolerances = plan.tol;
    rep.preconditions = alzer_preconds(f, p, part, classify_iv(plan.interval),
                                       plan.tol.equality);
    AlzerRows rows(part);
    run_pairs(rep, sample_pairs(plan.interval, plan.structured), [&](const Pair& pr) {
        if (pr.x == pr.y) return;
        add_alzer_rows(rows, f, p, pr.x, pr.y, plan.tol);
    });
    rows.finish_into(rep);
    return rep;
}

// ---- Mean chain L <= I <= A.

namespace {

void add_chain_rows(RowAccum& li, RowAccum& ia, double x, double y, const Tolerances& tol) {
    const double l = means::logarithmic(x, y);
    const double i = means::identric(x, y);
    const double a = means::arithmetic(x, y);
    li.add(x, y, l, i, (i - l) / nscale(l, i), 0.0, tol);
    ia.add(x, y, i, a, (a - i) / nscale(i, a), 0.0, tol);
}

}  // namespace

CheckReport mean_chain(const means::PositivePair& pair, const Tolerances& tol) {
    CheckReport rep;
    rep.name = "mean-chain";
    rep.tolerances = tol;
    RowAccum li(kChainLIRow, {});
    RowAccum ia(kChainIARow, {});
    add_chain_rows(li, ia, pair.x(), pair.y(), tol);
    rep.inequalities.push_back(li.take());
    rep.inequalities.push_back(ia.take());
    return rep;
}

CheckReport mean_chain_suite(const SamplePlan& plan_in) {
    const SamplePlan plan = resolve_plan(plan_in, kChainWindow);
    validate(plan.interval);
    CheckReport rep;
    rep.name = "mean-chain";
    rep.seed = plan.interval.seed;
    rep.tolerances = plan.tol;
    RowAccum li(kChainLIRow, {});
    RowAccum ia(kChainIARow, {});
    run_pairs(rep, sample_pairs(plan.interval, plan.structured),
              [&](const Pair& pr) { add_chain_rows(li, ia, pr.x, pr.y, plan.tol); });
    rep.inequalities.push_back(li.take());
    rep.inequalities.push_back(ia.take());
    return rep;
}

// ---- J_p monotone in p.

namespace {

void check_p_grid(const std::vector<double>& grid) {
    if (grid.size() < 2) throw precondition_error("alzer_monotone: need at least 2 grid points");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (!(grid[i] < grid[i + 1]))
            throw precondition_error("alzer_monotone: p grid must be strictly increasing (got " +
                                     format17(grid[i]) + " then " + format17(grid[i + 1]) + ")");
    }
    if (!std::isfinite(grid.front()) || !std::isfinite(grid.back()))
        throw precondition_error("alzer_monotone: p grid must be finite");
}

// Witnesses carry (p1, p2) in their x/y slots.
void add_alzer_mono(RowAccum& row, double x, double y, const std::vector<double>& grid,
                    const Tolerances& tol) {
    double prev = means::alzer(grid[0], x, y);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double cur = means::alzer(grid[i], x, y);
        row.add(grid[i - 1], grid[i], prev, cur, (cur - prev) / nscale(prev, cur), 0.0, tol);
        prev = cur;
    }
}

}  // namespace

CheckReport alzer_monotone(const means::PositivePair& pair, const std::vector<double>& p_grid,
                           const Tolerances& tol) {
    check_p_grid(p_grid);
    CheckReport rep;
    rep.name = "alzer-monotone";
    rep.tolerances = tol;
    RowAccum row(kAlzerMonoRow, {});
    add_alzer_mono(row, pair.x(), pair.y(), p_grid, tol);
    rep.inequalities.push_back(row.take());
    return rep;
}

CheckReport alzer_monotone_suite(const std::vector<double>& p_grid, const SamplePlan& plan_in) {
    check_p_grid(p_grid);
    const SamplePlan plan = resolve_plan(plan_in, kAlzerMonoWindow);
    validate(plan.interval);
    CheckReport rep;
    rep.name = "alzer-monotone";
    rep.seed = plan.interval.seed;
    rep.tolerances = plan.tol;
    RowAccum row(kAlzerMonoRow, {});
    run_pairs(rep, sample_pairs(plan.interval, plan.structured),
              [&](const Pair& pr) { add_alzer_mono(row, pr.x, pr.y, p_grid, plan.tol); });
    rep.inequalities.push_back(row.take());
    return rep;
}

// ---- LL/AL convexity through the logarithmic mean.

namespace {

struct LlAlSetup {
    std::vector<Precondition> pcs;
    bool reversed = false;  // log-concave: both inequalities flip
    std::string dir_name;
};

LlAlSetup ll_al_setup(const FunctionSpec& f, const IntervalSpec& civ, double tol) {
    LlAlSetup s;
    s.pcs.push_back(monotone_precond(kIncr, fn_of(f), civ, tol, true, false));
    const Verdict lv = convexity::log_convexity_check(f, civ, tol);
    s.reversed = lv.outcome == Outcome::ConcaveHolds;
    s.dir_name = s.reversed ? kLogConcave : kLogConvex;
    Satisfied sat = Satisfied::Yes;
    if (lv.outcome == Outcome::Inconclusive) sat = Satisfied::Inconclusive;
    if (lv.outcome == Outcome::NeitherHolds) sat = Satisfied::No;
    s.pcs.push_back({s.dir_name, sat, lv});
    return s;
}

void add_ll_al_rows(RowAccum& ll, RowAccum& al, const FunctionSpec& f, bool reversed, double x,
                    double y, const Tolerances& tol) {
    const double fx = f.eval(x), fy = f.eval(y);
    const double lff = means::logarithmic(fx, fy);
    const double fl = f.eval(means::logarithmic(x, y));
    const double fa = f.eval(means::arithmetic(x, y));
    const double mll = (reversed ? fl - lff : lff - fl) / nscale(fl, lff);
    const double mal = (reversed ? fa - lff : lff - fa) / nscale(fa, lff);
    ll.add(x, y, fl, lff, mll, 0.0, tol);
    al.add(x, y, fa, lff, mal, 0.0, tol);
}

}  // namespace

CheckReport ll_al_check(const FunctionSpec& f, const means::PositivePair& pair,
                        const Tolerances& tol) {
    const IntervalSpec iv = span_iv(pair, "ll_al_check");
    CheckReport rep;
    rep.name = "ll-al f=" + f.label();
    rep.tolerances = tol;
    LlAlSetup s = ll_al_setup(f, iv, tol.equality);
    rep.preconditions = s.pcs;
    RowAccum ll(s.reversed ? kLlRowRev : kLlRowFwd, {kIncr, s.dir_name});
    RowAccum al(s.reversed ? kAlRowRev : kAlRowFwd, {kIncr, s.dir_name});
    add_ll_al_rows(ll, al, f, s.reversed, pair.x(), pair.y(), tol);
    rep.inequalities.push_back(ll.take());
    rep.inequalities.push_back(al.take());
    return rep;
}

CheckReport ll_al_suite(const FunctionSpec& f, const SamplePlan& plan_in) {
    const SamplePlan plan = resolve_plan(plan_in, kLlAlWindow);
    validate(plan.interval);
    CheckReport rep;
    rep.name = "ll-al f=" + f.label();
    rep.seed = plan.interval.seed;
    rep.tolerances = plan.tol;
    LlAlSetup s = ll_al_setup(f, classify_iv(plan.interval), plan.tol.equality);
    rep.preconditions = s.pcs;
    RowAccum ll(s.reversed ? kLlRowRev : kLlRowFwd, {kIncr, s.dir_name});
    RowAccum al(s.reversed ? kAlRowRev : kAlRowFwd, {kIncr, s.dir_name});
    run_pairs(rep, sample_pairs(plan.interval, plan.structured), [&](const Pair& pr) {
        add_ll_al_rows(ll, al, f, s.reversed, pr.x, pr.y, plan.tol);
    });
    rep.inequalities.push_back(ll.take());
    rep.inequalities.push_back(al.take());
    return rep;
}

// ---- Chebyshev integral inequality.

namespace {

// Max |h| over a small uniform scan, ignoring evaluation failures.
double grid_scale(const std::function<double(double)>& h, double a, double b) {
    double m = 0.0;
    for (int i = 0; i <= 32; ++i) {
        const double t = a + (b - a) * (static_cast<double>(i) / 32.0);
        try {
            const double v = h(t);
            if (std::isfinite(v)) m = std::max(m, std::fabs(v));
        } catch (const std::exception&) {
        }
    }
    return m;
}

struct ChebInstance {
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // oriented: >= 0 when the claimed direction holds
    double quad_err = 0.0;
};

ChebInstance cheb_instance(const std::function<double(double)>& f,
                           const std::function<double(double)>& g,
                           const std::function<double(double)>& w, double a, double b,
                           bool opposite, const Tolerances& tol) {
    const auto iw = quadrature::integrate(w, a, b, tol.quad_rel, tol.quad_abs);
    const auto iwf = quadrature::integrate([&](double t) { return w(t) * f(t); }, a, b,
                                           tol.quad_rel, tol.quad_abs);
    const auto iwg = quadrature::integrate([&](double t) { return w(t) * g(t); }, a, b,
                                           tol.quad_rel, tol.quad_abs);
    const auto iwfg = quadrature::integrate([&](double t) { return w(t) * f(t) * g(t); }, a, b,
                                            tol.quad_rel, tol.quad_abs);
    ChebInstance r;
    r.lhs = iwf.value * iwg.value;
    r.rhs = iw.value * iwfg.value;
    const double denom = iw.value * iw.value * (1.0 + grid_scale(f, a, b)) *
                         (1.0 + grid_scale(g, a, b));
    r.margin = (opposite ? r.lhs - r.rhs : r.rhs - r.lhs) / denom;
    r.quad_err = (iwf.error_estimate * std::fabs(iwg.value) +
                  iwg.error_estimate * std::fabs(iwf.value) +
                  iw.error_estimate * std::fabs(iwfg.value) +
                  iwfg.error_estimate * std::fabs(iw.value)) /
                 denom;
    return r;
}

int mono_direction(Outcome o) {
    switch (o) {
        case Outcome::ConvexHolds:
            return 1;
        case Outcome::ConcaveHolds:
            return -1;
        case Outcome::BothHold:
            return 0;  // constant: co-monotone with anything
        default:
            return 2;  // not monotone / unknown
    }
}

}  // namespace

CheckReport chebyshev_check(const std::function<double(double)>& f,
                            const std::function<double(double)>& g,
                            const std::function<double(double)>& w, double a, double b,
                            const Tolerances& tol) {
    if (!(std::isfinite(a) && std::isfinite(b) && 0.0 < a && a < b))
        throw precondition_error("chebyshev_check needs 0 < a < b, got [" + format17(a) + ", " +
                                 format17(b) + "]");
    const IntervalSpec giv{a, b, kSpanGrid, Sampling::Uniform, 0};
    for (double t : monotone_grid(giv)) {
        const double wv = w(t);
        if (!std::isfinite(wv) || !(wv > 0.0))
            throw precondition_error("chebyshev weight must be positive: w(" + format17(t) +
                                     ") = " + format17(wv));
    }
    CheckReport rep;
    rep.name = "chebyshev";
    rep.tolerances = tol;
    Precondition pf;
    pf.name = kFMono;
    pf.verdict = convexity::monotone_verdict(f, giv, tol.equality);
    pf.satisfied = pf.verdict.outcome == Outcome::Inconclusive ? Satisfied::Inconclusive
                   : pf.verdict.outcome == Outcome::NeitherHolds ? Satisfied::No
                                                                 : Satisfied::Yes;
    Precondition pg;
    pg.name = kGMono;
    pg.verdict = convexity::monotone_verdict(g, giv, tol.equality);
    pg.satisfied = pg.verdict.outcome == Outcome::Inconclusive ? Satisfied::Inconclusive
                   : pg.verdict.outcome == Outcome::NeitherHolds ? Satisfied::No
                                                                 : Satisfied::Yes;
    const int df = mono_direction(pf.verdict.outcome);
    const int dg = mono_direction(pg.verdict.outcome);
    const bool opposite = (df == 1 && dg == -1) || (df == -1 && dg == 1);
    rep.preconditions = {pf, pg};
    RowAccum row(opposite ? kChebRowOpp : kChebRowCo, {kFMono, kGMono});
    const ChebInstance inst = cheb_instance(f, g, w, a, b, opposite, tol);
    row.add(a, b, inst.lhs, inst.rhs, inst.margin, inst.quad_err, tol);
    rep.inequalities.push_back(row.take());
    return rep;
}

// ---- Randomized polynomial instances for the integral lemmas.

namespace {

struct Poly {
    std::array<double, 4> c{};  // c0 + c1 t + c2 t^2 + c3 t^3

    double operator()(double t) const { return ((c[3] * t + c[2]) * t + c[1]) * t + c[0]; }
    double deriv(double t) const { return (3.0 * c[3] * t + 2.0 * c[2]) * t + c[1]; }
};

double u01(std::uint64_t seed, std::uint64_t counter) { return rng::uniform01(seed, counter); }

// Nonnegative coefficients with a strictly positive linear part: strictly
// increasing on t >= 0.
Poly increasing_poly(std::uint64_t seed, std::uint64_t base) {
    Poly p;
    p.c = {2.0 * u01(seed, base), 0.1 + 2.0 * u01(seed, base + 1), u01(seed, base + 2),
           u01(seed, base + 3)};
    return p;
}

Poly weight_poly(std::uint64_t seed, std::uint64_t base) {
    Poly p;
    p.c = {0.1 + 2.0 * u01(seed, base), 2.0 * u01(seed, base + 1), 0.0, 0.0};
    return p;
}

std::function<double(double)> reflected(Poly p, double a, double b) {
    const double s = a + b;
    return [p, s](double t) { return p(s - t); };
}

}  // namespace

CheckReport chebyshev_suite(const SamplePlan& plan_in) {
    const SamplePlan plan = resolve_plan(plan_in, kChebyshevWindow);
    validate(plan.interval);
    CheckReport rep;
    rep.name = "chebyshev";
    rep.seed = plan.interval.seed;
    rep.tolerances = plan.tol;
    RowAccum co(kChebRowCo, {});
    RowAccum opp(kChebRowOpp, {});

    const auto ident = [](double t) { return t; };
    const auto one = [](double) { return 1.0; };
    const ChebInstance fixture = cheb_instance(ident, ident, one, 0.0, 1.0, false, plan.tol);
    co.add(0.0, 1.0, fixture.lhs, fixture.rhs, fixture.margin, fixture.quad_err, plan.tol);

    const std::uint64_t seed = plan.interval.seed;
    long long errs = 0;
    for (int i = 0; i < plan.interval.samples; ++i) {
        const std::uint64_t base = 16ull * static_cast<std::uint64_t>(i);
        const double a = 0.5 + 2.0 * u01(seed, base);
        const double b = a + 0.5 + 2.5 * u01(seed, base + 1);
        const Poly pf = increasing_poly(seed, base + 2);
        const Poly pg = increasing_poly(seed, base + 6);
        const Poly pw = weight_poly(seed, base + 10);
        const auto w = [pw](double t) { return pw(t); };
        try {
            if (i % 2 == 0) {
                const auto inst = cheb_instance([pf](double t) { return pf(t); },
                                                [pg](double t) { return pg(t); }, w, a, b, false,
                                                plan.tol);
                co.add(a, b, inst.lhs, inst.rhs, inst.margin, inst.quad_err, plan.tol);
            } else {
                // Both reflected: still co-monotone (both decreasing).
                const auto inst = cheb_instance(reflected(pf, a, b), reflected(pg, a, b), w, a, b,
                                                false, plan.tol);
                co.add(a, b, inst.lhs, inst.rhs, inst.margin, inst.quad_err, plan.tol);
            }
            const auto inst = cheb_instance([pf](double t) { return pf(t); },
                                            reflected(pg, a, b), w, a, b, true, plan.tol);
            opp.add(a, b, inst.lhs, inst.rhs, inst.margin, inst.quad_err, plan.tol);
        } catch (const std::exception& e) {
            if (errs < 3) rep.errors.push_back(e.what());
            ++errs;
        }
    }
    if (errs > 3) rep.errors.push_back(std::to_string(errs) + " instances failed in total");
    rep.inequalities.push_back(co.take());
    rep.inequalities.push_back(opp.take());
    return rep;
}

// ---- Jensen's integral inequality.

namespace {

struct JensenEval {
    double lhs = 0.0;       // f(mean of phi)
    double rhs = 0.0;       // mean of f(phi)
    double mean_phi = 0.0;
    double err_phi = 0.0;   // quadrature error of mean_phi
    double err_fphi = 0.0;  // quadrature error of the rhs
};

template <typename F, typename Phi>
JensenEval jensen_eval(F&& f, Phi&& phi, double a, double b, const Tolerances& tol) {
    JensenEval je;
    const auto qphi = quadrature::integrate(phi, a, b, tol.quad_rel, tol.quad_abs);
    je.mean_phi = qphi.value / (b - a);
    je.err_phi = qphi.error_estimate / (b - a);
    const auto qf = quadrature::integrate([&](double t) { return f(phi(t)); }, a, b, tol.quad_rel,
                                          tol.quad_abs);
    je.rhs = qf.value / (b - a);
    je.err_fphi = qf.error_estimate / (b - a);
    je.lhs = f(je.mean_phi);
    return je;
}

}  // namespace

CheckReport jensen_check(const FunctionSpec& f, const std::function<double(double)>& phi,
                         double a, double b, const Tolerances& tol) {
    if (!(std::isfinite(a) && std::isfinite(b) && a < b))
        throw precondition_error("jensen_check needs a < b, got [" + format17(a) + ", " +
                                 format17(b) + "]");
    double plo = std::numeric_limits<double>::infinity();
    double phi_hi = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kSpanGrid; ++i) {
        const double t = a + (b - a) * (static_cast<double>(i) / (kSpanGrid - 1));
        const double v = phi(t);
        if (!std::isfinite(v))
            throw precondition_error("jensen_check: phi(" + format17(t) + ") is not finite");
        plo = std::min(plo, v);
        phi_hi = std::max(phi_hi, v);
    }

    CheckReport rep;
    rep.name = "jensen f=" + f.label();
    rep.tolerances = tol;

    const double width = phi_hi - plo;
    Precondition pc;
    pc.name = kJensenPre;
    Outcome dir;
    if (width == 0.0) {
        // Constant phi: equality holds for any f; nothing to classify.
        pc.satisfied = Satisfied::Yes;
        pc.verdict.outcome = Outcome::BothHold;
        pc.verdict.min_margin = 0.0;
        dir = Outcome::BothHold;
    } else {
        const double ilo = plo + width * 1e-6;
        const double ihi = phi_hi - width * 1e-6;
        if (!(ilo > 0.0))
            throw precondition_error("jensen_check: range of phi must stay positive, got [" +
                                     format17(plo) + ", " + format17(phi_hi) + "]");
        const IntervalSpec riv{ilo, ihi, kSpanGrid, Sampling::Uniform, 0};
        pc.verdict = convexity::criterion_check(f, {1.0, 1.0}, riv, tol.equality);
        dir = pc.verdict.outcome;
        pc.satisfied = dir == Outcome::Inconclusive   ? Satisfied::Inconclusive
                       : dir == Outcome::NeitherHolds ? Satisfied::No
                                                      : Satisfied::Yes;
    }
    rep.preconditions = {pc};

    const JensenEval je = jensen_eval([&f](double v) { return f.eval(v); }, phi, a, b, tol);
    const double n = nscale(je.lhs, je.rhs);
    const double err = (std::fabs(f.derivative(je.mean_phi)) * je.err_phi + je.err_fphi) / n;

    const char* desc = kJensenConvexRow;
    double margin = (je.rhs - je.lhs) / n;
    if (dir == Outcome::ConcaveHolds) {
        desc = kJensenConcaveRow;
        margin = (je.lhs - je.rhs) / n;
    } else if (dir == Outcome::BothHold) {
        desc = kJensenEqRow;
        margin = -std::fabs(je.rhs - je.lhs) / n;
    }
    RowAccum row(desc, {kJensenPre});
    row.add(a, b, je.lhs, je.rhs, margin, err, tol);
    rep.inequalities.push_back(row.take());
    return rep;
}

CheckReport jensen_suite(const SamplePlan& plan_in) {
    const SamplePlan plan = resolve_plan(plan_in, kJensenWindow);
    validate(plan.interval);
    CheckReport rep;
    rep.name = "jensen";
    rep.seed = plan.interval.seed;
    rep.tolerances = plan.tol;
    RowAccum cx(kJensenConvexRow, {});
    RowAccum cc(kJensenConcaveRow, {});

    const auto ident = [](double t) { return t; };
    {
        // f = t^2 on [0, 1]: the classic strict-convexity instance.
        const auto je = jensen_eval([](double v) { return v * v; }, ident, 0.0, 1.0, plan.tol);
        const double n = nscale(je.lhs, je.rhs);
        const double err = (2.0 * std::fabs(je.mean_phi) * je.err_phi + je.err_fphi) / n;
        cx.add(0.0, 1.0, je.lhs, je.rhs, (je.rhs - je.lhs) / n, err, plan.tol);
    }
    {
        // f = sqrt on [0, 1]: concave direction.
        const auto je = jensen_eval([](double v) { return std::sqrt(v); }, ident, 0.0, 1.0,
                                    plan.tol);
        const double n = nscale(je.lhs, je.rhs);
        const double err =
            (0.5 / std::sqrt(je.mean_phi) * je.err_phi + je.err_fphi) / n;
        cc.add(0.0, 1.0, je.lhs, je.rhs, (je.lhs - je.rhs) / n, err, plan.tol);
    }

    const std::uint64_t seed = plan.interval.seed;
    long long errs = 0;
    for (int i = 0; i < plan.interval.samples; ++i) {
        const std::uint64_t base = 16ull * static_cast<std::uint64_t>(i);
        const double a = 0.2 + 2.0 * u01(seed, base);
        const double b = a + 0.3 + 2.0 * u01(seed, base + 1);
        Poly phi;
        phi.c = {2.0 * u01(seed, base + 2) - 1.0, 2.0 * u01(seed, base + 3) - 1.0,
                 2.0 * u01(seed, base + 4) - 1.0, u01(seed, base + 5) - 0.5};
        Poly pf;  // curvature coefficients nonnegative: convex on t >= 0...
        pf.c = {2.0 * u01(seed, base + 6) - 1.0, 2.0 * u01(seed, base + 7) - 1.0,
                0.05 + u01(seed, base + 8), 0.0};
        try {
            // ... but phi may go negative, so keep f quadratic (convex
            // everywhere) rather than cubic.
            const auto je = jensen_eval([pf](double v) { return pf(v); },
                                        [phi](double t) { return phi(t); }, a, b, plan.tol);
            const double n = nscale(je.lhs, je.rhs);
            const double err =
                (std::fabs(pf.deriv(je.mean_phi)) * je.err_phi + je.err_fphi) / n;
            cx.add(a, b, je.lhs, je.rhs, (je.rhs - je.lhs) / n, err, plan.tol);

            Poly pg = pf;  // mirrored curvature: concave everywhere
            pg.c[2] = -pg.c[2];
            const auto jc = jensen_eval([pg](double v) { return pg(v); },
                                        [phi](double t) { return phi(t); }, a, b, plan.tol);
            const double nc = nscale(jc.lhs, jc.rhs);
            const double errc =
                (std::fabs(pg.deriv(jc.mean_phi)) * jc.err_phi + jc.err_fphi) / nc;
            cc.add(a, b, jc.lhs, jc.rhs, (jc.lhs - jc.rhs) / nc, errc, plan.tol);
        } catch (const std::exception& e) {
            if (errs < 3) rep.errors.push_back(e.what());
            ++errs;
        }
    }
    if (errs > 3) rep.errors.push_back(std::to_string(errs) + " instances failed in total");
    rep.inequalities.push_back(cx.take());
    rep.inequalities.push_back(cc.take());
    return rep;
}

Satisfied hypotheses_met(const CheckReport& report, const InequalityStat& row) {
    Satisfied agg = Satisfied::Yes;
    for (const std::string& dep : row.depends_on) {
        const Precondition* found = nullptr;
        for (const Precondition& pc : report.preconditions) {
            if (pc.name == dep) {
                found = &pc;
                break;
            }
        }
        if (found == nullptr || found->satisfied == Satisfied::Inconclusive) {
            agg = Satisfied::Inconclusive;
        } else if (found->satisfied == Satisfied::No) {
            return Satisfied::No;
        }
    }
    return agg;
}

// ---- Catalog.

std::vector<CatalogEntry> builtin_catalog() {
    std::vector<CatalogEntry> cat;
    auto add = [&cat](std::string id, std::function<CheckReport(const SamplePlan&)> run) {
        cat.push_back({std::move(id), std::move(run)});
    };

    const FunctionSpec sq = FunctionSpec::power(2.0);
    const FunctionSpec ex = FunctionSpec::exponential();
    const FunctionSpec cube = FunctionSpec::parsed("x^3+x");
    const FunctionSpec xe = FunctionSpec::xexp();
    const FunctionSpec expsq = FunctionSpec::parsed("exp(x^2)");
    const FunctionSpec root = FunctionSpec::power(0.5);
    const FunctionSpec inv = FunctionSpec::power(-1.0);

    add("mean-chain", [](const SamplePlan& p) { return mean_chain_suite(p); });
    add("alzer-monotone",
        [](const SamplePlan& p) { return alzer_monotone_suite(default_p_grid(), p); });

    for (const FunctionSpec& f : {sq, ex, cube, xe}) {
        add("ebanks f=" + f.label(), [f](const SamplePlan& p) { return ebanks_suite(f, p); });
    }
    for (const FunctionSpec& f : {ex, expsq}) {
        add("identric profile=lower f=" + f.label(),
            [f](const SamplePlan& p) { return identric_suite(f, Profile::Lower, p); });
    }
    // Upper profile: exp is the stress entry (convex, so the concavity
    // hypotheses fail and the inequality is falsified); sqrt satisfies them.
    for (const FunctionSpec& f : {ex, root}) {
        add("identric profile=upper f=" + f.label(),
            [f](const SamplePlan& p) { return identric_suite(f, Profile::Upper, p); });
    }
    const std::pair<double, FunctionSpec> alzer_one[] = {
        {1.0, sq}, {0.0, ex}, {0.5, ex}, {-2.0, sq}};
    for (const auto& [p, f] : alzer_one) {
        add(alzer_name(f, p, Part::One),
            [f, p](const SamplePlan& pl) { return alzer_suite(f, p, Part::One, pl); });
    }
    add(alzer_name(inv, 2.0, Part::Two),
        [inv](const SamplePlan& pl) { return alzer_suite(inv, 2.0, Part::Two, pl); });
    add("chebyshev", [](const SamplePlan& p) { return chebyshev_suite(p); });
    add("jensen", [](const SamplePlan& p) { return jensen_suite(p); });
    for (const FunctionSpec& f : {ex, expsq}) {
        add("ll-al f=" + f.label(),
            [f](const SamplePlan& p) { return ll_al_suite(f, p); });
    }
    return cat;
}

std::vector<CheckReport> audit_all(const std::vector<CatalogEntry>& catalog,
                                   const SamplePlan& plan) {
    std::vector<CheckReport> reports;
    reports.reserve(catalog.size());
    for (const auto& entry : catalog) {
        try {
            reports.push_back(entry.run(plan));
        } catch (const std::exception& e) {
            CheckReport rep;
            rep.name = entry.id;
            rep.errors.push_back(e.what());
            reports.push_back(std::move(rep));
        }
    }
    return reports;
}

}  // namespace mnconvex::inequalities
