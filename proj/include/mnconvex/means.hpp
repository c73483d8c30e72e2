#pragma once

#include <string>
#include <string_view>

namespace mnconvex::means {

// |p| (resp. |p+1|) below this substitutes the continuous limit of the Alzer
// family; |t| below it substitutes the geometric limit of the power mean.
// The expm1-based kernels stay uniformly accurate arbitrarily close to the
// singular parameters (p+1 is Sterbenz-exact on [-2,-0.5]; the leading p
// cancels to ~1 ulp), so the window only needs to catch parameters that are
// singular in exact arithmetic, and narrow keeps the substitution error
// (~|p| * d^2/12) far below every advertised tolerance.
inline constexpr double kSingularParamWindow = 1e-11;

// |log(x/y)| below this switches L and I to series about the geometric
// midpoint; above it the closed forms keep full relative accuracy.
inline constexpr double kDiagonalGuard = 1e-8;

// Pair of finite positive reals; the constructor is the single validation
// point for mean arguments.
class PositivePair {
public:
    PositivePair(double x, double y);
    double x() const noexcept { return x_; }
    double y() const noexcept { return y_; }

private:
    double x_;
    double y_;
};

enum class Family {
    Arithmetic,
    Geometric,
    Harmonic,
    Logarithmic,
    Identric,
    Ebanks,
    Alzer,
    Power,
};

// A mean selector: family plus parameter (meaningful for Alzer's J_p and the
// power mean M_t only). Text form: A, G, H, L, I, E, J:<p>, M:<t>.
struct MeanKind {
    Family family;
    double param = 0.0;

    static MeanKind arithmetic() { return {Family::Arithmetic}; }
    static MeanKind geometric() { return {Family::Geometric}; }
    static MeanKind harmonic() { return {Family::Harmonic}; }
    static MeanKind logarithmic() { return {Family::Logarithmic}; }
    static MeanKind identric() { return {Family::Identric}; }
    static MeanKind ebanks() { return {Family::Ebanks}; }
    static MeanKind alzer(double p) { return {Family::Alzer, p}; }
    static MeanKind power(double t) { return {Family::Power, t}; }

    // Parses the text form; throws parse_error on anything else.
    static MeanKind parse(std::string_view token);
    std::string str() const;
};

double arithmetic(double x, double y);
double geometric(double x, double y);
double harmonic(double x, double y);
double logarithmic(double x, double y);
double identric(double x, double y);
double ebanks(double x, double y);

// Alzer's mean J_p. Continuously extended at the removable parameters:
// p in the singular window around 0 evaluates the logarithmic mean, around -1
// evaluates G^2/L. J_1 = A, J_{-2} = H, J_{-1/2} = G hold to rounding.
double alzer(double p, double x, double y);

// Power mean M_t, with M_0 = G inside the singular window.
double power(double t, double x, double y);

double evaluate(MeanKind kind, const PositivePair& pair);

namespace detail {

// Series kernels behind the diagonal guard, exposed for direct testing at
// moderate d where the higher-order terms are visible. m is the geometric
// midpoint sqrt(x*y), d = log(x/y).
double logarithmic_series(double m, double d);
double identric_series(double m, double d);

// log(a/b), falling back to log(a) - log(b) when a/b leaves the normal range.
double log_ratio(double a, double b);

// log|expm1(t)| for t != 0, accurate across all magnitudes.
double log_expm1_abs(double t);

}  // namespace detail

}  // namespace mnconvex::means
