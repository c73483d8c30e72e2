#include "mnconvex/means.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "mnconvex/errors.hpp"
#include "mnconvex/format.hpp"

namespace mnconvex::means {

namespace {

void check_positive(double x, double y) {
    if (!(std::isfinite(x) && x > 0.0 && std::isfinite(y) && y > 0.0)) {
        throw precondition_error("mean arguments must be finite and positive, got x=" +
                                 format17(x) + " y=" + format17(y));
    }
}

// Every mean of positive x, y lies in [min, max]; rounding may spill a final
// multiply past the endpoint, so results are clamped back. a <= b.
double clamp_to(double a, double b, double v) {
    return std::min(b, std::max(a, v));
}

struct Canonical {
    double a;  // min
    double b;  // max
};

Canonical canon(double x, double y) {
    return x < y ? Canonical{x, y} : Canonical{y, x};
}

}  // namespace

PositivePair::PositivePair(double x, double y) : x_(x), y_(y) {
    check_positive(x, y);
}

namespace detail {

double log_ratio(double a, double b) {
    double q = a / b;
    if (std::isnormal(q)) return std::log(q);
    return std::log(a) - std::log(b);
}

double log_expm1_abs(double t) {
    if (t > 37.0) return t + std::log1p(-std::exp(-t));  // e^-t below eps of e^t
    if (t > 0.0) return std::log(std::expm1(t));
    return std::log1p(-std::exp(t));  // |e^t - 1| = 1 - e^t
}

double logarithmic_series(double m, double d) {
    // L = m * sinh(u)/u with u = d/2, expanded: 1 + d^2/24 + d^4/1920 + d^6/322560.
    double d2 = d * d;
    return m * (1.0 + d2 * (1.0 / 24.0 + d2 * (1.0 / 1920.0 + d2 * (1.0 / 322560.0))));
}

double identric_series(double m, double d) {
    // ln(I/m) = u*coth(u) - 1 with u = d/2: d^2/12 - d^4/720 + d^6/30240.
    double d2 = d * d;
    return m * std::exp(d2 * (1.0 / 12.0 + d2 * (-1.0 / 720.0 + d2 * (1.0 / 30240.0))));
}

}  // namespace detail

double arithmetic(double x, double y) {
    check_positive(x, y);
    if (x == y) return x;
    auto [a, b] = canon(x, y);
    return clamp_to(a, b, 0.5 * x + 0.5 * y);
}

double geometric(double x, double y) {
    check_positive(x, y);
    if (x == y) return x;
    auto [a, b] = canon(x, y);
    return clamp_to(a, b, std::sqrt(a) * std::sqrt(b));
}

double harmonic(double x, double y) {
    check_positive(x, y);
    if (x == y) return x;
    auto [a, b] = canon(x, y);
    // H = a * 2/(1 + a/b): the ratio stays in [1, 2), so nothing overflows.
    return clamp_to(a, b, a * (2.0 / (1.0 + a / b)));
}

double logarithmic(double x, double y) {
    check_positive(x, y);
    if (x == y) return x;
    auto [a, b] = canon(x, y);
    double d = detail::log_ratio(a, b);  // <= 0
    if (-d < kDiagonalGuard) {
        return clamp_to(a, b, detail::logarithmic_series(std::sqrt(a) * std::sqrt(b), d));
    }
    // L = (a - b)/(ln a - ln b) = b * expm1(d)/d; the ratio lies in (0, 1).
    return clamp_to(a, b, b * (std::expm1(d) / d));
}

double identric(double x, double y) {
    check_positive(x, y);
    if (x == y) return x;
    auto [a, b] = canon(x, y);
    double d = detail::log_ratio(a, b);
    if (-d < kDiagonalGuard) {
        return clamp_to(a, b, detail::identric_series(std::sqrt(a) * std::sqrt(b), d));
    }
    // ln I = ln b - 1 + phi, phi = r*ln(r)/(r - 1) in (0, 1) for r = a/b;
    // exp(phi - 1) in (1/e, 1) keeps the product b-scaled, never overflowing.
    double r = a / b;
    double phi = r * d / (r - 1.0);
    return clamp_to(a, b, b * std::exp(phi - 1.0));
}

double ebanks(double x, double y) {
    check_positive(x, y);
    if (x == y) return x;
    auto [a, b] = canon(x, y);
    // E = (G*A)^(1/2); multiply square roots so G*A cannot overflow first.
    double g = geometric(x, y);
    double m = arithmetic(x, y);
    return clamp_to(a, b, std::sqrt(g) * std::sqrt(m));
}

double alzer(double p, double x, double y) {
    check_positive(x, y);
    if (!std::isfinite(p)) {
        throw precondition_error("Alzer parameter must be finite, got p=" + format17(p));
    }
    if (std::abs(p) < kSingularParamWindow) return logarithmic(x, y);
    if (std::abs(p + 1.0) < kSingularParamWindow) {
        // J_{-1} = G^2/L as a continuous extension; G/L <= 1 so G*(G/L) is safe.
        if (x == y) return x;
        double g = geometric(x, y);
        return g * (g / logarithmic(x, y));
    }
    if (x == y) return x;
    auto [a, b] = canon(x, y);
    double d = detail::log_ratio(a, b);  // <= 0
    double s = (p + 1.0) * d;
    double t = p * d;
    if (std::abs(s) < 700.0 && std::abs(t) < 700.0) {
        // J = b * (p/(p+1)) * expm1(s)/expm1(t). The two right factors are
        // multiplied first: their product is J/b <= 1 even when p/(p+1) is
        // ~1e8 near the singular window.
        double inner = (p / (p + 1.0)) * (std::expm1(s) / std::expm1(t));
        return clamp_to(a, b, b * inner);
    }
    // Log-space fallback for |p*d| large. When both exponents are huge the
    // difference of logs is d + (vanishing corrections): s - t = d exactly.
    double diff;
    if (s > 37.0 && t > 37.0) {
        diff = d + std::log1p(-std::exp(-s)) - std::log1p(-std::exp(-t));
    } else {
        diff = detail::log_expm1_abs(s) - detail::log_expm1_abs(t);
    }
    double ln_j = std::log(std::abs(p)) - std::log(std::abs(p + 1.0)) + std::log(b) + diff;
    return clamp_to(a, b, std::exp(ln_j));
}

double power(double t, double x, double y) {
    check_positive(x, y);
    if (!std::isfinite(t)) {
        throw precondition_error("power-mean parameter must be finite, got t=" + format17(t));
    }
    if (std::abs(t) < kSingularParamWindow) return geometric(x, y);
    if (x == y) return x;
    auto [a, b] = canon(x, y);
    // Anchor at the argument that dominates for this sign of t, so
    // z = t*log(other/anchor) <= 0 and expm1(z) stays in (-1, 0].
    double c = t > 0.0 ? b : a;
    double o = t > 0.0 ? a : b;
    double z = t * detail::log_ratio(o, c);
    double e = std::log1p(0.5 * std::expm1(z)) / t;
    // e >= 0 only for t < 0, bounded by log(b/a)/2; the exp can only overflow
    // for subnormal/near-max argument spreads, where the log form is exact
    // enough.
    double m = e > 690.0 ? std::exp(std::log(c) + e) : c * std::exp(e);
    return clamp_to(a, b, m);
}

double evaluate(MeanKind kind, const PositivePair& pair) {
    double x = pair.x(), y = pair.y();
    switch (kind.family) {
        case Family::Arithmetic: return arithmetic(x, y);
        case Family::Geometric: return geometric(x, y);
        case Family::Harmonic: return harmonic(x, y);
        case Family::Logarithmic: return logarithmic(x, y);
        case Family::Identric: return identric(x, y);
        case Family::Ebanks: return ebanks(x, y);
        case Family::Alzer: return alzer(kind.param, x, y);
        case Family::Power: return power(kind.param, x, y);
    }
    throw precondition_error("unknown mean family");
}

MeanKind MeanKind::parse(std::string_view token) {
    if (token.size() == 1) {
        switch (token[0]) {
            case 'A': return arithmetic();
            case 'G': return geometric();
            case 'H': return harmonic();
            case 'L': return logarithmic();
            case 'I': return identric();
            case 'E': return ebanks();
            default: break;
        }
    }
    if (token.size() >= 2 && (token[0] == 'J' || token[0] == 'M') && token[1] == ':') {
        double value = 0.0;
        const char* first = token.data() + 2;
        const char* last = token.data() + token.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr == first) throw parse_error(2, "number");
        if (ptr != last) {
            throw parse_error(static_cast<std::size_t>(ptr - token.data()), "end of token");
        }
        if (!std::isfinite(value)) throw parse_error(2, "finite number");
        return token[0] == 'J' ? alzer(value) : power(value);
    }
    throw parse_error(0, "mean kind: one of A, G, H, L, I, E, J:<p>, M:<t>");
}

std::string MeanKind::str() const {
    switch (family) {
        case Family::Arithmetic: return "A";
        case Family::Geometric: return "G";
        case Family::Harmonic: return "H";
        case Family::Logarithmic: return "L";
        case Family::Identric: return "I";
        case Family::Ebanks: return "E";
        case Family::Alzer: return "J:" + format17(param);
        case Family::Power: return "M:" + format17(param);
    }
    return "?";
}

}  // namespace mnconvex::means
