#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "mnconvex/errors.hpp"
#include "mnconvex/format.hpp"
#include "mnconvex/rng.hpp"

namespace mnconvex {

enum class Sampling { LogUniform, Uniform };

// Where and how to sample a positive interval. `seed` keys the counter RNG,
// so a spec value fully determines every draw.
struct IntervalSpec {
    double lo = 1e-2;
    double hi = 1e2;
    int samples = 10000;
    Sampling sampling = Sampling::LogUniform;
    std::uint64_t seed = 0;
};

inline void validate(const IntervalSpec& spec) {
    if (!(std::isfinite(spec.lo) && std::isfinite(spec.hi) && spec.lo > 0.0 &&
          spec.lo < spec.hi)) {
        throw precondition_error("interval must satisfy 0 < lo < hi, got [" +
                                 format17(spec.lo) + ", " + format17(spec.hi) + "]");
    }
    if (spec.samples < 2) {
        throw precondition_error("interval needs at least 2 samples, got " +
                                 std::to_string(spec.samples));
    }
}

inline double sample_point(const IntervalSpec& spec, std::uint64_t counter) {
    double u = rng::uniform01(spec.seed, counter);
    if (spec.sampling == Sampling::LogUniform) {
        return std::exp(std::log(spec.lo) + u * (std::log(spec.hi) - std::log(spec.lo)));
    }
    return spec.lo + u * (spec.hi - spec.lo);
}

// Deterministic sorted grid with exact endpoints, for monotonicity scans.
inline std::vector<double> monotone_grid(const IntervalSpec& spec) {
    validate(spec);
    std::vector<double> grid(static_cast<std::size_t>(spec.samples));
    double n1 = static_cast<double>(spec.samples - 1);
    for (int i = 0; i < spec.samples; ++i) {
        double t = static_cast<double>(i) / n1;
        grid[static_cast<std::size_t>(i)] =
            spec.sampling == Sampling::LogUniform
                ? std::exp((1.0 - t) * std::log(spec.lo) + t * std::log(spec.hi))
                : spec.lo + t * (spec.hi - spec.lo);
    }
    grid.front() = spec.lo;
    grid.back() = spec.hi;
    return grid;
}

struct Pair {
    double x;
    double y;
};

// `samples` random pairs (two draws each), optionally followed by structured
// probes: near-diagonal pairs around the interval midpoint at relative
// separations 1e-2 .. 1e-8, and the near-extremes.
inline std::vector<Pair> sample_pairs(const IntervalSpec& spec, bool structured = true) {
    validate(spec);
    std::vector<Pair> pairs;
    pairs.reserve(static_cast<std::size_t>(spec.samples) + 8);
    for (int i = 0; i < spec.samples; ++i) {
        auto c = static_cast<std::uint64_t>(i);
        pairs.push_back({sample_point(spec, 2 * c), sample_point(spec, 2 * c + 1)});
    }
    if (structured) {
        double m = spec.sampling == Sampling::LogUniform
                       ? std::sqrt(spec.lo) * std::sqrt(spec.hi)
                       : 0.5 * (spec.lo + spec.hi);
        for (int k = 2; k <= 8; ++k) {
            double y = m * (1.0 + std::pow(10.0, -k));
            if (y > spec.hi) y = spec.hi;
            if (y != m) pairs.push_back({m, y});
        }
        pairs.push_back({spec.lo * 1.01, spec.hi * 0.99});
    }
    return pairs;
}

}  // namespace mnconvex
