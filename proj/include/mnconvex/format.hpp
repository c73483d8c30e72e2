#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace mnconvex {

// Shortest-ish round-trippable decimal form used everywhere a double is
// printed (CLI tables, CSV, JSON via nlohmann's own %.17g).
inline std::string format17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace mnconvex
