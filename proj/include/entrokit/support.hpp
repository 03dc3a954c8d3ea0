#pragma once

#include <cmath>
#include <limits>

namespace entrokit {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Closed interval on the extended real line; either endpoint may be infinite.
struct SupportSpec {
    double lower = -kInf;
    double upper = kInf;

    static SupportSpec whole_line() { return {-kInf, kInf}; }
    static SupportSpec from(double a) { return {a, kInf}; }
    static SupportSpec interval(double a, double b) { return {a, b}; }

    bool bounded() const { return std::isfinite(lower) && std::isfinite(upper); }
    bool lower_finite() const { return std::isfinite(lower); }
    bool upper_finite() const { return std::isfinite(upper); }
    bool contains(double x) const { return x >= lower && x <= upper; }
    double length() const { return upper - lower; }

    // Intersection with the symmetric window [-w, w]; may be empty (lower > upper).
    SupportSpec clipped(double w) const {
        return {lower > -w ? lower : -w, upper < w ? upper : w};
    }
    bool empty() const { return !(lower <= upper); }
};

}  // namespace entrokit
