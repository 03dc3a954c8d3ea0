#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entrokit/support.hpp"

namespace entrokit {

// Descriptive flags attached to built-in models.
inline constexpr const char* kFlagShannonPlusInfinity = "shannon-entropy:+infinity";
inline constexpr const char* kFlagShannonMinusInfinityLimit = "shannon-entropy:-infinity-as-truncation-grows";
inline constexpr const char* kFlagFailsLocalComparability = "fails-local-comparability";

// One constant-height piece of a piecewise-constant density.  Pieces are
// disjoint and listed left to right; anything between pieces has density 0.
struct PiecewiseSegment {
    double lo = 0.0;
    double hi = 0.0;
    double height = 0.0;

    double width() const { return hi - lo; }
    double mass() const { return width() * height; }
};

// An absolutely continuous distribution given by density, log-density and cdf.
// `log_pdf` returns -inf off the support; `pdf` is exp(log_pdf).
// `segments` is nonempty exactly for piecewise-constant models, in which case
// entropy functionals can be evaluated by exact per-segment sums.
struct DensityModel {
    std::function<double(double)> pdf;
    std::function<double(double)> log_pdf;
    std::function<double(double)> cdf;
    SupportSpec support;
    std::optional<double> supremum;
    std::string label;
    std::vector<std::string> flags;
    std::vector<PiecewiseSegment> segments;

    bool has_flag(std::string_view f) const {
        for (const auto& g : flags)
            if (g == f) return true;
        return false;
    }
    bool piecewise_constant() const { return !segments.empty(); }
};

// A discrete distribution on integers k >= k_min.  `truncation_index` is a K
// with tail mass beyond K below the builder's tolerance; it is absent when the
// tail decays too slowly for any practical K (`slowly_converging` is then set).
struct DiscreteDistribution {
    std::function<double(long long)> prob;
    long long k_min = 0;
    std::optional<long long> truncation_index;
    bool slowly_converging = false;
    std::string label;
};

}  // namespace entrokit
