#pragma once

#include <span>
#include <string>
#include <vector>

#include "entrokit/density.hpp"

namespace entrokit {

// Partition of an interval into equal cells, in one of three parameterizations:
//   window(N, h): cells of width ~h covering [-N, N]; h is snapped to
//                 2N/round(2N/h) so the cell count is integral.
//   aligned(a, b, n): n equal cells on [a, b].
//   rated(N, C): C cells on [-N, N] (width 2N/C); C is typically 2^j so the
//                cell count grows at a chosen exponential rate.
struct PartitionSpec {
    enum class Mode { window, aligned, rated };
    Mode mode = Mode::window;
    double N = 0.0;       // window, rated
    double h = 0.0;       // window (requested width, pre-snap)
    double a = 0.0;       // aligned
    double b = 0.0;       // aligned
    long long n = 0;      // aligned cell count
    long long C = 0;      // rated cell count

    static PartitionSpec window(double N, double h);
    static PartitionSpec aligned(double a, double b, long long n);
    static PartitionSpec rated(double N, long long C);

    long long cells() const;
    // Natural abscissa for convergence series: N, n or C.
    double series_param() const;
    std::string describe() const;
};

// Nodes, cdf increments and cell widths of one partition, plus the cdf mass
// left of the first node and right of the last.  Increments are exact cdf
// differences, never pdf*width products.
struct DiscretizedDistribution {
    std::vector<double> nodes;       // cells() + 1 ascending nodes
    std::vector<double> increments;  // cells() values, each in [0, 1]
    std::vector<double> widths;      // cells() positive widths
    double left_tail = 0.0;
    double right_tail = 0.0;

    bool uniform_width(double rel_tol = 1e-9) const;
    double common_width() const;  // requires uniform_width()
};

DiscretizedDistribution discretize(const DensityModel& d, const PartitionSpec& p);

// Raw discretized Shannon entropy -sum dF log dF (0 log 0 = 0); with
// include_tails the two nonnegative tail terms -F0 log F0 and
// -(1-F_end) log(1-F_end) are added.  Diverges like log(cell count) under
// refinement for any absolutely continuous model.
double raw_shannon(const DiscretizedDistribution& dd, bool include_tails);

// Width-compensated forms over uniform-width partitions (precondition):
//   signed_: sum dF log(dx/dF)        -> -∫ p log p
//   abs:     sum dF |log(dF/dx)|      -> ∫ p |log p|
//   pos:     sum dF (log(dx/dF))_+    -> ∫ p (-log p)_+
//   log1p:   sum dF log(dx/dF + 1)    -> ∫ p log(1/p + 1)
// `paper_literal` swaps the log1p form for the source text's literal display
// sum dF (log(dF/dx) + 1), kept for side-by-side comparison; its actual limit
// is 1 + ∫ p log p.
enum class CompatibleForm { signed_, abs, pos, log1p };
double compatible_shannon(const DiscretizedDistribution& dd, CompatibleForm form,
                          bool paper_literal = false);

struct RenyiDiscretization {
    double entropy_value = 0.0;
    double inner_sum = 0.0;
};

// Raw discretized Renyi entropy log(sum dF^alpha)/(1-alpha); include_tails adds
// the tail masses' alpha-powers to the inner sum.  Under refinement the inner
// sum escapes to +inf (alpha < 1) or 0 (alpha > 1) and the entropy value grows
// without bound in both regimes.  An empty inner sum yields entropy 0.
RenyiDiscretization raw_renyi(const DiscretizedDistribution& dd, double alpha,
                              bool include_tails);

// Width-compensated Renyi form sum dF^alpha dx^(1-alpha) (uniform widths
// required); the inner sum converges to ∫ p^alpha.
RenyiDiscretization compatible_renyi(const DiscretizedDistribution& dd, double alpha);

// Functional selector for schedule evaluation.
struct DiscretizationFunctional {
    enum class Kind { raw_shannon, raw_renyi, compatible_shannon, compatible_renyi };
    Kind kind = Kind::raw_shannon;
    double alpha = 0.0;                            // renyi kinds
    CompatibleForm form = CompatibleForm::signed_; // compatible_shannon
    bool include_tails = false;                    // raw kinds
    bool paper_literal = false;                    // compatible_shannon log1p
    std::string label() const;
};

struct ConvergencePoint {
    double param = 0.0;
    double value = 0.0;
    bool ok = true;
    std::string error;  // set when ok == false; the series continues
};

struct ConvergenceSeries {
    std::vector<ConvergencePoint> points;  // strictly increasing in param
    std::string functional_label;
};

ConvergenceSeries divergence_series(const DensityModel& d, const DiscretizationFunctional& f,
                                    std::span<const PartitionSpec> schedule);

struct LogRateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rmse = 0.0;
};

// Least-squares fit of value against log(param) over the series' ok points.
// Requires at least 3 usable points with positive, non-degenerate abscissae.
LogRateFit fit_log_rate(const ConvergenceSeries& series);

}  // namespace entrokit
