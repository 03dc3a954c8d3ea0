#pragma once

#include <optional>

#include "entrokit/density.hpp"

namespace entrokit {

// Gaussian with mean m and standard deviation sigma > 0.
DensityModel make_gaussian(double m, double sigma);

// Exponential with mean mu > 0 (density mu^-1 * exp(-x/mu) on [0, inf)).
DensityModel make_exponential(double mu);

// Uniform on [a, b], a < b.
DensityModel make_uniform(double a, double b);

// Heavy-tailed density log(2)/(x*log^2 x) on [2, inf); its cdf is
// 1 - log(2)/log(x).  Differential entropy diverges to +infinity.
DensityModel make_heavy_tail_log();

// Staircase comb truncated at K >= 2 teeth: constant height k/L_K on
// [k, k + 1/(k^2 log^2 k)] for k = 2..K, renormalized over the truncation
// (L_K is the partial sum of 1/(k log^2 k)).  The differential entropy of the
// truncated model is finite but tends to -infinity as K grows.
DensityModel make_staircase_comb(int K);

// Rational decay 1/(pi*(1+x^2)) on the whole line.
DensityModel make_rational_decay();

// Quartic-exponential C2*exp(-x^4) with C2 = 1/(2*Gamma(5/4)); the cdf is
// served from an eagerly built quadrature cache (1e-12 tolerance).  This
// model violates the local-comparability condition used by the compatible
// discretization theory and is flagged accordingly.
DensityModel make_quartic_exp();

// Discrete distribution p_k = 1/(L*k*log^2 k) for k >= 2, with
// L = sum_{k>=2} 1/(k log^2 k) = 2.10974...; its entropy series diverges, and
// tail mass decays like 1/log K, so no practical truncation index exists.
DiscreteDistribution make_log_square_discrete();

struct ComparabilityWitness {
    double x = 0.0;
    double y = 0.0;
    double p_x = 0.0;
    double p_y = 0.0;
    // log p(x) - log p(y) - log K; positive means the bound failed at (x, y).
    double log_excess = 0.0;
};

struct ComparabilityResult {
    bool holds = true;
    std::optional<ComparabilityWitness> witness;  // set when holds == false
};

// Checks p(x) <= K*p(y) over a deterministic grid of pairs with
// |x|, |y| in (x0, D) and |x - y| <= 1/D.  Grid spacing is 1/samples on each
// side of the support; the reported witness is the worst violating pair.
ComparabilityResult check_local_comparability(const DensityModel& d, double D, double x0,
                                              double K, int samples);

}  // namespace entrokit
