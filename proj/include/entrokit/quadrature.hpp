#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "entrokit/support.hpp"

namespace entrokit {

// Declared endpoint singularity of the form (x - endpoint)^(-gamma) with
// gamma in (0, 1); removed internally by the power substitution z = t^(1/(1-gamma)).
struct Singularity {
    enum class Endpoint { lower, upper };
    Endpoint endpoint = Endpoint::lower;
    double gamma = 0.5;
};

// Integrand over an interval of the extended real line.  Infinite endpoints
// are compactified with x = t/(1-t^2); a declared singularity must sit on a
// finite endpoint.
struct IntegrandSpec {
    std::function<double(double)> f;
    SupportSpec interval;
    std::optional<Singularity> singularity;
};

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    long max_evaluations = 1'000'000;
};

struct IntegrationResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
};

// Adaptive Gauss-Kronrod (7,15) integration: the worst panel (by the nested
// rule's error estimate) is bisected first, until the summed error estimate
// meets max(abs_tol, rel_tol*|value|) or the evaluation budget runs out.
// Non-convergence is reported via `converged = false`, never a silent value.
IntegrationResult integrate(const IntegrandSpec& spec, const QuadratureOptions& opts = {});

// Convenience wrapper for a plain finite or semi-infinite interval.
IntegrationResult integrate(const std::function<double(double)>& f, double lo, double hi,
                            const QuadratureOptions& opts = {});

// Integral of `spec.f` restricted to interval ∩ [-w, w] for each window w,
// in the given order.  Windows must be positive and increasing; cumulative
// values are assembled from shell increments so the sweep costs one pass.
std::vector<IntegrationResult> integrate_window_sweep(const IntegrandSpec& spec,
                                                      std::span<const double> windows,
                                                      const QuadratureOptions& opts = {});

}  // namespace entrokit
