#pragma once

#include <string>

#include "entrokit/density.hpp"
#include "entrokit/quadrature.hpp"

namespace entrokit {

enum class EntropyFamily { shannon, renyi };

// Functional forms.  For the Shannon family:
//   classical: -∫ p log p            abs:  ∫ p |log p|
//   pos:       ∫ p (-log p)_+        log1p: ∫ p log(1/p + 1)
//   scaled:    ∫ (p/M) log(M/p) with M = sup p (bounded densities only)
// For the Renyi family with I = ∫ p^alpha:
//   classical: log(I)/(1-alpha)      abs:  |log I| / |1-alpha|
//   pos:       (log I)_+ / |1-alpha| log1p: log(I + 1)/|1-alpha|
enum class EntropyForm { classical, abs, pos, log1p, scaled };

struct EntropyVariant {
    EntropyFamily family = EntropyFamily::shannon;
    EntropyForm form = EntropyForm::classical;
    double alpha = 0.0;  // meaningful for the renyi family only

    static EntropyVariant shannon(EntropyForm f = EntropyForm::classical);
    static EntropyVariant renyi_of(double alpha, EntropyForm f = EntropyForm::classical);
};

// Renyi order must be positive and bounded away from 1 (within 1e-6 rejected).
void validate_alpha(double alpha);

enum class EvalMethod { quadrature, summation };

// `divergent = true` means the quantity is genuinely infinite: `value` is then
// +-inf and no finite claim is made.  `converged = false` is the distinct
// failure channel for quadrature that ran out of budget.
struct EntropyResult {
    double value = 0.0;
    EvalMethod method = EvalMethod::quadrature;
    double error_estimate = 0.0;
    bool divergent = false;
    bool converged = true;
};

// Differential Shannon entropy -∫ p log p.  Integrability is probed by a
// window sweep of p|log p| (doubling windows; relative change below 1e-6 three
// times in a row counts as stabilized); a sweep that keeps growing sets the
// divergent flag with the sign taken from the signed partial integrals.
EntropyResult shannon_differential(const DensityModel& d);

// The strictly nonnegative Shannon alternatives (forms abs/pos/log1p/scaled).
// form == classical falls through to shannon_differential.
EntropyResult alt_shannon(const DensityModel& d, EntropyForm form);

// Renyi entropy log(∫p^alpha)/(1-alpha); ∫p^alpha is probed by window sweep.
EntropyResult renyi(const DensityModel& d, double alpha);

// Nonnegative Renyi alternatives (abs/pos/log1p); classical falls through.
EntropyResult renyi_alt(const DensityModel& d, double alpha, EntropyForm form);

// Partial sum -sum_{k <= K} p_k log p_k (0 log 0 = 0).  The divergent flag is
// set when the partial sum at 2K is still growing relative to the one at K;
// the error estimate reports that growth.
EntropyResult shannon_discrete(const DiscreteDistribution& dd, long long K);

// Partial-sum Renyi entropy log(sum_{k <= K} p_k^alpha)/(1-alpha).
EntropyResult renyi_discrete(const DiscreteDistribution& dd, double alpha, long long K);

// Dispatch on an EntropyVariant (used by the command-line driver and bindings).
EntropyResult evaluate_entropy(const DensityModel& d, const EntropyVariant& v);

}  // namespace entrokit
