#pragma once

#include <functional>
#include <string>

#include "entrokit/functionals.hpp"

namespace entrokit {

// Closed-form value together with the piecewise branch it came from
// (empty when the formula has a single branch).
struct ClosedForm {
    double value = 0.0;
    std::string branch;
};

// Bisection root of a continuous sign-changing g on [lo, hi] to within tol.
double bisect(const std::function<double(double)>& g, double lo, double hi, double tol);

// ---- Gaussian(m, sigma): values depend on sigma only ----

// (1/2)(1 + log 2pi) + log sigma.
double gaussian_shannon_cf(double sigma);

// Closed forms for abs/pos/scaled built on erf, with u = log(sigma*sqrt(2pi)):
//   abs, u > 0:  1/2 + u (coincides with pos and classical)
//   abs, u <= 0: 1/2 - t + (2t-1)erf(sqrt(t)) + 2*sqrt(t/pi)*e^-t,  t = -u
//   pos, u <= 0: 1/2 - t + (t-1/2)erf(sqrt(t)) + sqrt(t/pi)*e^-t
//   scaled:      sigma*sqrt(pi/2)
// form == log1p has no elementary form and is evaluated by the reduced
// single integral (1/sqrt(pi)) ∫_0^inf e^-z z^-1/2 log(sigma*sqrt(2pi)*e^z + 1) dz.
ClosedForm gaussian_alt_cf(double sigma, EntropyForm form);

// log sigma + (1/2) log 2pi + log(alpha)/(2(alpha-1)).
double gaussian_renyi_cf(double sigma, double alpha);

// ∫ p^alpha for the Gaussian: sigma^(1-alpha) (2pi)^((1-alpha)/2) alpha^(-1/2).
double gaussian_renyi_integral(double sigma, double alpha);

// ---- Exponential(mu) ----

// 1 + log mu.
double exponential_shannon_cf(double mu);

// Piecewise closed forms:
//   abs:  2mu - log mu - 1 (mu <= 1), 1 + log mu (mu > 1); minimum log 2 at mu = 1/2
//   pos:  mu (mu <= 1), 1 + log mu (mu > 1)
//   log1p: log(mu + 1) + mu log(1/mu + 1)
//   scaled: mu
ClosedForm exponential_alt_cf(double mu, EntropyForm form);

// log mu - log(alpha)/(1-alpha).
double exponential_renyi_cf(double mu, double alpha);

// ∫ p^alpha for the exponential: mu^(1-alpha)/alpha.
double exponential_renyi_integral(double mu, double alpha);

// ---- Renyi alternatives (both families) ----

enum class AnalyticFamily { gaussian, exponential };

// Piecewise closed forms for the abs/pos/log1p Renyi alternatives, branching
// at sigma_alpha (Gaussian) or mu_alpha (exponential) where ∫p^alpha crosses 1.
ClosedForm renyi_alt_cf(AnalyticFamily family, double param, double alpha, EntropyForm form);

// Scale at which the Renyi alternatives of order alpha touch zero:
//   sigma_alpha = (2pi)^(-1/2) alpha^(1/(2(1-alpha))),  mu_alpha = alpha^(1/(1-alpha)).
double threshold_sigma_alpha(double alpha);
double threshold_mu_alpha(double alpha);

// ---- Gaussian abs-entropy minimum ----

struct ThresholdResult {
    double u0 = 0.0;        // root of erf(sqrt(-u)) = 1/2 on [-1, -0.01]
    double sigma0 = 0.0;    // e^u0 / sqrt(2pi)
    double min_value = 0.0; // value of the abs entropy at sigma0, by quadrature
};

// Location and value of the minimum of sigma -> ∫ p |log p| over Gaussians:
// u0 by bisection of erf(sqrt(-u)) - 1/2, the minimum value by quadrature of
// the reduced integral (independent of the erf-based closed form).
ThresholdResult solve_thresholds();

}  // namespace entrokit
