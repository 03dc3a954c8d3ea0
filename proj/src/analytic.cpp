#include "entrokit/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "entrokit/quadrature.hpp"

namespace entrokit {
namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string(what) + " must be positive and finite");
}

// log(c * e^z + 1) without overflow, t = log c + z.
double log_scaled_exp_p1(double log_c, double z) {
    const double t = log_c + z;
    if (t > 30.0) return t + std::log1p(std::exp(-t));
    return std::log1p(std::exp(t));
}

// (1/sqrt(pi)) ∫_0^inf e^-z z^-1/2 g(z) dz with the z^-1/2 endpoint handled by
// substitution inside the integrator.
double reduced_gaussian_integral(const std::function<double(double)>& g) {
    IntegrandSpec spec;
    spec.f = [&g](double z) { return std::exp(-z) * g(z) / std::sqrt(z); };
    spec.interval = SupportSpec::from(0.0);
    spec.singularity = Singularity{Singularity::Endpoint::lower, 0.5};
    const IntegrationResult r = integrate(spec);
    if (!r.converged) throw std::runtime_error("reduced_gaussian_integral: did not converge");
    return r.value / std::sqrt(kPi);
}

}  // namespace

double bisect(const std::function<double(double)>& g, double lo, double hi, double tol) {
    if (!(lo < hi)) throw std::invalid_argument("bisect: need lo < hi");
    double flo = g(lo), fhi = g(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::invalid_argument("bisect: no sign change on the bracket");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket at floating-point resolution
        const double fm = g(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double gaussian_shannon_cf(double sigma) {
    require_positive(sigma, "sigma");
    return 0.5 * (1.0 + std::log(2.0 * kPi)) + std::log(sigma);
}

ClosedForm gaussian_alt_cf(double sigma, EntropyForm form) {
    require_positive(sigma, "sigma");
    const double u = std::log(sigma * std::sqrt(2.0 * kPi));
    switch (form) {
        case EntropyForm::classical:
            return {gaussian_shannon_cf(sigma), ""};
        case EntropyForm::abs: {
            if (u > 0.0) return {0.5 + u, "u>0"};
            const double t = -u;
            const double value = 0.5 - t + (2.0 * t - 1.0) * std::erf(std::sqrt(t)) +
                                 2.0 * std::sqrt(t / kPi) * std::exp(-t);
            return {value, "u<=0"};
        }
        case EntropyForm::pos: {
            if (u > 0.0) return {0.5 + u, "u>0"};
            const double t = -u;
            const double value = 0.5 - t + (t - 0.5) * std::erf(std::sqrt(t)) +
                                 std::sqrt(t / kPi) * std::exp(-t);
            return {value, "u<=0"};
        }
        case EntropyForm::log1p: {
            const double value =
                reduced_gaussian_integral([u](double z) { return log_scaled_exp_p1(u, z); });
            return {value, "reduced-integral"};
        }
        case EntropyForm::scaled:
            return {sigma * std::sqrt(kPi / 2.0), ""};
    }
    throw std::logic_error("gaussian_alt_cf: unhandled form");
}

double gaussian_renyi_cf(double sigma, double alpha) {
    require_positive(sigma, "sigma");
    validate_alpha(alpha);
    return std::log(sigma) + 0.5 * std::log(2.0 * kPi) +
           std::log(alpha) / (2.0 * (alpha - 1.0));
}

double gaussian_renyi_integral(double sigma, double alpha) {
    require_positive(sigma, "sigma");
    validate_alpha(alpha);
    return std::exp((1.0 - alpha) * (std::log(sigma) + 0.5 * std::log(2.0 * kPi)) -
                    0.5 * std::log(alpha));
}

double exponential_shannon_cf(double mu) {
    require_positive(mu, "mu");
    return 1.0 + std::log(mu);
}

ClosedForm exponential_alt_cf(double mu, EntropyForm form) {
    require_positive(mu, "mu");
    switch (form) {
        case EntropyForm::classical:
            return {exponential_shannon_cf(mu), ""};
        case EntropyForm::abs:
            if (mu <= 1.0) return {2.0 * mu - std::log(mu) - 1.0, "mu<=1"};
            return {1.0 + std::log(mu), "mu>1"};
        case EntropyForm::pos:
            if (mu <= 1.0) return {mu, "mu<=1"};
            return {1.0 + std::log(mu), "mu>1"};
        case EntropyForm::log1p:
            return {std::log1p(mu) + mu * std::log1p(1.0 / mu), ""};
        case EntropyForm::scaled:
            return {mu, ""};
    }
    throw std::logic_error("exponential_alt_cf: unhandled form");
}

double exponential_renyi_cf(double mu, double alpha) {
    require_positive(mu, "mu");
    validate_alpha(alpha);
    return std::log(mu) - std::log(alpha) / (1.0 - alpha);
}

double exponential_renyi_integral(double mu, double alpha) {
    require_positive(mu, "mu");
    validate_alpha(alpha);
    return std::pow(mu, 1.0 - alpha) / alpha;
}

ClosedForm renyi_alt_cf(AnalyticFamily family, double param, double alpha, EntropyForm form) {
    validate_alpha(alpha);
    const double inner = family == AnalyticFamily::gaussian
                             ? gaussian_renyi_integral(param, alpha)
                             : exponential_renyi_integral(param, alpha);
    const double log_inner = std::log(inner);
    const double denom = std::abs(1.0 - alpha);
    const std::string branch = inner >= 1.0 ? "integral>=1" : "integral<1";
    switch (form) {
        case EntropyForm::classical:
            return {log_inner / (1.0 - alpha), ""};
        case EntropyForm::abs:
            return {std::abs(log_inner) / denom, branch};
        case EntropyForm::pos:
            return {std::max(log_inner, 0.0) / denom, branch};
        case EntropyForm::log1p:
            return {std::log1p(inner) / denom, ""};
        case EntropyForm::scaled:
            break;
    }
    throw std::invalid_argument("renyi_alt_cf: the scaled form exists only for Shannon");
}

double threshold_sigma_alpha(double alpha) {
    validate_alpha(alpha);
    return std::exp(std::log(alpha) / (2.0 * (1.0 - alpha))) / std::sqrt(2.0 * kPi);
}

double threshold_mu_alpha(double alpha) {
    validate_alpha(alpha);
    return std::exp(std::log(alpha) / (1.0 - alpha));
}

ThresholdResult solve_thresholds() {
    ThresholdResult out;
    out.u0 = bisect([](double u) { return std::erf(std::sqrt(-u)) - 0.5; }, -1.0, -0.01, 1e-14);
    out.sigma0 = std::exp(out.u0) / std::sqrt(2.0 * kPi);

    // Minimum value via the reduced integral (1/sqrt(pi)) ∫ e^-z z^-1/2 |z + u0| dz,
    // split at the kink z = -u0 so each piece is smooth.
    const double t0 = -out.u0;
    IntegrandSpec head;
    head.f = [t0](double z) { return std::exp(-z) * (t0 - z) / std::sqrt(z); };
    head.interval = SupportSpec::interval(0.0, t0);
    head.singularity = Singularity{Singularity::Endpoint::lower, 0.5};
    const IntegrationResult r1 = integrate(head);

    const IntegrationResult r2 = integrate(
        [t0](double z) { return std::exp(-z) * (z - t0) / std::sqrt(z); }, t0, kInf);

    if (!r1.converged || !r2.converged)
        throw std::runtime_error("solve_thresholds: quadrature did not converge");
    out.min_value = (r1.value + r2.value) / std::sqrt(kPi);
    return out;
}

}  // namespace entrokit
