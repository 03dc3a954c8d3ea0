#include "entrokit/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace entrokit {
namespace {

constexpr double kStabilizeRel = 1e-6;  // sweep increment considered settled
constexpr int kStabilizeRuns = 3;       // consecutive settled increments required
constexpr double kBaseWindow = 8.0;
constexpr int kMaxWindows = 25;         // windows up to 8 * 2^24 ~ 1.3e8

// log(exp(-lp) + 1) without overflow; lp = log p may be any real.
double log1p_inv_exp(double lp) {
    if (lp < -36.0) return -lp + std::log1p(std::exp(lp));
    return std::log1p(std::exp(-lp));
}

// Pointwise integrands built from log p, with 0*log(0) handled as 0.
std::function<double(double)> shannon_integrand(const DensityModel& d, EntropyForm form) {
    auto lp_of = d.log_pdf;
    switch (form) {
        case EntropyForm::classical:
            return [lp_of](double x) {
                const double lp = lp_of(x);
                if (!(lp > -700.0)) return 0.0;
                return -std::exp(lp) * lp;
            };
        case EntropyForm::abs:
            return [lp_of](double x) {
                const double lp = lp_of(x);
                if (!(lp > -700.0)) return 0.0;
                return std::exp(lp) * std::abs(lp);
            };
        case EntropyForm::pos:
            return [lp_of](double x) {
                const double lp = lp_of(x);
                if (!(lp > -700.0)) return 0.0;
                return lp < 0.0 ? -std::exp(lp) * lp : 0.0;
            };
        case EntropyForm::log1p:
            return [lp_of](double x) {
                const double lp = lp_of(x);
                if (!(lp > -700.0)) return 0.0;
                return std::exp(lp) * log1p_inv_exp(lp);
            };
        case EntropyForm::scaled:
            break;  // needs the supremum; built separately below
    }
    throw std::logic_error("shannon_integrand: unhandled form");
}

std::function<double(double)> scaled_integrand(const DensityModel& d) {
    if (!d.supremum || !(*d.supremum > 0.0))
        throw std::invalid_argument(
            "alt_shannon: scaled form requires a model with a recorded supremum");
    const double log_m = std::log(*d.supremum);
    auto lp_of = d.log_pdf;
    return [lp_of, log_m](double x) {
        const double r = lp_of(x) - log_m;  // log(p/M) <= 0
        if (!(r > -700.0)) return 0.0;
        return -std::exp(r) * r;
    };
}

std::function<double(double)> renyi_integrand(const DensityModel& d, double alpha) {
    auto lp_of = d.log_pdf;
    return [lp_of, alpha](double x) {
        const double e = alpha * lp_of(x);
        if (!(e > -700.0)) return 0.0;
        return std::exp(e);
    };
}

// Exact per-segment sums for piecewise-constant densities: over a constant
// piece of height h, ∫ p g(p) = width * h * g(h).
double segment_sum(const DensityModel& d, EntropyForm form) {
    double log_m = 0.0;
    if (form == EntropyForm::scaled) {
        if (!d.supremum || !(*d.supremum > 0.0))
            throw std::invalid_argument(
                "alt_shannon: scaled form requires a model with a recorded supremum");
        log_m = std::log(*d.supremum);
    }
    double s = 0.0;
    for (const auto& seg : d.segments) {
        if (!(seg.height > 0.0)) continue;
        const double lh = std::log(seg.height);
        double term = 0.0;
        switch (form) {
            case EntropyForm::classical: term = -lh; break;
            case EntropyForm::abs:       term = std::abs(lh); break;
            case EntropyForm::pos:       term = std::max(-lh, 0.0); break;
            case EntropyForm::log1p:     term = std::log1p(1.0 / seg.height); break;
            case EntropyForm::scaled:
                s += seg.width() * std::exp(lh - log_m) * (log_m - lh);
                continue;
        }
        s += seg.mass() * term;
    }
    return s;
}

double segment_renyi_integral(const DensityModel& d, double alpha) {
    double s = 0.0;
    for (const auto& seg : d.segments)
        if (seg.height > 0.0) s += seg.width() * std::pow(seg.height, alpha);
    return s;
}

std::vector<double> probe_windows() {
    std::vector<double> w(kMaxWindows);
    double v = kBaseWindow;
    for (int i = 0; i < kMaxWindows; ++i, v *= 2.0) w[i] = v;
    return w;
}

enum class ProbeOutcome { finite, divergent, non_convergent };

struct ProbeResult {
    ProbeOutcome outcome = ProbeOutcome::finite;
    std::vector<IntegrationResult> sweep;
};

// Integrability probe: cumulative integrals over doubling windows; finite when
// the relative increment stays below kStabilizeRel for kStabilizeRuns in a
// row (or the window swallows the support), divergent when the sweep keeps
// growing through every window.
ProbeResult probe_integrability(const DensityModel& d, const std::function<double(double)>& f) {
    IntegrandSpec spec;
    spec.f = f;
    spec.interval = d.support;
    const QuadratureOptions probe_opts{1e-9, 1e-12, 1'000'000};

    const std::vector<double> windows = probe_windows();
    ProbeResult res;
    res.sweep = integrate_window_sweep(spec, windows, probe_opts);

    int settled = 0;
    for (std::size_t j = 0; j < res.sweep.size(); ++j) {
        if (!res.sweep[j].converged) {
            res.outcome = ProbeOutcome::non_convergent;
            return res;
        }
        const double w = windows[j];
        if (d.support.lower >= -w && d.support.upper <= w) {
            res.outcome = ProbeOutcome::finite;  // window covers the support
            return res;
        }
        if (j == 0) continue;
        const double inc = std::abs(res.sweep[j].value - res.sweep[j - 1].value);
        settled = inc <= kStabilizeRel * std::max(1.0, std::abs(res.sweep[j].value)) ? settled + 1
                                                                                     : 0;
        if (settled >= kStabilizeRuns) {
            res.outcome = ProbeOutcome::finite;
            return res;
        }
    }
    res.outcome = ProbeOutcome::divergent;
    return res;
}

// Direction of a divergent classical entropy: sign of the late increments of
// the signed sweep.
double divergence_sign(const DensityModel& d) {
    IntegrandSpec spec;
    spec.f = shannon_integrand(d, EntropyForm::classical);
    spec.interval = d.support;
    const std::vector<double> windows = probe_windows();
    const auto sweep = integrate_window_sweep(spec, windows, {1e-9, 1e-12, 1'000'000});
    double last = 0.0;
    for (std::size_t j = 1; j < sweep.size(); ++j) {
        const double inc = sweep[j].value - sweep[j - 1].value;
        if (std::abs(inc) > kStabilizeRel) last = inc;
    }
    return last >= 0.0 ? 1.0 : -1.0;
}

EntropyResult non_convergent_result(const ProbeResult& probe) {
    EntropyResult r;
    r.method = EvalMethod::quadrature;
    r.converged = false;
    if (!probe.sweep.empty()) {
        r.value = probe.sweep.back().value;
        r.error_estimate = probe.sweep.back().error_estimate;
    }
    return r;
}

EntropyResult quadrature_value(const DensityModel& d, const std::function<double(double)>& f) {
    IntegrandSpec spec;
    spec.f = f;
    spec.interval = d.support;
    const IntegrationResult ir = integrate(spec);
    EntropyResult r;
    r.value = ir.value;
    r.method = EvalMethod::quadrature;
    r.error_estimate = ir.error_estimate;
    r.converged = ir.converged;
    return r;
}

EntropyResult summation_result(double value) {
    EntropyResult r;
    r.value = value;
    r.method = EvalMethod::summation;
    return r;
}

}  // namespace

EntropyVariant EntropyVariant::shannon(EntropyForm f) {
    return {EntropyFamily::shannon, f, 0.0};
}

EntropyVariant EntropyVariant::renyi_of(double alpha, EntropyForm f) {
    validate_alpha(alpha);
    if (f == EntropyForm::scaled)
        throw std::invalid_argument("EntropyVariant: the scaled form exists only for Shannon");
    return {EntropyFamily::renyi, f, alpha};
}

void validate_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("renyi order must be positive and finite");
    if (std::abs(alpha - 1.0) < 1e-6)
        throw std::invalid_argument("renyi order must be bounded away from 1");
}

EntropyResult shannon_differential(const DensityModel& d) {
    if (d.piecewise_constant()) return summation_result(segment_sum(d, EntropyForm::classical));

    const auto probe = probe_integrability(d, shannon_integrand(d, EntropyForm::abs));
    if (probe.outcome == ProbeOutcome::non_convergent) return non_convergent_result(probe);
    if (probe.outcome == ProbeOutcome::divergent) {
        EntropyResult r;
        r.value = divergence_sign(d) * kInf;
        r.divergent = true;
        return r;
    }
    return quadrature_value(d, shannon_integrand(d, EntropyForm::classical));
}

EntropyResult alt_shannon(const DensityModel& d, EntropyForm form) {
    if (form == EntropyForm::classical) return shannon_differential(d);
    if (d.piecewise_constant()) return summation_result(segment_sum(d, form));

    const auto f =
        form == EntropyForm::scaled ? scaled_integrand(d) : shannon_integrand(d, form);
    const auto probe = probe_integrability(d, f);
    if (probe.outcome == ProbeOutcome::non_convergent) return non_convergent_result(probe);
    if (probe.outcome == ProbeOutcome::divergent) {
        EntropyResult r;
        r.value = kInf;  // these forms have nonnegative integrands
        r.divergent = true;
        return r;
    }
    return quadrature_value(d, f);
}

namespace {

// Shared ∫ p^alpha evaluation; `divergent` reports an infinite integral.
struct RenyiIntegral {
    EntropyResult raw;    // value = ∫ p^alpha (or the failure channel)
    bool divergent = false;
    bool ok = true;
};

RenyiIntegral renyi_integral(const DensityModel& d, double alpha) {
    RenyiIntegral out;
    if (d.piecewise_constant()) {
        out.raw = summation_result(segment_renyi_integral(d, alpha));
        return out;
    }
    const auto f = renyi_integrand(d, alpha);
    const auto probe = probe_integrability(d, f);
    if (probe.outcome == ProbeOutcome::non_convergent) {
        out.raw = non_convergent_result(probe);
        out.ok = false;
        return out;
    }
    if (probe.outcome == ProbeOutcome::divergent) {
        out.divergent = true;
        return out;
    }
    out.raw = quadrature_value(d, f);
    return out;
}

}  // namespace

EntropyResult renyi(const DensityModel& d, double alpha) {
    validate_alpha(alpha);
    const RenyiIntegral ri = renyi_integral(d, alpha);
    if (!ri.ok) return ri.raw;
    EntropyResult r;
    if (ri.divergent) {
        r.value = alpha < 1.0 ? kInf : -kInf;
        r.divergent = true;
        return r;
    }
    r = ri.raw;
    const double inner = ri.raw.value;
    r.value = inner > 0.0 ? std::log(inner) / (1.0 - alpha) : 0.0;
    if (inner > 0.0) r.error_estimate = ri.raw.error_estimate / (inner * std::abs(1.0 - alpha));
    return r;
}

EntropyResult renyi_alt(const DensityModel& d, double alpha, EntropyForm form) {
    if (form == EntropyForm::classical) return renyi(d, alpha);
    if (form == EntropyForm::scaled)
        throw std::invalid_argument("renyi_alt: the scaled form exists only for Shannon");
    validate_alpha(alpha);
    const RenyiIntegral ri = renyi_integral(d, alpha);
    if (!ri.ok) return ri.raw;
    EntropyResult r;
    if (ri.divergent) {
        r.value = kInf;  // |.|, (.)_+ and log1p all send log(∫p^alpha) -> +inf
        r.divergent = true;
        return r;
    }
    r = ri.raw;
    const double inner = ri.raw.value;
    const double denom = std::abs(1.0 - alpha);
    const double log_inner = inner > 0.0 ? std::log(inner) : 0.0;
    switch (form) {
        case EntropyForm::abs:   r.value = std::abs(log_inner) / denom; break;
        case EntropyForm::pos:   r.value = std::max(log_inner, 0.0) / denom; break;
        case EntropyForm::log1p: r.value = std::log1p(inner) / denom; break;
        default: throw std::logic_error("renyi_alt: unhandled form");
    }
    if (inner > 0.0) r.error_estimate = ri.raw.error_estimate / (inner * denom);
    return r;
}

EntropyResult shannon_discrete(const DiscreteDistribution& dd, long long K) {
    if (!dd.prob) throw std::invalid_argument("shannon_discrete: missing pmf");
    if (K < dd.k_min) throw std::invalid_argument("shannon_discrete: K must be at least k_min");

    double signed_k = 0.0, abs_k = 0.0;
    double signed_2k = 0.0, abs_2k = 0.0;
    for (long long k = dd.k_min; k <= 2 * K; ++k) {
        const double p = dd.prob(k);
        if (!(p > 0.0)) continue;
        const double lp = std::log(p);
        if (k <= K) {
            signed_k += -p * lp;
            abs_k += p * std::abs(lp);
        }
        signed_2k += -p * lp;
        abs_2k += p * std::abs(lp);
    }
    EntropyResult r = summation_result(signed_k);
    r.error_estimate = std::abs(signed_2k - signed_k);
    r.divergent = (abs_2k - abs_k) > kStabilizeRel * std::max(1.0, abs_k);
    return r;
}

EntropyResult renyi_discrete(const DiscreteDistribution& dd, double alpha, long long K) {
    if (!dd.prob) throw std::invalid_argument("renyi_discrete: missing pmf");
    if (K < dd.k_min) throw std::invalid_argument("renyi_discrete: K must be at least k_min");
    validate_alpha(alpha);
    double inner = 0.0;
    for (long long k = dd.k_min; k <= K; ++k) {
        const double p = dd.prob(k);
        if (p > 0.0) inner += std::pow(p, alpha);
    }
    return summation_result(inner > 0.0 ? std::log(inner) / (1.0 - alpha) : 0.0);
}

EntropyResult evaluate_entropy(const DensityModel& d, const EntropyVariant& v) {
    if (v.family == EntropyFamily::shannon) return alt_shannon(d, v.form);
    return renyi_alt(d, v.alpha, v.form);
}

}  // namespace entrokit
