#include "entrokit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace entrokit {
namespace {

// Gauss-Kronrod (7,15) nodes and weights on [-1, 1]; positive half, the
// even-indexed abscissae carry the embedded 7-point Gauss rule.
constexpr int kHalfNodes = 8;
constexpr double kAbscissa[kHalfNodes] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0,
};
constexpr double kWeightK[kHalfNodes] = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679, 0.1903505780647854, 0.2044329400752989, 0.2094821410847278,
};
constexpr double kWeightG[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189, 0.4179591836734694,
};

struct Panel {
    double lo = 0.0;
    double hi = 0.0;
    double value = 0.0;
    double error = 0.0;
};

bool panel_less(const Panel& a, const Panel& b) { return a.error < b.error; }

Panel evaluate_panel(const std::function<double(double)>& g, double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double r = 0.5 * (hi - lo);
    double sum_k = 0.0;
    double sum_g = 0.0;
    for (int i = 0; i < kHalfNodes; ++i) {
        const double off = r * kAbscissa[i];
        double fi = g(c + off);
        if (i != kHalfNodes - 1) fi += g(c - off);
        if (!std::isfinite(fi)) fi = 0.0;  // underflow products and off-support zeros
        sum_k += kWeightK[i] * fi;
        // Odd indices are the embedded Gauss nodes (i == 7 is the shared center).
        if (i % 2 == 1) sum_g += kWeightG[i / 2] * fi;
    }
    Panel p;
    p.lo = lo;
    p.hi = hi;
    p.value = r * sum_k;
    p.error = std::abs(r * (sum_k - sum_g));
    return p;
}

// Finite-interval adaptive engine; worst panel first.
struct Engine {
    const std::function<double(double)>& g;
    QuadratureOptions opts;
    std::vector<Panel> heap;
    std::vector<Panel> frozen;  // panels too narrow to split further
    long evaluations = 0;

    explicit Engine(const std::function<double(double)>& fn, const QuadratureOptions& o)
        : g(fn), opts(o) {}

    void seed(double lo, double hi, int initial) {
        for (int i = 0; i < initial; ++i) {
            const double a = lo + (hi - lo) * i / initial;
            const double b = (i + 1 == initial) ? hi : lo + (hi - lo) * (i + 1) / initial;
            heap.push_back(evaluate_panel(g, a, b));
            evaluations += 15;
            std::push_heap(heap.begin(), heap.end(), panel_less);
        }
    }

    double total_value() const {
        double s = 0.0, comp = 0.0;
        for (const auto* bucket : {&heap, &frozen})
            for (const Panel& p : *bucket) {
                const double y = p.value - comp;
                const double t = s + y;
                comp = (t - s) - y;
                s = t;
            }
        return s;
    }

    double total_error() const {
        double s = 0.0;
        for (const auto* bucket : {&heap, &frozen})
            for (const Panel& p : *bucket) s += p.error;
        return s;
    }

    IntegrationResult refine() {
        IntegrationResult res;
        while (true) {
            const double value = total_value();
            const double error = total_error();
            if (error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(value))) {
                res = {value, error, evaluations, true};
                return res;
            }
            if (heap.empty() || evaluations + 30 > opts.max_evaluations) {
                res = {value, error, evaluations, false};
                return res;
            }
            std::pop_heap(heap.begin(), heap.end(), panel_less);
            Panel worst = heap.back();
            heap.pop_back();
            const double mid = 0.5 * (worst.lo + worst.hi);
            if (!(worst.lo < mid && mid < worst.hi)) {
                frozen.push_back(worst);  // width at rounding floor; cannot split
                continue;
            }
            heap.push_back(evaluate_panel(g, worst.lo, mid));
            std::push_heap(heap.begin(), heap.end(), panel_less);
            heap.push_back(evaluate_panel(g, mid, worst.hi));
            std::push_heap(heap.begin(), heap.end(), panel_less);
            evaluations += 30;
        }
    }
};

IntegrationResult run_engine(const std::function<double(double)>& g, double lo, double hi,
                             const QuadratureOptions& opts, int seed_panels) {
    if (!(lo < hi)) return {0.0, 0.0, 0, true};
    Engine e(g, opts);
    e.seed(lo, hi, seed_panels);
    return e.refine();
}

IntegrationResult merge(const IntegrationResult& a, const IntegrationResult& b) {
    return {a.value + b.value, a.error_estimate + b.error_estimate, a.evaluations + b.evaluations,
            a.converged && b.converged};
}

// x = t/(1-t^2) maps (-1, 1) onto the real line; dx = (1+t^2)/(1-t^2)^2 dt.
double unbounded_point(double t) { return t / ((1.0 - t) * (1.0 + t)); }
double unbounded_jacobian(double t) {
    const double d = (1.0 - t) * (1.0 + t);
    return (1.0 + t * t) / (d * d);
}

IntegrationResult integrate_plain(const std::function<double(double)>& f, double lo, double hi,
                                  const QuadratureOptions& opts) {
    const bool lo_inf = std::isinf(lo);
    const bool hi_inf = std::isinf(hi);
    if (!lo_inf && !hi_inf) return run_engine(f, lo, hi, opts, 8);
    if (lo_inf && hi_inf) {
        auto g = [&f](double t) { return f(unbounded_point(t)) * unbounded_jacobian(t); };
        return run_engine(g, -1.0, 1.0, opts, 16);
    }
    if (!lo_inf) {
        auto g = [&f, lo](double t) { return f(lo + unbounded_point(t)) * unbounded_jacobian(t); };
        return run_engine(g, 0.0, 1.0, opts, 12);
    }
    auto g = [&f, hi](double t) { return f(hi + unbounded_point(t)) * unbounded_jacobian(t); };
    return run_engine(g, -1.0, 0.0, opts, 12);
}

// Removes an endpoint singularity (x - a)^(-gamma) via z = s^(1/(1-gamma)),
// then integrates the now-bounded integrand over the finite interval.
IntegrationResult integrate_singular_finite(const std::function<double(double)>& f, double lo,
                                            double hi, const Singularity& s,
                                            const QuadratureOptions& opts) {
    const double q = 1.0 / (1.0 - s.gamma);
    const double len = hi - lo;
    const double s_hi = std::pow(len, 1.0 / q);
    if (s.endpoint == Singularity::Endpoint::lower) {
        auto g = [&f, lo, q](double t) { return f(lo + std::pow(t, q)) * q * std::pow(t, q - 1.0); };
        return run_engine(g, 0.0, s_hi, opts, 8);
    }
    auto g = [&f, hi, q](double t) { return f(hi - std::pow(t, q)) * q * std::pow(t, q - 1.0); };
    return run_engine(g, 0.0, s_hi, opts, 8);
}

void validate(const IntegrandSpec& spec) {
    if (!spec.f) throw std::invalid_argument("integrate: missing integrand");
    if (std::isnan(spec.interval.lower) || std::isnan(spec.interval.upper))
        throw std::invalid_argument("integrate: NaN interval endpoint");
    if (spec.singularity) {
        const auto& s = *spec.singularity;
        if (!(s.gamma > 0.0 && s.gamma < 1.0))
            throw std::invalid_argument("integrate: singularity exponent must lie in (0,1)");
        const bool lower = s.endpoint == Singularity::Endpoint::lower;
        const double end = lower ? spec.interval.lower : spec.interval.upper;
        if (std::isinf(end))
            throw std::invalid_argument("integrate: singular endpoint must be finite");
    }
}

IntegrationResult integrate_validated(const IntegrandSpec& spec, const QuadratureOptions& opts) {
    const double lo = spec.interval.lower;
    const double hi = spec.interval.upper;
    if (spec.interval.empty()) return {0.0, 0.0, 0, true};
    if (!spec.singularity) return integrate_plain(spec.f, lo, hi, opts);

    const auto& s = *spec.singularity;
    const bool lower = s.endpoint == Singularity::Endpoint::lower;
    const double fin = lower ? lo : hi;
    const double other = lower ? hi : lo;
    if (std::isinf(other)) {
        // Split one unit away from the singular end; each piece is routine.
        const double cut = lower ? fin + 1.0 : fin - 1.0;
        IntegrationResult near = lower
            ? integrate_singular_finite(spec.f, fin, cut, s, opts)
            : integrate_singular_finite(spec.f, cut, fin, s, opts);
        IntegrationResult far = lower ? integrate_plain(spec.f, cut, hi, opts)
                                      : integrate_plain(spec.f, lo, cut, opts);
        return merge(near, far);
    }
    return integrate_singular_finite(spec.f, lo, hi, s, opts);
}

}  // namespace

IntegrationResult integrate(const IntegrandSpec& spec, const QuadratureOptions& opts) {
    validate(spec);
    return integrate_validated(spec, opts);
}

IntegrationResult integrate(const std::function<double(double)>& f, double lo, double hi,
                            const QuadratureOptions& opts) {
    IntegrandSpec spec;
    spec.f = f;
    spec.interval = {lo, hi};
    return integrate(spec, opts);
}

std::vector<IntegrationResult> integrate_window_sweep(const IntegrandSpec& spec,
                                                      std::span<const double> windows,
                                                      const QuadratureOptions& opts) {
    validate(spec);
    for (std::size_t i = 0; i < windows.size(); ++i) {
        if (!(windows[i] > 0.0))
            throw std::invalid_argument("integrate_window_sweep: windows must be positive");
        if (i > 0 && !(windows[i] > windows[i - 1]))
            throw std::invalid_argument("integrate_window_sweep: windows must increase");
    }

    // Integrates interval ∩ [lo, hi], applying the declared singularity when
    // its endpoint survives the clipping.
    auto piece = [&spec, &opts](double lo, double hi) -> IntegrationResult {
        lo = std::max(lo, spec.interval.lower);
        hi = std::min(hi, spec.interval.upper);
        if (!(lo < hi)) return {0.0, 0.0, 0, true};
        IntegrandSpec clipped;
        clipped.f = spec.f;
        clipped.interval = {lo, hi};
        if (spec.singularity) {
            const auto& s = *spec.singularity;
            const bool lower = s.endpoint == Singularity::Endpoint::lower;
            if ((lower && lo == spec.interval.lower) || (!lower && hi == spec.interval.upper))
                clipped.singularity = s;
        }
        return integrate_validated(clipped, opts);
    };

    std::vector<IntegrationResult> out;
    out.reserve(windows.size());
    IntegrationResult running{0.0, 0.0, 0, true};
    double prev = 0.0;
    for (std::size_t i = 0; i < windows.size(); ++i) {
        const double w = windows[i];
        if (i == 0) {
            running = piece(-w, w);
        } else {
            running = merge(running, piece(-w, -prev));
            running = merge(running, piece(prev, w));
        }
        prev = w;
        out.push_back(running);
    }
    return out;
}

}  // namespace entrokit
