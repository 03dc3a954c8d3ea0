#include "entrokit/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "entrokit/quadrature.hpp"

namespace entrokit {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);

std::string format_param(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

// Shared piecewise-constant machinery for uniform and staircase models.
struct SegmentTable {
    std::vector<PiecewiseSegment> segments;
    std::vector<double> cum_mass;  // mass of segments [0..i]

    explicit SegmentTable(std::vector<PiecewiseSegment> segs) : segments(std::move(segs)) {
        cum_mass.reserve(segments.size());
        double c = 0.0;
        for (const auto& s : segments) {
            c += s.mass();
            cum_mass.push_back(c);
        }
    }

    // Index of the last segment with lo <= x, or -1.
    long find(double x) const {
        auto it = std::upper_bound(segments.begin(), segments.end(), x,
                                   [](double v, const PiecewiseSegment& s) { return v < s.lo; });
        return static_cast<long>(it - segments.begin()) - 1;
    }

    double pdf(double x) const {
        const long i = find(x);
        if (i < 0) return 0.0;
        const auto& s = segments[static_cast<std::size_t>(i)];
        return x <= s.hi ? s.height : 0.0;
    }

    double cdf(double x) const {
        const long i = find(x);
        if (i < 0) return 0.0;
        const auto& s = segments[static_cast<std::size_t>(i)];
        const double below = i > 0 ? cum_mass[static_cast<std::size_t>(i - 1)] : 0.0;
        if (x >= s.hi) return cum_mass[static_cast<std::size_t>(i)];
        return below + (x - s.lo) * s.height;
    }
};

DensityModel from_segments(std::vector<PiecewiseSegment> segs, std::string label) {
    auto table = std::make_shared<const SegmentTable>(std::move(segs));
    DensityModel d;
    d.pdf = [table](double x) { return table->pdf(x); };
    d.log_pdf = [table](double x) {
        const double p = table->pdf(x);
        return p > 0.0 ? std::log(p) : -kInf;
    };
    d.cdf = [table](double x) { return table->cdf(x); };
    d.support = {table->segments.front().lo, table->segments.back().hi};
    double sup = 0.0;
    for (const auto& s : table->segments) sup = std::max(sup, s.height);
    d.supremum = sup;
    d.label = std::move(label);
    d.segments = table->segments;
    return d;
}

}  // namespace

DensityModel make_gaussian(double m, double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma) || !std::isfinite(m))
        throw std::invalid_argument("make_gaussian: sigma must be positive and finite");
    const double log_norm = std::log(sigma * kSqrt2Pi);
    DensityModel d;
    d.log_pdf = [m, sigma, log_norm](double x) {
        const double z = (x - m) / sigma;
        return -0.5 * z * z - log_norm;
    };
    d.pdf = [lp = d.log_pdf](double x) { return std::exp(lp(x)); };
    d.cdf = [m, sigma](double x) {
        return 0.5 * std::erfc(-(x - m) / (sigma * std::numbers::sqrt2));
    };
    d.support = SupportSpec::whole_line();
    d.supremum = 1.0 / (sigma * kSqrt2Pi);
    d.label = "gaussian:m=" + format_param(m) + ",sigma=" + format_param(sigma);
    return d;
}

DensityModel make_exponential(double mu) {
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw std::invalid_argument("make_exponential: mu must be positive and finite");
    const double log_mu = std::log(mu);
    DensityModel d;
    d.log_pdf = [mu, log_mu](double x) { return x >= 0.0 ? -x / mu - log_mu : -kInf; };
    d.pdf = [mu, log_mu](double x) {
        return x >= 0.0 ? std::exp(-x / mu - log_mu) : 0.0;
    };
    d.cdf = [mu](double x) { return x > 0.0 ? -std::expm1(-x / mu) : 0.0; };
    d.support = SupportSpec::from(0.0);
    d.supremum = 1.0 / mu;
    d.label = "exponential:mu=" + format_param(mu);
    return d;
}

DensityModel make_uniform(double a, double b) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("make_uniform: need finite a < b");
    DensityModel d = from_segments({{a, b, 1.0 / (b - a)}},
                                   "uniform:a=" + format_param(a) + ",b=" + format_param(b));
    // Exact closed forms beat the generic table lookups here.
    const double h = 1.0 / (b - a);
    const double log_h = -std::log(b - a);
    d.pdf = [a, b, h](double x) { return (x >= a && x <= b) ? h : 0.0; };
    d.log_pdf = [a, b, log_h](double x) { return (x >= a && x <= b) ? log_h : -kInf; };
    d.cdf = [a, b](double x) {
        if (x <= a) return 0.0;
        if (x >= b) return 1.0;
        return (x - a) / (b - a);
    };
    return d;
}

DensityModel make_heavy_tail_log() {
    DensityModel d;
    d.log_pdf = [](double x) {
        if (x < 2.0) return -kInf;
        const double lx = std::log(x);
        return std::log(kLn2) - std::log(x) - 2.0 * std::log(lx);
    };
    d.pdf = [lp = d.log_pdf](double x) { return x >= 2.0 ? std::exp(lp(x)) : 0.0; };
    d.cdf = [](double x) { return x <= 2.0 ? 0.0 : 1.0 - kLn2 / std::log(x); };
    d.support = SupportSpec::from(2.0);
    d.supremum = 1.0 / (2.0 * kLn2);  // density is decreasing; maximum at x = 2
    d.label = "heavytail";
    d.flags = {kFlagShannonPlusInfinity};
    return d;
}

DensityModel make_staircase_comb(int K) {
    if (K < 2) throw std::invalid_argument("make_staircase_comb: K must be at least 2");
    double L = 0.0;
    for (int k = 2; k <= K; ++k) {
        const double lk = std::log(static_cast<double>(k));
        L += 1.0 / (k * lk * lk);
    }
    std::vector<PiecewiseSegment> segs;
    segs.reserve(static_cast<std::size_t>(K - 1));
    for (int k = 2; k <= K; ++k) {
        const double kk = static_cast<double>(k);
        const double lk = std::log(kk);
        segs.push_back({kk, kk + 1.0 / (kk * kk * lk * lk), kk / L});
    }
    DensityModel d = from_segments(std::move(segs), "staircase:K=" + std::to_string(K));
    d.flags = {kFlagShannonMinusInfinityLimit};
    return d;
}

DensityModel make_rational_decay() {
    DensityModel d;
    d.log_pdf = [](double x) { return -std::log(kPi) - std::log1p(x * x); };
    d.pdf = [](double x) { return 1.0 / (kPi * (1.0 + x * x)); };
    d.cdf = [](double x) { return 0.5 + std::atan(x) / kPi; };
    d.support = SupportSpec::whole_line();
    d.supremum = 1.0 / kPi;
    d.label = "rational";
    return d;
}

namespace {

// Eager cdf cache for the quartic model: cumulative Gauss-Kronrod panel
// integrals on a fine grid, plus a partial-panel rule for interior points.
struct QuarticCache {
    double lo;
    double step;
    std::vector<double> cum;  // cum[i] = integral of pdf over [lo, lo + i*step]
};

double quartic_panel(double c2, double a, double b) {
    IntegrandSpec s;
    s.f = [c2](double x) { return c2 * std::exp(-x * x * x * x); };
    s.interval = {a, b};
    return integrate(s, {1e-14, 1e-16, 4000}).value;
}

}  // namespace

DensityModel make_quartic_exp() {
    const double c2 = 1.0 / (2.0 * std::tgamma(1.25));
    // exp(-x^4) < 1e-91 beyond |x| = 3.8; the truncated tail is far below the
    // 1e-12 cache tolerance.
    auto cache = std::make_shared<QuarticCache>();
    cache->lo = -3.8;
    cache->step = 7.6 / 1024.0;
    cache->cum.resize(1025);
    cache->cum[0] = 0.0;
    for (int i = 1; i <= 1024; ++i) {
        const double a = cache->lo + cache->step * (i - 1);
        const double b = cache->lo + cache->step * i;
        cache->cum[static_cast<std::size_t>(i)] =
            cache->cum[static_cast<std::size_t>(i - 1)] + quartic_panel(c2, a, b);
    }

    DensityModel d;
    d.log_pdf = [c2](double x) {
        const double x2 = x * x;
        return std::log(c2) - x2 * x2;
    };
    d.pdf = [c2](double x) {
        const double x2 = x * x;
        return c2 * std::exp(-x2 * x2);
    };
    d.cdf = [cache, c2](double x) {
        if (x <= cache->lo) return 0.0;
        const double hi = cache->lo + cache->step * 1024;
        if (x >= hi) return 1.0;
        const auto i = static_cast<std::size_t>((x - cache->lo) / cache->step);
        const double xi = cache->lo + cache->step * static_cast<double>(i);
        double f = cache->cum[i];
        if (x > xi) f += quartic_panel(c2, xi, x);
        return std::min(f, 1.0);
    };
    d.support = SupportSpec::whole_line();
    d.supremum = c2;
    d.label = "quartic";
    d.flags = {kFlagFailsLocalComparability};
    return d;
}

DiscreteDistribution make_log_square_discrete() {
    // Partial sum plus an Euler-Maclaurin tail: sum_{k>=n} f(k) with
    // f(x) = 1/(x log^2 x) equals 1/log(n) + f(n)/2 - f'(n)/12 + O(f''').
    constexpr long long n = 1'000'000;
    double L = 0.0;
    for (long long k = n - 1; k >= 2; --k) {
        const double lk = std::log(static_cast<double>(k));
        L += 1.0 / (static_cast<double>(k) * lk * lk);
    }
    const double ln_n = std::log(static_cast<double>(n));
    const double fn = 1.0 / (static_cast<double>(n) * ln_n * ln_n);
    const double fpn = -(ln_n + 2.0) /
                       (static_cast<double>(n) * static_cast<double>(n) * ln_n * ln_n * ln_n);
    L += 1.0 / ln_n + fn / 2.0 - fpn / 12.0;

    DiscreteDistribution dd;
    dd.prob = [L](long long k) {
        if (k < 2) return 0.0;
        const double lk = std::log(static_cast<double>(k));
        return 1.0 / (L * static_cast<double>(k) * lk * lk);
    };
    dd.k_min = 2;
    dd.truncation_index = std::nullopt;  // tail mass ~ 1/(L log K): no usable K
    dd.slowly_converging = true;
    dd.label = "log-square-discrete";
    return dd;
}

ComparabilityResult check_local_comparability(const DensityModel& d, double D, double x0, double K,
                                              int samples) {
    if (!(D > 0.0) || !(x0 >= 0.0) || !(D > x0))
        throw std::invalid_argument("check_local_comparability: need 0 <= x0 < D");
    if (!(K >= 1.0)) throw std::invalid_argument("check_local_comparability: K must be >= 1");
    if (samples < 100)
        throw std::invalid_argument("check_local_comparability: need at least 100 samples per unit");

    const double log_k = std::log(K);
    const double step = 1.0 / samples;
    const double pair_gap = 1.0 / D;

    ComparabilityResult res;
    double worst = 0.0;

    auto consider = [&](double x, double y) {
        const double lx = d.log_pdf(x);
        const double ly = d.log_pdf(y);
        if (lx == -kInf) return;           // p(x) = 0 never violates
        double excess;
        if (ly == -kInf) {
            excess = kInf;                 // positive mass against zero mass
        } else {
            excess = lx - ly - log_k;
            if (!(excess > 0.0)) return;
        }
        if (!res.witness || excess > worst) {
            worst = excess;
            res.holds = false;
            res.witness = ComparabilityWitness{x, y, d.pdf(x), d.pdf(y), excess};
        }
    };

    // Both sign ranges |x| in (x0, D); pairs (x, x +- 1/D) on the 1/samples grid.
    for (int side = 0; side < 2; ++side) {
        const double sgn = side == 0 ? 1.0 : -1.0;
        for (double r = x0 + step; r + pair_gap < D; r += step) {
            const double x = sgn * r;
            const double y = sgn * (r + pair_gap);
            consider(x, y);
            consider(y, x);
        }
    }
    return res;
}

}  // namespace entrokit
