#include "entrokit/discretization.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "entrokit/functionals.hpp"

namespace entrokit {
namespace {

// Increments below this carry no representable information content.
constexpr double kMassFloor = 1e-300;


}  // namespace

PartitionSpec PartitionSpec::window(double N, double h) {
    if (!(N > 0.0) || !(h > 0.0) || !(h <= 2.0 * N))
        throw std::invalid_argument("window partition needs 0 < h <= 2N");
    PartitionSpec p;
    p.mode = Mode::window;
    p.N = N;
    p.h = h;
    return p;
}

PartitionSpec PartitionSpec::aligned(double a, double b, long long n) {
    if (!(a < b) || n < 1) throw std::invalid_argument("aligned partition needs a < b, n >= 1");
    PartitionSpec p;
    p.mode = Mode::aligned;
    p.a = a;
    p.b = b;
    p.n = n;
    return p;
}

PartitionSpec PartitionSpec::rated(double N, long long C) {
    if (!(N > 0.0) || C < 1) throw std::invalid_argument("rated partition needs N > 0, C >= 1");
    PartitionSpec p;
    p.mode = Mode::rated;
    p.N = N;
    p.C = C;
    return p;
}

long long PartitionSpec::cells() const {
    switch (mode) {
        case Mode::window: {
            if (!(N > 0.0) || !(h > 0.0) || !(2.0 * N / h < 1e12))
                throw std::invalid_argument("window partition needs N > 0 and a sane h > 0");
            const long long m = std::llround(2.0 * N / h);
            return m < 1 ? 1 : m;
        }
        case Mode::aligned:
            if (n < 1) throw std::invalid_argument("aligned partition needs n >= 1");
            return n;
        case Mode::rated:
            if (C < 1) throw std::invalid_argument("rated partition needs C >= 1");
            return C;
    }
    return 1;
}

double PartitionSpec::series_param() const {
    switch (mode) {
        case Mode::window: return N;
        case Mode::aligned: return static_cast<double>(n);
        case Mode::rated: return static_cast<double>(C);
    }
    return 0.0;
}

std::string PartitionSpec::describe() const {
    char buf[128];
    switch (mode) {
        case Mode::window:
            std::snprintf(buf, sizeof buf, "window:N=%g,h=%g", N, h);
            break;
        case Mode::aligned:
            std::snprintf(buf, sizeof buf, "aligned:a=%g,b=%g,n=%lld", a, b, n);
            break;
        case Mode::rated:
            std::snprintf(buf, sizeof buf, "rated:N=%g,C=%lld", N, C);
            break;
    }
    return buf;
}

bool DiscretizedDistribution::uniform_width(double rel_tol) const {
    if (widths.empty()) return false;
    const double w0 = widths.front();
    for (double w : widths)
        if (std::abs(w - w0) > rel_tol * w0) return false;
    return true;
}

double DiscretizedDistribution::common_width() const {
    if (!uniform_width()) throw std::logic_error("common_width: widths are not uniform");
    return (nodes.back() - nodes.front()) / static_cast<double>(widths.size());
}

DiscretizedDistribution discretize(const DensityModel& d, const PartitionSpec& p) {
    if (!d.cdf) throw std::invalid_argument("discretize: model has no cdf");
    double lo, hi;
    switch (p.mode) {
        case PartitionSpec::Mode::aligned: lo = p.a; hi = p.b; break;
        default: lo = -p.N; hi = p.N; break;
    }
    const long long m = p.cells();
    const double span = hi - lo;

    DiscretizedDistribution dd;
    dd.nodes.resize(static_cast<std::size_t>(m) + 1);
    // Exact endpoints; the midpoint of a symmetric even partition also lands
    // exactly on 0, which keeps jump discontinuities on cell boundaries.
    for (long long k = 0; k <= m; ++k)
        dd.nodes[static_cast<std::size_t>(k)] =
            lo + span * static_cast<double>(k) / static_cast<double>(m);
    dd.nodes.front() = lo;
    dd.nodes.back() = hi;

    dd.increments.resize(static_cast<std::size_t>(m));
    dd.widths.resize(static_cast<std::size_t>(m));
    double f_prev = d.cdf(lo);
    dd.left_tail = std::max(f_prev, 0.0);
    for (long long k = 0; k < m; ++k) {
        const double x_next = dd.nodes[static_cast<std::size_t>(k + 1)];
        const double f_next = d.cdf(x_next);
        dd.increments[static_cast<std::size_t>(k)] = std::max(f_next - f_prev, 0.0);
        dd.widths[static_cast<std::size_t>(k)] = x_next - dd.nodes[static_cast<std::size_t>(k)];
        f_prev = f_next;
    }
    dd.right_tail = std::max(1.0 - f_prev, 0.0);
    return dd;
}

double raw_shannon(const DiscretizedDistribution& dd, bool include_tails) {
    double s = 0.0;
    for (double q : dd.increments)
        if (q > 0.0) s -= q * std::log(q);
    if (include_tails) {
        if (dd.left_tail > 0.0) s -= dd.left_tail * std::log(dd.left_tail);
        if (dd.right_tail > 0.0) s -= dd.right_tail * std::log(dd.right_tail);
    }
    return s;
}

double compatible_shannon(const DiscretizedDistribution& dd, CompatibleForm form,
                          bool paper_literal) {
    if (!dd.uniform_width())
        throw std::invalid_argument("compatible_shannon: partition must have uniform widths");
    if (paper_literal && form != CompatibleForm::log1p)
        throw std::invalid_argument("compatible_shannon: paper_literal applies to log1p only");
    const double dx = dd.common_width();
    const double ldx = std::log(dx);
    double s = 0.0;
    for (double q : dd.increments) {
        if (!(q > kMassFloor)) continue;
        const double lq = std::log(q);
        switch (form) {
            case CompatibleForm::signed_: s += q * (ldx - lq); break;
            case CompatibleForm::abs:     s += q * std::abs(lq - ldx); break;
            case CompatibleForm::pos:     s += q * std::max(ldx - lq, 0.0); break;
            case CompatibleForm::log1p:
                s += paper_literal ? q * ((lq - ldx) + 1.0) : q * std::log1p(dx / q);
                break;
        }
    }
    return s;
}

RenyiDiscretization raw_renyi(const DiscretizedDistribution& dd, double alpha,
                              bool include_tails) {
    validate_alpha(alpha);
    RenyiDiscretization r;
    for (double q : dd.increments)
        if (q > 0.0) r.inner_sum += std::pow(q, alpha);
    if (include_tails) {
        if (dd.left_tail > 0.0) r.inner_sum += std::pow(dd.left_tail, alpha);
        if (dd.right_tail > 0.0) r.inner_sum += std::pow(dd.right_tail, alpha);
    }
    r.entropy_value = r.inner_sum > 0.0 ? std::log(r.inner_sum) / (1.0 - alpha) : 0.0;
    return r;
}

RenyiDiscretization compatible_renyi(const DiscretizedDistribution& dd, double alpha) {
    validate_alpha(alpha);
    if (!dd.uniform_width())
        throw std::invalid_argument("compatible_renyi: partition must have uniform widths");
    const double dx = dd.common_width();
    RenyiDiscretization r;
    double power_sum = 0.0;
    for (double q : dd.increments)
        if (q > 0.0) power_sum += std::pow(q, alpha);
    r.inner_sum = std::pow(dx, 1.0 - alpha) * power_sum;
    r.entropy_value = r.inner_sum > 0.0 ? std::log(r.inner_sum) / (1.0 - alpha) : 0.0;
    return r;
}

std::string DiscretizationFunctional::label() const {
    char buf[64];
    switch (kind) {
        case Kind::raw_shannon:
            return include_tails ? "raw-shannon+tails" : "raw-shannon";
        case Kind::raw_renyi:
            std::snprintf(buf, sizeof buf, "raw-renyi(alpha=%g)%s", alpha,
                          include_tails ? "+tails" : "");
            return buf;
        case Kind::compatible_renyi:
            std::snprintf(buf, sizeof buf, "compatible-renyi(alpha=%g)", alpha);
            return buf;
        case Kind::compatible_shannon: {
            const char* f = form == CompatibleForm::signed_ ? "signed"
                            : form == CompatibleForm::abs   ? "abs"
                            : form == CompatibleForm::pos   ? "pos"
                                                            : "log1p";
            std::string s = std::string("compatible-shannon:") + f;
            if (paper_literal) s += ":paper-literal";
            return s;
        }
    }
    return {};
}

namespace {

double apply_functional(const DiscretizationFunctional& f, const DiscretizedDistribution& dd) {
    switch (f.kind) {
        case DiscretizationFunctional::Kind::raw_shannon:
            return raw_shannon(dd, f.include_tails);
        case DiscretizationFunctional::Kind::raw_renyi:
            return raw_renyi(dd, f.alpha, f.include_tails).entropy_value;
        case DiscretizationFunctional::Kind::compatible_shannon:
            return compatible_shannon(dd, f.form, f.paper_literal);
        case DiscretizationFunctional::Kind::compatible_renyi:
            return compatible_renyi(dd, f.alpha).entropy_value;
    }
    throw std::logic_error("apply_functional: unhandled kind");
}

}  // namespace

ConvergenceSeries divergence_series(const DensityModel& d, const DiscretizationFunctional& f,
                                    std::span<const PartitionSpec> schedule) {
    ConvergenceSeries series;
    series.functional_label = f.label();
    series.points.reserve(schedule.size());
    for (const PartitionSpec& spec : schedule) {
        ConvergencePoint pt;
        pt.param = spec.series_param();
        try {
            const DiscretizedDistribution dd = discretize(d, spec);
            pt.value = apply_functional(f, dd);
        } catch (const std::exception& e) {
            pt.value = std::numeric_limits<double>::quiet_NaN();
            pt.ok = false;
            pt.error = e.what();
        }
        series.points.push_back(std::move(pt));
    }
    return series;
}

LogRateFit fit_log_rate(const ConvergenceSeries& series) {
    std::vector<double> xs, ys;
    for (const auto& pt : series.points)
        if (pt.ok && pt.param > 0.0 && std::isfinite(pt.value)) {
            xs.push_back(std::log(pt.param));
            ys.push_back(pt.value);
        }
    const std::size_t n = xs.size();
    if (n < 3) throw std::invalid_argument("fit_log_rate: need at least 3 usable points");

    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / static_cast<double>(n), my = sy / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("fit_log_rate: degenerate abscissae");

    LogRateFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss += r * r;
    }
    fit.rmse = std::sqrt(ss / static_cast<double>(n));
    return fit;
}

}  // namespace entrokit
