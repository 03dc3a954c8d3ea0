#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "entrokit/quadrature.hpp"

using namespace entrokit;

namespace {
constexpr double kPi = std::numbers::pi;
double std_normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi); }
}  // namespace

TEST_CASE("polynomial on a finite interval is exact") {
    const auto r = integrate([](double x) { return x * x * x * x; }, 0.0, 1.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("gaussian mass over the whole line") {
    IntegrandSpec spec;
    spec.f = std_normal_pdf;
    spec.interval = SupportSpec::whole_line();
    const auto r = integrate(spec);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.evaluations > 0);
}

TEST_CASE("exponential tail on a half line") {
    const auto r = integrate([](double x) { return std::exp(-x); }, 0.0, kInf);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));

    const auto left = integrate([](double x) { return std::exp(x); }, -kInf, 0.0);
    CHECK(left.converged);
    CHECK(left.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("declared lower-endpoint singularity") {
    IntegrandSpec spec;
    spec.f = [](double x) { return 1.0 / std::sqrt(x); };
    spec.interval = SupportSpec::interval(0.0, 1.0);
    spec.singularity = Singularity{Singularity::Endpoint::lower, 0.5};
    const auto r = integrate(spec);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("declared upper-endpoint singularity") {
    IntegrandSpec spec;
    spec.f = [](double x) { return 1.0 / std::sqrt(1.0 - x); };
    spec.interval = SupportSpec::interval(0.0, 1.0);
    spec.singularity = Singularity{Singularity::Endpoint::upper, 0.5};
    const auto r = integrate(spec);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("singular endpoint combined with an infinite interval") {
    IntegrandSpec spec;  // ∫_0^inf e^-z z^-1/2 dz = sqrt(pi)
    spec.f = [](double z) { return std::exp(-z) / std::sqrt(z); };
    spec.interval = SupportSpec::from(0.0);
    spec.singularity = Singularity{Singularity::Endpoint::lower, 0.5};
    const auto r = integrate(spec);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(std::sqrt(kPi)).epsilon(1e-11));
}

TEST_CASE("gamma exponent outside (0,1) is rejected") {
    IntegrandSpec spec;
    spec.f = [](double x) { return x; };
    spec.interval = SupportSpec::interval(0.0, 1.0);
    spec.singularity = Singularity{Singularity::Endpoint::lower, 1.0};
    CHECK_THROWS_AS(integrate(spec), std::invalid_argument);
    spec.singularity->gamma = 0.0;
    CHECK_THROWS_AS(integrate(spec), std::invalid_argument);
}

TEST_CASE("singularity on an infinite endpoint is rejected") {
    IntegrandSpec spec;
    spec.f = [](double x) { return std::exp(-std::abs(x)); };
    spec.interval = SupportSpec::whole_line();
    spec.singularity = Singularity{Singularity::Endpoint::lower, 0.5};
    CHECK_THROWS_AS(integrate(spec), std::invalid_argument);
}

TEST_CASE("empty interval integrates to zero") {
    const auto r = integrate([](double x) { return x; }, 2.0, 2.0);
    CHECK(r.converged);
    CHECK(r.value == 0.0);
}

TEST_CASE("exhausting the evaluation budget reports non-convergence") {
    QuadratureOptions opts;
    opts.max_evaluations = 150;  // seeds plus one split; far too little for 80 oscillations
    const auto r = integrate([](double x) { return std::sin(50.0 * x); }, 0.0, 10.0, opts);
    CHECK_FALSE(r.converged);
    CHECK(r.evaluations <= 150);
}

TEST_CASE("oscillatory integral with near-zero value uses the absolute floor") {
    const auto r = integrate([](double x) { return std::sin(x); }, 0.0, 10.0 * kPi);
    CHECK(r.converged);
    CHECK(std::abs(r.value) < 1e-10);
}

TEST_CASE("window sweep accumulates monotonically for a positive integrand") {
    IntegrandSpec spec;
    spec.f = std_normal_pdf;
    spec.interval = SupportSpec::whole_line();
    const std::vector<double> windows{1.0, 2.0, 4.0, 8.0};
    const auto sweep = integrate_window_sweep(spec, windows);
    REQUIRE(sweep.size() == windows.size());
    double prev = 0.0;
    for (const auto& r : sweep) {
        CHECK(r.converged);
        CHECK(r.value >= prev - 1e-12);
        prev = r.value;
    }
    CHECK(sweep.front().value == doctest::Approx(0.682689492).epsilon(1e-8));
    CHECK(sweep.back().value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("window sweep respects a bounded support") {
    IntegrandSpec spec;
    spec.f = [](double) { return 1.0; };
    spec.interval = SupportSpec::interval(0.25, 0.5);
    const std::vector<double> windows{1.0, 2.0};
    const auto sweep = integrate_window_sweep(spec, windows);
    CHECK(sweep[0].value == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(sweep[1].value == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("window sweep validates the window list") {
    IntegrandSpec spec;
    spec.f = [](double) { return 1.0; };
    spec.interval = SupportSpec::interval(0.0, 1.0);
    const std::vector<double> bad{2.0, 1.0};
    CHECK_THROWS_AS(integrate_window_sweep(spec, bad), std::invalid_argument);
    const std::vector<double> nonpositive{0.0, 1.0};
    CHECK_THROWS_AS(integrate_window_sweep(spec, nonpositive), std::invalid_argument);
}

TEST_CASE("non-finite integrand samples are treated as zero") {
    // Constant 1 with an inf spike at 0; an interior inf sample would
    // otherwise poison the whole sum.
    const auto r = integrate([](double x) { return x == 0.0 ? kInf : 1.0; }, -1.0, 1.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
}
