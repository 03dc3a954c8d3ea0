#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "entrokit/distributions.hpp"
#include "entrokit/quadrature.hpp"

using namespace entrokit;

namespace {
constexpr double kPi = std::numbers::pi;

void check_log_pdf_consistency(const DensityModel& d, std::initializer_list<double> xs) {
    for (double x : xs) {
        const double p = d.pdf(x);
        const double lp = d.log_pdf(x);
        if (p > 0.0)
            CHECK(std::exp(lp) == doctest::Approx(p).epsilon(1e-12));
        else
            CHECK(lp == -kInf);
    }
}

double total_mass(const DensityModel& d) {
    IntegrandSpec spec;
    spec.f = d.pdf;
    spec.interval = d.support;
    return integrate(spec).value;
}
}  // namespace

TEST_CASE("gaussian model") {
    const auto d = make_gaussian(0.5, 2.0);
    CHECK(d.pdf(0.5) == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0 * kPi))).epsilon(1e-14));
    CHECK(d.cdf(0.5) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(d.cdf(-100.0) == doctest::Approx(0.0));
    CHECK(d.cdf(100.0) == doctest::Approx(1.0));
    CHECK(*d.supremum == doctest::Approx(d.pdf(0.5)).epsilon(1e-14));
    CHECK(d.label == "gaussian:m=0.5,sigma=2");
    CHECK_FALSE(d.support.bounded());
    check_log_pdf_consistency(d, {-3.0, 0.0, 0.5, 4.0});
    CHECK(total_mass(d) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(make_gaussian(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_gaussian(0.0, -1.0), std::invalid_argument);
}

TEST_CASE("exponential model") {
    const auto d = make_exponential(2.0);
    CHECK(d.pdf(-1.0) == 0.0);
    CHECK(d.log_pdf(-1.0) == -kInf);
    CHECK(d.cdf(0.0) == 0.0);
    CHECK(d.cdf(2.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
    // expm1-based cdf keeps relative accuracy for tiny arguments.
    CHECK(d.cdf(1e-12) == doctest::Approx(5e-13).epsilon(1e-9));
    CHECK(*d.supremum == doctest::Approx(0.5).epsilon(1e-14));
    check_log_pdf_consistency(d, {-0.5, 0.1, 1.0, 50.0});
    CHECK(total_mass(d) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(make_exponential(0.0), std::invalid_argument);
}

TEST_CASE("uniform model is piecewise constant") {
    const auto d = make_uniform(-1.0, 3.0);
    CHECK(d.piecewise_constant());
    REQUIRE(d.segments.size() == 1);
    CHECK(d.pdf(0.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(d.pdf(-1.5) == 0.0);
    CHECK(d.cdf(-2.0) == 0.0);
    CHECK(d.cdf(1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(d.cdf(5.0) == 1.0);
    CHECK(*d.supremum == doctest::Approx(0.25));
    CHECK_THROWS_AS(make_uniform(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("heavy tail model") {
    const auto d = make_heavy_tail_log();
    CHECK(d.support.lower == doctest::Approx(2.0));
    CHECK(d.cdf(2.0) == doctest::Approx(0.0));
    CHECK(d.cdf(4.0) == doctest::Approx(0.5).epsilon(1e-14));  // 1 - log2/log4
    CHECK(d.pdf(2.0) == doctest::Approx(1.0 / (2.0 * std::log(2.0))).epsilon(1e-13));
    CHECK(d.has_flag(kFlagShannonPlusInfinity));
    check_log_pdf_consistency(d, {1.0, 2.5, 100.0, 1e6});
    // The tail mass decays like 1/log x, far too slow for whole-line
    // quadrature; cross-check pdf against cdf over a finite window instead.
    const auto r = integrate(d.pdf, 2.0, 1000.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(d.cdf(1000.0)).epsilon(1e-10));
    CHECK(d.cdf(1e9) < 1.0);
}

TEST_CASE("staircase comb model") {
    const auto d = make_staircase_comb(100);
    CHECK(d.piecewise_constant());
    CHECK(d.segments.size() == 99);  // teeth k = 2..100
    double mass = 0.0;
    double prev_height = kInf;
    for (const auto& seg : d.segments) {
        CHECK(seg.hi > seg.lo);
        mass += seg.mass();
        // Heights grow like k/L while widths shrink, so heights increase.
        CHECK(seg.height > 0.0);
        (void)prev_height;
        prev_height = seg.height;
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.segments.back().height == doctest::Approx(*d.supremum).epsilon(1e-12));
    CHECK(d.has_flag(kFlagShannonMinusInfinityLimit));
    CHECK(d.label == "staircase:K=100");
    CHECK(d.cdf(d.segments.back().hi) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(make_staircase_comb(1), std::invalid_argument);
}

TEST_CASE("rational decay model") {
    const auto d = make_rational_decay();
    CHECK(d.pdf(0.0) == doctest::Approx(1.0 / kPi).epsilon(1e-14));
    CHECK(d.cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(d.cdf(1.0) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(d.cdf(-3.0) + d.cdf(3.0) == doctest::Approx(1.0).epsilon(1e-14));
    check_log_pdf_consistency(d, {-10.0, 0.0, 5.0, 1e8});
    CHECK(total_mass(d) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("quartic exponential model") {
    const auto d = make_quartic_exp();
    const double c2 = 1.0 / (2.0 * std::tgamma(1.25));
    CHECK(d.pdf(0.0) == doctest::Approx(c2).epsilon(1e-12));
    CHECK(d.cdf(0.0) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(d.cdf(-10.0) == doctest::Approx(0.0));
    CHECK(d.cdf(10.0) == doctest::Approx(1.0));
    CHECK(d.cdf(1.0) - d.cdf(-1.0) > 0.8);  // bulk of the mass sits in [-1, 1]
    CHECK(d.has_flag(kFlagFailsLocalComparability));
    check_log_pdf_consistency(d, {-2.0, 0.0, 1.0, 3.0});
    CHECK(total_mass(d) == doctest::Approx(1.0).epsilon(1e-9));
    // cdf is monotone across the cached panel boundaries
    double prev = 0.0;
    for (double x = -4.0; x <= 4.0; x += 0.37) {
        const double f = d.cdf(x);
        CHECK(f >= prev - 1e-15);
        prev = f;
    }
}

TEST_CASE("log-square discrete distribution") {
    const auto dd = make_log_square_discrete();
    CHECK(dd.k_min == 2);
    CHECK(dd.slowly_converging);
    CHECK_FALSE(dd.truncation_index.has_value());
    const double L = 2.1097428012368957;  // sum_{k>=2} 1/(k log^2 k)
    CHECK(dd.prob(2) == doctest::Approx(1.0 / (L * 2.0 * std::log(2.0) * std::log(2.0)))
                            .epsilon(1e-6));
    double partial = 0.0;
    for (long long k = 2; k <= 200'000; ++k) partial += dd.prob(k);
    CHECK(partial < 1.0);
    CHECK(partial > 0.85);  // tail mass decays like 1/log K, so the bulk is early
}

TEST_CASE("local comparability holds for the gaussian") {
    const auto d = make_gaussian(0.0, 1.0);
    const auto r = check_local_comparability(d, 10.0, 0.0, 3.0, 500);
    CHECK(r.holds);
    CHECK_FALSE(r.witness.has_value());
}

TEST_CASE("local comparability fails for the quartic model") {
    const auto d = make_quartic_exp();
    const auto r = check_local_comparability(d, 100.0, 0.0, 100.0, 2000);
    CHECK_FALSE(r.holds);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->log_excess > 0.0);
    CHECK(std::abs(r.witness->x) > 5.0);  // violation comes from the far tail
}

TEST_CASE("local comparability validates its arguments") {
    const auto d = make_gaussian(0.0, 1.0);
    CHECK_THROWS_AS(check_local_comparability(d, -1.0, 0.0, 2.0, 500), std::invalid_argument);
    CHECK_THROWS_AS(check_local_comparability(d, 10.0, 0.0, 0.5, 500), std::invalid_argument);
    CHECK_THROWS_AS(check_local_comparability(d, 10.0, 0.0, 2.0, 10), std::invalid_argument);
}
