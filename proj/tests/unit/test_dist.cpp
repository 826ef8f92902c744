#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "flicker/dist.hpp"
#include "oracles.hpp"

using namespace flicker;

TEST_CASE("rate model construction") {
    CHECK_THROWS_AS(RateModel::uniform(-1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(RateModel::uniform(2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(RateModel::uniform(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(RateModel::arrhenius(1.0, 0.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(RateModel::arrhenius(1.0, 1.0, 2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(TrappingModel(0.0), std::invalid_argument);

    const auto m = RateModel::arrhenius(1.0, 1.0, 0.0, std::log(1e4));
    CHECK(m.min_rate() == doctest::Approx(1e-4).epsilon(1e-12));
    CHECK(m.max_rate() == 1.0);
    CHECK(RateModel::uniform(3.0, 3.0).degenerate());
    CHECK(TrappingModel(4.0).mean_time() == 0.25);
}

TEST_CASE("uniform rate samples stay in range") {
    RandomStream rng(11);
    const auto m = RateModel::uniform(0.0, 1e3);
    for (int i = 0; i < 10000; ++i) {
        const double g = sample_rate(m, rng);
        REQUIRE(g >= 0.0);
        REQUIRE(g <= 1e3);
    }
}

TEST_CASE("degenerate Arrhenius support gives a single rate") {
    RandomStream rng(3);
    const auto m = RateModel::arrhenius(5.0, 0.5, 1.0, 1.0);
    const double expected = 5.0 * std::exp(-1.0 / 0.5);
    for (int i = 0; i < 100; ++i) CHECK(sample_rate(m, rng) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("Arrhenius rates are uniform") {
    RandomStream rng(2024);
    const auto m = RateModel::arrhenius(1.0, 1.0, 0.0, std::log(1e4));
    std::vector<double> s(100000);
    for (auto& g : s) g = sample_rate(m, rng);
    const double lo = 1e-4, hi = 1.0;
    const double p = oracle::ks_pvalue(s, [&](double g) { return std::clamp((g - lo) / (hi - lo), 0.0, 1.0); });
    CHECK(p > 0.01);
}

TEST_CASE("degenerate uniform law gives exponential gaps") {
    RandomStream rng(5);
    const auto m = RateModel::uniform(2.0, 2.0);
    std::vector<double> s(20000);
    for (auto& t : s) t = sample_detrap_time(m, rng);
    CHECK(oracle::ks_pvalue(s, [](double t) { return 1.0 - std::exp(-2.0 * t); }) > 0.01);
    CHECK(detrap_pdf(0.7, m) == doctest::Approx(2.0 * std::exp(-1.4)).epsilon(1e-14));
    CHECK(detrap_mean(m) == 0.5);
}

TEST_CASE("detrapping time density matches log-binned sample counts") {
    RandomStream rng(77);
    const auto m = RateModel::uniform(1e-3, 10.0);
    constexpr int kBins = 40;  // 10 per decade over [1e-2, 1e2]
    std::vector<double> observed(kBins, 0.0), expected(kBins, 0.0);
    const int n = 1000000;
    for (int i = 0; i < n; ++i) {
        const double t = sample_detrap_time(m, rng);
        const double b = std::floor((std::log10(t) + 2.0) * 10.0);
        if (b >= 0 && b < kBins) observed[static_cast<int>(b)] += 1.0;
    }
    for (int b = 0; b < kBins; ++b) {
        const double t0 = std::pow(10.0, -2.0 + b / 10.0), t1 = std::pow(10.0, -2.0 + (b + 1) / 10.0);
        expected[b] = n * oracle::integrate([&](double t) { return oracle::mixture_pdf(t, 1e-3, 10.0); }, t0, t1, 1e-10);
    }
    const double stat = oracle::pearson(observed, expected);
    CHECK(oracle::chi2_pvalue(stat, kBins - 1) > 0.01);
}

TEST_CASE("zero minimum rate yields a heavy tail") {
    RandomStream rng(9);
    const auto m = RateModel::uniform(0.0, 1e3);
    const double horizon = 10.0;
    int beyond = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        if (sample_detrap_time(m, rng) > horizon) ++beyond;
    }
    // P(tau > t) by quadrature of the rate average of exp(-g t).
    const double survival = oracle::integrate([&](double g) { return std::exp(-g * horizon); }, 0.0, 1e3) / 1e3;
    CHECK(survival == doctest::Approx(detrap_survival(horizon, m)).epsilon(1e-10));
    const double frac = static_cast<double>(beyond) / n;
    CHECK(std::abs(frac - survival) < 4.0 * std::sqrt(survival / n));
    // Algebraic decay: survival at 10x the time shrinks only 10x.
    CHECK(detrap_survival(100.0, m) / detrap_survival(10.0, m) == doctest::Approx(0.1).epsilon(1e-6));
}

TEST_CASE("detrap_pdf values") {
    const auto m = RateModel::uniform(1e-3, 10.0);
    CHECK(detrap_pdf(0.0, m) == doctest::Approx(5.0005).epsilon(1e-12));
    CHECK(detrap_pdf(1e-12, m) == doctest::Approx(5.0005).epsilon(1e-9));
    CHECK_THROWS_AS(detrap_pdf(-1.0, m), std::domain_error);

    // Closed form against the quadrature oracle across the whole range,
    // including the small-tau region where the closed form cancels.
    for (double t : {1e-9, 1e-6, 1e-4, 1e-3, 2e-3, 1e-2, 0.1, 1.0, 10.0, 1e2, 1e3, 1e4}) {
        CAPTURE(t);
        CHECK(detrap_pdf(t, m) == doctest::Approx(oracle::mixture_pdf(t, 1e-3, 10.0)).epsilon(1e-10));
    }
    // tau^-2 asymptote at tau = 1.
    const double asym = 1.0 / (10.0 - 1e-3);
    CHECK(std::abs(detrap_pdf(1.0, m) / asym - 1.0) < 0.1);
}

TEST_CASE("detrap_pdf normalization and nonnegativity") {
    const auto m = RateModel::uniform(1e-3, 10.0);
    const double mass = oracle::integrate([&](double t) { return detrap_pdf(t, m); }, 0.0, 1.0) +
                        oracle::integrate([&](double t) { return detrap_pdf(t, m); }, 1.0, 1e3) +
                        oracle::integrate([&](double t) { return detrap_pdf(t, m); }, 1e3, INFINITY);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
    for (double t = 1e-8; t < 1e8; t *= 1.7) REQUIRE(detrap_pdf(t, m) >= 0.0);
    CHECK(detrap_cdf(5.0, m) == doctest::Approx(oracle::integrate([&](double t) { return detrap_pdf(t, m); }, 0.0, 5.0))
                                    .epsilon(1e-10));
}

TEST_CASE("detrap_pdf degenerate limit") {
    const double g = 2.0;
    const auto m = RateModel::uniform(g, g * (1.0 + 1e-5));
    for (double t : {1e-3, 0.1, 1.0, 5.0}) {
        CAPTURE(t);
        CHECK(std::abs(detrap_pdf(t, m) / (g * std::exp(-g * t)) - 1.0) < 1e-3);
    }
}

TEST_CASE("detrap_mean") {
    CHECK(detrap_mean(RateModel::uniform(1e-3, 10.0)) == doctest::Approx(0.9211261498125995).epsilon(1e-12));
    CHECK(detrap_mean(RateModel::uniform(1e-4, 1e4)) == doctest::Approx(1.8420680928159173e-3).epsilon(1e-12));
    CHECK_THROWS_AS(detrap_mean(RateModel::uniform(0.0, 1.0)), NonergodicError);

    RandomStream rng(123);
    const auto m = RateModel::uniform(1e-3, 10.0);
    const int n = 1000000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = sample_detrap_time(m, rng);
        sum += t;
        sq += t * t;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sq / n - mean * mean) / n);
    CHECK(std::abs(mean - detrap_mean(m)) < 3.0 * se);
}

TEST_CASE("stationary pulse rate and free probability") {
    const auto rates = RateModel::uniform(1e-4, 1e4);
    const TrappingModel trap(1.0);
    CHECK(mean_pulse_rate(rates, trap) == doctest::Approx(0.998161318883002567).epsilon(1e-12));
    CHECK(free_probability(rates, trap) == doctest::Approx(0.998161318883002567).epsilon(1e-12));
    CHECK_THROWS_AS(mean_pulse_rate(RateModel::uniform(0.0, 1.0), trap), NonergodicError);
}
