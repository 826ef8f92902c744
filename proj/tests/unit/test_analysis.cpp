#include <doctest.h>

#include <cmath>
#include <vector>

#include "flicker/analysis.hpp"
#include "oracles.hpp"

using namespace flicker;

namespace {

SimConfig config(double lo, double hi, double T, std::size_t R) {
    SimConfig c{RateModel::uniform(lo, hi), TrappingModel(1.0)};
    c.horizon = T;
    c.realizations = R;
    return c;
}

double mc_min(double lo, double hi, int K, int trials, std::uint64_t seed) {
    RandomStream rng(seed);
    double sum = 0.0;
    for (int t = 0; t < trials; ++t) {
        double m = INFINITY;
        for (int k = 0; k < K; ++k) m = std::min(m, lo + (hi - lo) * rng.uniform());
        sum += m;
    }
    return sum / trials;
}

SpectrumEstimate pink(double scale) {
    SpectrumEstimate e;
    for (int k = 1; k <= 200; ++k) {
        e.freqs.push_back(0.01 * k);
        e.values.push_back(scale / (0.01 * k));
    }
    return e;
}

}  // namespace

TEST_CASE("expected minimum rate") {
    CHECK(expected_min_rate(0.0, 1.0, 1.0) == 0.5);
    CHECK(expected_min_rate(2.0, 3.0, 1e12) == doctest::Approx(2.0).epsilon(1e-11));
    CHECK(expected_min_rate(0.0, 1e3, 1e3) == doctest::Approx(0.999000999));
    CHECK_THROWS_AS(expected_min_rate(0.0, 1.0, 0.0), std::invalid_argument);
    for (int K : {1, 10, 1000}) {
        CAPTURE(K);
        const double mc = mc_min(0.0, 1e3, K, 10000, 5 + K);
        CHECK(std::abs(expected_min_rate(0.0, 1e3, K) / mc - 1.0) < 0.02);
    }
}

TEST_CASE("cutoff regime names") {
    for (auto r : {CutoffRegime::Auto, CutoffRegime::ErgodicExact, CutoffRegime::BroadRange, CutoffRegime::Nonergodic,
                   CutoffRegime::LongTrapping, CutoffRegime::MultiExperiment}) {
        CHECK(cutoff_regime_from_string(to_string(r)) == r);
    }
    CHECK_THROWS_AS(cutoff_regime_from_string("ergodic"), std::invalid_argument);
}

TEST_CASE("effective cutoff predictions") {
    const auto fig4 = config(0.0, 1e3, 1e6, 1);
    const auto lt = effective_cutoff(fig4, CutoffRegime::LongTrapping);
    CHECK(lt.regime == CutoffRegime::LongTrapping);
    CHECK(lt.min_rate_eff == doctest::Approx(1e-3).epsilon(2e-3));

    auto doubled = fig4;
    doubled.horizon *= 2.0;
    CHECK(effective_cutoff(doubled, CutoffRegime::LongTrapping).min_rate_eff ==
          doctest::Approx(0.5 * lt.min_rate_eff).epsilon(1e-12));

    auto many = fig4;
    many.realizations = 1000000;
    CHECK(effective_cutoff(many, CutoffRegime::MultiExperiment).min_rate_eff ==
          doctest::Approx(1.0 / fig4.horizon).epsilon(2e-3));

    // Auto picks by min_rate * T and never runs the ergodic forms without <tau>.
    CHECK(effective_cutoff(config(1e-3, 1e3, 1e5, 1)).regime == CutoffRegime::ErgodicExact);
    CHECK(effective_cutoff(config(1e-3, 1e3, 1e2, 1)).regime == CutoffRegime::Nonergodic);
    CHECK(effective_cutoff(fig4, CutoffRegime::BroadRange).regime == CutoffRegime::Nonergodic);

    // Ergodic form against K = R T / (<theta> + <tau>) pulses and the order statistic.
    const auto erg = config(1e-3, 1e3, 1e4, 1);
    const double cycle = 1.0 + std::log(1e6) / (1e3 - 1e-3);
    const double K = 1e4 / cycle;
    const double direct = (1e3 - 1e-3) / (K + 1.0) + 1e-3;
    CHECK(effective_cutoff(erg, CutoffRegime::ErgodicExact).min_rate_eff == doctest::Approx(direct).epsilon(1e-12));
    CHECK(effective_cutoff(erg, CutoffRegime::ErgodicExact).mean_detrap_time.has_value());
}

TEST_CASE("effective cutoff is monotone and bounded") {
    for (auto regime : {CutoffRegime::Auto, CutoffRegime::ErgodicExact, CutoffRegime::BroadRange,
                        CutoffRegime::Nonergodic, CutoffRegime::LongTrapping, CutoffRegime::MultiExperiment}) {
        for (double lo : {0.0, 1e-4, 1e-1}) {
            double prev_T = INFINITY;
            for (double T : {1e1, 1e2, 1e3, 1e4, 1e5, 1e6, 1e7}) {
                const auto c = config(lo, 1e3, T, 1);
                const double v = effective_cutoff(c, regime).min_rate_eff;
                CAPTURE(to_string(regime));
                CAPTURE(lo);
                CAPTURE(T);
                // Auto may switch form as T crosses 1 / min_rate; the bound still holds.
                if (regime != CutoffRegime::Auto) CHECK(v <= prev_T * (1.0 + 1e-12));
                CHECK(v >= std::max(lo, 1.0 / T) * (1.0 - 1e-12));
                prev_T = v;
            }
            double prev_R = INFINITY;
            for (std::size_t R : {1, 10, 100, 1000, 10000}) {
                const double v = effective_cutoff(config(lo, 1e3, 1e4, R), regime).min_rate_eff;
                CHECK(v <= prev_R * (1.0 + 1e-12));
                prev_R = v;
            }
        }
    }
}

TEST_CASE("predicted Hooge parameter") {
    CHECK(hooge_alpha_predicted(1.0, 1e4).alpha == 1e-4);
    CHECK(hooge_alpha_predicted(1.0, 1e3).alpha == 1e-3);
    CHECK(hooge_alpha_predicted(1.0, 1e3).source == HoogeSource::PredictedFromRates);
    CHECK_THROWS_AS(hooge_alpha_predicted(0.0, 1e3), std::invalid_argument);

    const auto ok = hooge_alpha_predicted(TrappingModel(1.0), RateModel::uniform(1e-4, 1e4));
    CHECK(ok.regime_ok);
    const auto bad = hooge_alpha_predicted(TrappingModel(1.0), RateModel::uniform(1e-3, 10.0));
    CHECK_FALSE(bad.regime_ok);
    CHECK(!bad.note.empty());

    // Full form with nu = 1 / (<theta> + <tau>).
    const double nu = 0.998161318883002567;
    const double full = hooge_alpha_full(nu, 1.0, 1e4);
    CHECK(std::abs(full / 1e-4 - 1.0) < 0.005);
    CHECK(hooge_alpha_full(0.986372743323272468, 1.0, 1e3) == doctest::Approx(1.0138155243734886e-3).epsilon(1e-12));
}

TEST_CASE("fitted Hooge parameter") {
    // S = I^2 alpha / (N f) with alpha = 2e-3, I = 3, N = 10.
    const double alpha = 2e-3, I = 3.0, N = 10.0;
    const auto est = pink(I * I * alpha / N);
    const auto fit = hooge_alpha_fitted(est, I, N, {0.1, 1.0});
    CHECK(fit.alpha == doctest::Approx(alpha).epsilon(1e-12));
    CHECK(fit.source == HoogeSource::FittedFromSpectrum);
    CHECK(fit.regime_ok);
    CHECK(fit.slope_deviation < 1e-9);
    CHECK(fit.points == 91);

    // a -> 2a: I -> 2I and S -> 4S leave alpha bitwise unchanged.
    auto scaled = est;
    for (auto& v : scaled.values) v *= 4.0;
    CHECK(hooge_alpha_fitted(scaled, 2.0 * I, N, {0.1, 1.0}).alpha == fit.alpha);

    SpectrumEstimate white;
    for (int k = 1; k <= 100; ++k) {
        white.freqs.push_back(0.01 * k);
        white.values.push_back(1.0);
    }
    const auto flat = hooge_alpha_fitted(white, 1.0, 1.0, {0.1, 1.0});
    CHECK_FALSE(flat.regime_ok);
    CHECK(flat.slope_deviation == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(hooge_alpha_fitted(est, I, N, {10.0, 20.0}), std::invalid_argument);
}

TEST_CASE("power law and knee fits") {
    const auto fit = fit_power_law(pink(5.0), {0.01, 2.0});
    CHECK(fit.slope == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(std::log10(5.0)).epsilon(1e-12));

    SpectrumEstimate knee;
    for (double f = 1e-3; f < 10.0; f *= 1.05) {
        knee.freqs.push_back(f);
        knee.values.push_back(2.0 / std::max(f, 0.05));
    }
    const auto k = fit_knee(knee, {1e-3, 10.0});
    CHECK(k.knee == doctest::Approx(0.05).epsilon(0.02));
    CHECK(k.level == doctest::Approx(40.0).epsilon(0.02));
    CHECK(k.rms_residual < 0.01);
}

TEST_CASE("material parameters") {
    MaterialParams unit{1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
    CHECK(pulse_height_from_material(unit) == 1.0);
    auto m = unit;
    m.trap_density = 4.0;
    const double g1 = trapping_rate_from_material(m);
    m.trap_density = 2.0;
    CHECK(trapping_rate_from_material(m) == 0.5 * g1);
    CHECK(hooge_alpha_predicted(trapping_rate_from_material(m), 1e3).alpha ==
          0.5 * hooge_alpha_predicted(g1, 1e3).alpha);
    m.length = 0.0;
    CHECK_THROWS_AS(pulse_height_from_material(m), std::invalid_argument);

    // a recovered from I / (N nu <theta>) equals q v_c / L.
    RandomStream rng(17);
    for (int i = 0; i < 50; ++i) {
        MaterialParams p{};
        for (double* v : {&p.charge, &p.drift_speed, &p.thermal_speed, &p.length, &p.cross_section,
                          &p.carrier_density, &p.trap_density, &p.capture_section}) {
            *v = std::exp(6.0 * rng.uniform() - 3.0);
        }
        const double nu = 0.1 + rng.uniform(), theta = 0.1 + rng.uniform();
        const double I = mean_current_from_material(p, nu, theta);
        const double N = carrier_count_from_material(p);
        CHECK(I / (N * nu * theta) == doctest::Approx(pulse_height_from_material(p)).epsilon(1e-12));
    }
}
