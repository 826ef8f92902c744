#include "flicker/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace flicker {

double expected_min_rate(double min_rate, double max_rate, double pulse_count) {
    if (!(pulse_count >= 1.0)) throw std::invalid_argument("expected_min_rate: K must be >= 1");
    return (max_rate - min_rate) / (pulse_count + 1.0) + min_rate;
}

std::string to_string(CutoffRegime r) {
    switch (r) {
        case CutoffRegime::Auto: return "auto";
        case CutoffRegime::ErgodicExact: return "ergodic_exact";
        case CutoffRegime::BroadRange: return "broad_range";
        case CutoffRegime::Nonergodic: return "nonergodic";
        case CutoffRegime::LongTrapping: return "long_trapping";
        case CutoffRegime::MultiExperiment: return "multi_experiment";
    }
    return "auto";
}

CutoffRegime cutoff_regime_from_string(const std::string& name) {
    for (auto r : {CutoffRegime::Auto, CutoffRegime::ErgodicExact, CutoffRegime::BroadRange, CutoffRegime::Nonergodic,
                   CutoffRegime::LongTrapping, CutoffRegime::MultiExperiment}) {
        if (to_string(r) == name) return r;
    }
    throw std::invalid_argument("unknown cutoff regime '" + name + "'");
}

CutoffPrediction effective_cutoff(const SimConfig& config, CutoffRegime regime) {
    const double lo = config.rates.min_rate();
    const double hi = config.rates.max_rate();
    const double theta = config.trapping.mean_time();
    const double T = config.horizon;
    const double R = static_cast<double>(config.realizations);

    if (regime == CutoffRegime::Auto) regime = lo * T > 1.0 ? CutoffRegime::ErgodicExact : CutoffRegime::Nonergodic;
    // The ergodic forms need <tau>, which does not exist for a zero minimum rate.
    if (lo <= 0.0 && (regime == CutoffRegime::ErgodicExact || regime == CutoffRegime::BroadRange)) {
        regime = CutoffRegime::Nonergodic;
    }

    CutoffPrediction out{0.0, regime, lo, hi, theta, std::nullopt, T, config.realizations};
    if (lo > 0.0) out.mean_detrap_time = detrap_mean(config.rates);

    double value = 0.0;
    switch (regime) {
        case CutoffRegime::ErgodicExact: {
            const double cycle = theta + *out.mean_detrap_time;
            value = (hi - lo) * cycle / (cycle + R * T) + lo;
            break;
        }
        case CutoffRegime::BroadRange: {
            const double spread = std::log(hi / lo);
            value = hi * (hi * theta + spread) / (hi * (theta + R * T) + spread) + lo;
            break;
        }
        case CutoffRegime::Nonergodic: {
            const double spread = std::max(0.0, std::log(hi * T));
            value = hi * (hi * theta + spread) / (hi * (theta + R * T) + spread) + 1.0 / T;
            break;
        }
        case CutoffRegime::LongTrapping:
            value = (1.0 + hi * theta) / T;
            break;
        case CutoffRegime::MultiExperiment:
            value = (R + hi * theta) / (R * T);
            break;
        case CutoffRegime::Auto:
            break;
    }
    out.min_rate_eff = std::max(value, std::max(lo, 1.0 / T));
    return out;
}

HoogeEstimate hooge_alpha_predicted(double trap_rate, double max_rate) {
    if (!(trap_rate > 0.0) || !(max_rate > 0.0)) throw std::invalid_argument("hooge_alpha_predicted: rates must be positive");
    HoogeEstimate out{};
    out.alpha = trap_rate / max_rate;
    out.source = HoogeSource::PredictedFromRates;
    return out;
}

HoogeEstimate hooge_alpha_predicted(const TrappingModel& trapping, const RateModel& rates) {
    auto out = hooge_alpha_predicted(trapping.rate(), rates.max_rate());
    if (rates.min_rate() > 0.0) {
        const double ratio = detrap_mean(rates) / trapping.mean_time();
        if (ratio > 0.1) {
            out.regime_ok = false;
            out.note = "trapping times are not long compared with detrapping times (<tau>/<theta> = " +
                       std::to_string(ratio) + ")";
        }
    } else {
        out.note = "<tau> undefined for min_rate = 0; slow-trapping assumption not checked";
    }
    return out;
}

double hooge_alpha_full(double nu, double mean_trap_time, double max_rate) {
    return 1.0 / (nu * mean_trap_time * mean_trap_time * max_rate);
}

PowerLawFit fit_power_law(const SpectrumEstimate& est, FrequencyWindow window) {
    std::vector<double> x, y;
    for (std::size_t i = 0; i < est.freqs.size(); ++i) {
        if (window.contains(est.freqs[i]) && est.values[i] > 0.0) {
            x.push_back(std::log10(est.freqs[i]));
            y.push_back(std::log10(est.values[i]));
        }
    }
    if (x.size() < 2) throw std::invalid_argument("fit_power_law: fewer than two points in the window");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_power_law: degenerate frequency window");
    PowerLawFit fit{sxy / sxx, 0.0, 0.0, x.size()};
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / n);
    return fit;
}

HoogeEstimate hooge_alpha_fitted(const SpectrumEstimate& est, double mean_current, double carriers,
                                 FrequencyWindow window) {
    if (!(mean_current > 0.0)) throw std::invalid_argument("hooge_alpha_fitted: mean current must be positive");
    const double current_sq = mean_current * mean_current;
    double log_sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < est.freqs.size(); ++i) {
        if (!window.contains(est.freqs[i]) || !(est.values[i] > 0.0)) continue;
        log_sum += std::log(est.freqs[i] * est.values[i] / current_sq);
        ++count;
    }
    if (count == 0) throw std::invalid_argument("hooge_alpha_fitted: window holds no spectrum points");

    HoogeEstimate out{};
    out.source = HoogeSource::FittedFromSpectrum;
    out.alpha = carriers * std::exp(log_sum / static_cast<double>(count));
    out.window = window;
    out.points = count;
    if (count >= 2) {
        const auto fit = fit_power_law(est, window);
        out.slope = fit.slope;
        out.slope_deviation = std::abs(fit.slope + 1.0);
        if (out.slope_deviation > 0.2) {
            out.regime_ok = false;
            out.note = "not in 1/f regime: fitted slope " + std::to_string(fit.slope);
        }
    }
    return out;
}

KneeFit fit_knee(const SpectrumEstimate& est, FrequencyWindow window) {
    std::vector<double> lf, ls;
    for (std::size_t i = 0; i < est.freqs.size(); ++i) {
        if (window.contains(est.freqs[i]) && est.values[i] > 0.0) {
            lf.push_back(std::log(est.freqs[i]));
            ls.push_back(std::log(est.values[i]));
        }
    }
    if (lf.size() < 3) throw std::invalid_argument("fit_knee: fewer than three points in the window");

    constexpr int kSteps = 2000;
    const double lo = lf.front();
    const double hi = lf.back();
    KneeFit best{0.0, 0.0, std::numeric_limits<double>::infinity()};
    for (int s = 0; s <= kSteps; ++s) {
        const double lk = lo + (hi - lo) * s / kSteps;
        double c = 0.0;
        for (std::size_t i = 0; i < lf.size(); ++i) c += ls[i] + std::max(lf[i], lk);
        c /= static_cast<double>(lf.size());
        double ss = 0.0;
        for (std::size_t i = 0; i < lf.size(); ++i) {
            const double r = ls[i] - (c - std::max(lf[i], lk));
            ss += r * r;
        }
        const double rms = std::sqrt(ss / static_cast<double>(lf.size()));
        if (rms < best.rms_residual) best = {std::exp(lk), std::exp(c - lk), rms};
    }
    return best;
}

void MaterialParams::validate() const {
    for (double v : {charge, drift_speed, thermal_speed, length, cross_section, carrier_density, trap_density,
                     capture_section}) {
        if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("material parameters must be positive");
    }
}

double pulse_height_from_material(const MaterialParams& m) {
    m.validate();
    return m.charge * m.drift_speed / m.length;
}

double trapping_rate_from_material(const MaterialParams& m) {
    m.validate();
    return m.capture_section * m.thermal_speed * m.trap_density;
}

double carrier_count_from_material(const MaterialParams& m) {
    m.validate();
    return m.carrier_density * m.length * m.cross_section;
}

double mean_current_from_material(const MaterialParams& m, double nu, double mean_trap_time) {
    m.validate();
    const double drift_velocity = nu * mean_trap_time * m.drift_speed;
    return m.cross_section * m.carrier_density * m.charge * drift_velocity;
}

}  // namespace flicker
