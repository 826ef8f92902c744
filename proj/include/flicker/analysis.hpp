#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "flicker/charfn.hpp"
#include "flicker/sim.hpp"
#include "flicker/spectra.hpp"

namespace flicker {

/// Expected smallest of K uniform draws on [min_rate, max_rate].
double expected_min_rate(double min_rate, double max_rate, double pulse_count);

enum class CutoffRegime { Auto, ErgodicExact, BroadRange, Nonergodic, LongTrapping, MultiExperiment };

std::string to_string(CutoffRegime r);
CutoffRegime cutoff_regime_from_string(const std::string& name);

struct CutoffPrediction {
    double min_rate_eff;
    CutoffRegime regime;  ///< never Auto
    double min_rate;
    double max_rate;
    double mean_trap_time;
    std::optional<double> mean_detrap_time;
    double horizon;
    std::size_t realizations;
};

/// Effective low-frequency cutoff rate of a finite experiment. Auto picks
/// ErgodicExact when min_rate * T > 1 and Nonergodic otherwise. The result
/// never drops below max(min_rate, 1 / T).
CutoffPrediction effective_cutoff(const SimConfig& config, CutoffRegime regime = CutoffRegime::Auto);

enum class HoogeSource { PredictedFromRates, FittedFromSpectrum };

struct HoogeEstimate {
    double alpha;
    HoogeSource source;
    std::optional<FrequencyWindow> window;
    double slope = -1.0;           ///< free-slope fit over the window (fitted only)
    double slope_deviation = 0.0;  ///< |slope + 1|
    std::size_t points = 0;
    bool regime_ok = true;  ///< false: slow-trapping assumption or 1/f regime check failed
    std::string note;
};

/// alpha_H = trap_rate / max_rate.
HoogeEstimate hooge_alpha_predicted(double trap_rate, double max_rate);

/// Same, flagging regime_ok = false when <theta> >> <tau> does not hold
/// (<tau> / <theta> > 0.1) for the given laws.
HoogeEstimate hooge_alpha_predicted(const TrappingModel& trapping, const RateModel& rates);

/// 1 / (nu <theta>^2 max_rate), the form before the slow-trapping approximation.
double hooge_alpha_full(double nu, double mean_trap_time, double max_rate);

/// Solves S = I^2 alpha / (N f) for alpha with the slope pinned to -1:
/// alpha = N * geometric mean over the window of f S / I^2. Throws when the
/// window holds no points; sets regime_ok = false when the free-slope fit
/// deviates from -1 by more than 0.2.
HoogeEstimate hooge_alpha_fitted(const SpectrumEstimate& est, double mean_current, double carriers,
                                 FrequencyWindow window);

struct PowerLawFit {
    double slope;
    double intercept;  ///< log10 S at log10 f = 0
    double rms_residual;
    std::size_t points;
};

/// Least squares of log10 S against log10 f over the window.
PowerLawFit fit_power_law(const SpectrumEstimate& est, FrequencyWindow window);

struct KneeFit {
    double knee;   ///< frequency where the flat part meets the 1/f part
    double level;  ///< plateau value
    double rms_residual;
};

/// Fits log S = c - log max(f, knee) over the window (flat, then slope -1).
KneeFit fit_knee(const SpectrumEstimate& est, FrequencyWindow window);

struct MaterialParams {
    double charge;            ///< q
    double drift_speed;       ///< v_c, free drift speed between trappings
    double thermal_speed;     ///< v_t
    double length;            ///< L
    double cross_section;     ///< sigma_M
    double carrier_density;   ///< n
    double trap_density;      ///< n_c
    double capture_section;   ///< sigma_c

    void validate() const;
};

/// a = q v_c / L.
double pulse_height_from_material(const MaterialParams& m);
/// gamma_theta = sigma_c v_t n_c.
double trapping_rate_from_material(const MaterialParams& m);
/// N = n L sigma_M.
double carrier_count_from_material(const MaterialParams& m);
/// I = sigma_M n q v_d with v_d = nu <theta> v_c.
double mean_current_from_material(const MaterialParams& m, double nu, double mean_trap_time);

}  // namespace flicker
