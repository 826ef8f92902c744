#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flicker/sim.hpp"

namespace flicker {

enum class Estimator { EventExact, SampledFft };

std::string to_string(Estimator e);
Estimator estimator_from_string(const std::string& name);

/// One-sided PSD on a strictly increasing, positive frequency grid.
struct SpectrumEstimate {
    std::vector<double> freqs;
    std::vector<double> values;
    std::size_t realizations = 1;
    Estimator estimator = Estimator::EventExact;
    std::optional<SimConfig> config;
};

/// Log-spaced grid on [f_min, f_max] snapped to the natural frequencies k / T
/// of an observation of length `horizon`. Duplicates from the snapping are
/// dropped, so the low end thins out to consecutive k.
std::vector<double> natural_log_grid(double horizon, double f_min, double f_max, double points_per_decade);

/// All natural frequencies k / T with f_min <= k / T <= f_max.
std::vector<double> natural_linear_grid(double horizon, double f_min, double f_max);

/// Exact periodogram (2 / T) |integral of the pulse train times exp(-2 pi i f t)|^2
/// of a piecewise-constant signal. With several paths the superposed signal
/// is transformed. Works on any positive grid; on natural frequencies the
/// signal mean does not leak into the estimate.
SpectrumEstimate periodogram_event_exact(const CarrierPath& path, double amplitude, std::span<const double> freqs);
SpectrumEstimate periodogram_event_exact(std::span<const CarrierPath> paths, double amplitude,
                                         std::span<const double> freqs);

/// Rectangular-window periodogram on k / (L dt), k = 1 .. floor(L / 2),
/// scaled to the event-exact convention.
SpectrumEstimate periodogram_fft(const SampledSignal& signal);
SpectrumEstimate periodogram_fft(std::span<const double> values, double sample_interval);

/// Pointwise mean weighted by each input's realization count. Inputs must
/// share the frequency grid exactly.
SpectrumEstimate average_spectra(std::span<const SpectrumEstimate> estimates);

/// Groups points into logarithmic bins aligned to decades; each bin reports
/// the geometric-mean frequency and the arithmetic-mean PSD.
SpectrumEstimate logbin_spectrum(const SpectrumEstimate& est, double bins_per_decade);

/// Restriction of `est` to lo <= f <= hi.
SpectrumEstimate restrict_to(const SpectrumEstimate& est, double lo, double hi);

}  // namespace flicker
