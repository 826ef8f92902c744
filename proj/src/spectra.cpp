#include "flicker/spectra.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <set>
#include <stdexcept>

#include "flicker/summation.hpp"

namespace flicker {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// fftw planning is not thread-safe; execution is.
std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(double* p) const { fftw_free(p); }
};

// exp(-2 pi i x) with x reduced to its fractional part first, which keeps
// the phase accurate for f * t far beyond 2 pi.
inline void unit_phasor(double x, double& re, double& im) {
    x -= std::nearbyint(x);
    double s, c;
    ::sincos(kTwoPi * x, &s, &c);
    re = c;
    im = -s;
}

std::vector<PulseInterval> collect_pulses(std::span<const CarrierPath> paths) {
    std::vector<PulseInterval> all;
    for (const auto& p : paths) {
        auto ps = p.pulses();
        all.insert(all.end(), ps.begin(), ps.end());
    }
    return all;
}

void check_grid(std::span<const double> freqs) {
    for (std::size_t i = 0; i < freqs.size(); ++i) {
        if (!(freqs[i] > 0.0) || !std::isfinite(freqs[i])) throw std::invalid_argument("frequencies must be positive");
        if (i > 0 && !(freqs[i] > freqs[i - 1])) throw std::invalid_argument("frequencies must be strictly increasing");
    }
}

}  // namespace

std::string to_string(Estimator e) { return e == Estimator::EventExact ? "event_exact" : "sampled_fft"; }

Estimator estimator_from_string(const std::string& name) {
    if (name == "event_exact") return Estimator::EventExact;
    if (name == "sampled_fft") return Estimator::SampledFft;
    throw std::invalid_argument("unknown estimator '" + name + "'");
}

std::vector<double> natural_log_grid(double horizon, double f_min, double f_max, double points_per_decade) {
    if (!(horizon > 0.0) || !(f_min > 0.0) || !(f_max >= f_min) || !(points_per_decade > 0.0)) {
        throw std::invalid_argument("natural_log_grid: invalid arguments");
    }
    const double k_min = std::max(1.0, std::ceil(f_min * horizon - 1e-9));
    const double k_max = std::floor(f_max * horizon + 1e-9);
    std::set<double> ks;
    if (k_max < k_min) return {};
    const double decades = std::log10(k_max / k_min);
    const auto steps = static_cast<std::size_t>(std::ceil(decades * points_per_decade));
    for (std::size_t i = 0; i <= steps; ++i) {
        const double frac = steps == 0 ? 0.0 : static_cast<double>(i) / static_cast<double>(steps);
        const double k = std::round(k_min * std::pow(k_max / k_min, frac));
        ks.insert(std::clamp(k, k_min, k_max));
    }
    std::vector<double> out;
    out.reserve(ks.size());
    for (double k : ks) out.push_back(k / horizon);
    return out;
}

std::vector<double> natural_linear_grid(double horizon, double f_min, double f_max) {
    if (!(horizon > 0.0) || !(f_min > 0.0) || !(f_max >= f_min)) throw std::invalid_argument("natural_linear_grid");
    const double k_min = std::max(1.0, std::ceil(f_min * horizon - 1e-9));
    const double k_max = std::floor(f_max * horizon + 1e-9);
    std::vector<double> out;
    for (double k = k_min; k <= k_max; k += 1.0) out.push_back(k / horizon);
    return out;
}

SpectrumEstimate periodogram_event_exact(const CarrierPath& path, double amplitude, std::span<const double> freqs) {
    return periodogram_event_exact(std::span<const CarrierPath>(&path, 1), amplitude, freqs);
}

SpectrumEstimate periodogram_event_exact(std::span<const CarrierPath> paths, double amplitude,
                                         std::span<const double> freqs) {
    if (paths.empty()) throw std::invalid_argument("periodogram_event_exact: no paths");
    check_grid(freqs);
    const double horizon = paths.front().horizon();
    const auto pulses = collect_pulses(paths);

    SpectrumEstimate out;
    out.estimator = Estimator::EventExact;
    out.freqs.assign(freqs.begin(), freqs.end());
    out.values.resize(freqs.size());
    for (std::size_t i = 0; i < freqs.size(); ++i) {
        const double f = freqs[i];
        CompensatedSum re, im;
        for (const auto& p : pulses) {
            double rs, is, re_e, im_e;
            unit_phasor(f * p.start, rs, is);
            unit_phasor(f * p.end, re_e, im_e);
            re.add(rs - re_e);
            im.add(is - im_e);
        }
        // |a * sum / (2 pi i f)|^2 scaled by 2 / T.
        const double omega = kTwoPi * f;
        const double r = re.value();
        const double m = im.value();
        out.values[i] = 2.0 / horizon * amplitude * amplitude * (r * r + m * m) / (omega * omega);
    }
    return out;
}

namespace {

// Shared body of the sampled periodograms; `fill` writes the n samples.
template <class Fill>
SpectrumEstimate fft_periodogram(std::size_t n, double sample_interval, Fill fill) {
    if (n < 2) throw std::invalid_argument("periodogram_fft: need at least two samples");
    if (!(sample_interval > 0.0)) throw std::invalid_argument("periodogram_fft: sample interval must be positive");

    const std::size_t bins = n / 2 + 1;
    std::unique_ptr<double, FftwFree> buffer(static_cast<double*>(fftw_malloc(sizeof(double) * 2 * bins)));
    if (!buffer) throw std::bad_alloc();
    fftw_plan plan;
    {
        std::lock_guard lock(fftw_planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), buffer.get(), reinterpret_cast<fftw_complex*>(buffer.get()),
                                    FFTW_ESTIMATE);
    }
    if (!plan) throw std::runtime_error("periodogram_fft: fftw planning failed");
    fill(buffer.get());
    fftw_execute(plan);
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }

    const auto* spec = reinterpret_cast<const fftw_complex*>(buffer.get());
    const double duration = static_cast<double>(n) * sample_interval;
    const double scale = 2.0 / duration * sample_interval * sample_interval;
    SpectrumEstimate out;
    out.estimator = Estimator::SampledFft;
    out.freqs.resize(n / 2);
    out.values.resize(n / 2);
    for (std::size_t k = 1; k <= n / 2; ++k) {
        const double re = spec[k][0];
        const double im = spec[k][1];
        out.freqs[k - 1] = static_cast<double>(k) / duration;
        out.values[k - 1] = scale * (re * re + im * im);
    }
    return out;
}

}  // namespace

SpectrumEstimate periodogram_fft(const SampledSignal& signal) {
    if (signal.counts.empty()) throw std::invalid_argument("periodogram_fft: empty signal");
    return fft_periodogram(signal.size(), signal.sample_interval, [&signal](double* dst) {
        for (std::size_t k = 0; k < signal.size(); ++k) dst[k] = signal.value(k);
    });
}

SpectrumEstimate periodogram_fft(std::span<const double> values, double sample_interval) {
    return fft_periodogram(values.size(), sample_interval,
                           [values](double* dst) { std::copy(values.begin(), values.end(), dst); });
}

SpectrumEstimate average_spectra(std::span<const SpectrumEstimate> estimates) {
    if (estimates.empty()) throw std::invalid_argument("average_spectra: nothing to average");
    const auto& first = estimates.front();
    SpectrumEstimate out;
    out.freqs = first.freqs;
    out.estimator = first.estimator;
    out.config = first.config;
    out.values.assign(first.values.size(), 0.0);
    std::size_t total = 0;
    for (const auto& e : estimates) {
        if (e.freqs != first.freqs || e.values.size() != first.values.size()) {
            throw std::invalid_argument("average_spectra: frequency grids differ");
        }
        total += e.realizations;
    }
    // Fixed index order keeps the reduction bitwise reproducible.
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        double acc = 0.0;
        for (const auto& e : estimates) acc += static_cast<double>(e.realizations) * e.values[i];
        out.values[i] = acc / static_cast<double>(total);
    }
    out.realizations = total;
    return out;
}

SpectrumEstimate logbin_spectrum(const SpectrumEstimate& est, double bins_per_decade) {
    if (!(bins_per_decade >= 1.0)) throw std::invalid_argument("logbin_spectrum: bins_per_decade must be >= 1");
    SpectrumEstimate out;
    out.realizations = est.realizations;
    out.estimator = est.estimator;
    out.config = est.config;
    std::size_t i = 0;
    while (i < est.freqs.size()) {
        const double bin = std::floor(std::log10(est.freqs[i]) * bins_per_decade);
        double log_f = 0.0;
        double s = 0.0;
        std::size_t count = 0;
        while (i < est.freqs.size() && std::floor(std::log10(est.freqs[i]) * bins_per_decade) == bin) {
            log_f += std::log(est.freqs[i]);
            s += est.values[i];
            ++count;
            ++i;
        }
        out.freqs.push_back(count == 1 ? est.freqs[i - 1] : std::exp(log_f / static_cast<double>(count)));
        out.values.push_back(s / static_cast<double>(count));
    }
    // Rounding in the geometric mean must not break the strict ordering.
    for (std::size_t k = 1; k < out.freqs.size(); ++k) {
        if (!(out.freqs[k] > out.freqs[k - 1])) out.freqs[k] = std::nextafter(out.freqs[k - 1], INFINITY);
    }
    return out;
}

SpectrumEstimate restrict_to(const SpectrumEstimate& est, double lo, double hi) {
    SpectrumEstimate out;
    out.realizations = est.realizations;
    out.estimator = est.estimator;
    out.config = est.config;
    for (std::size_t i = 0; i < est.freqs.size(); ++i) {
        if (est.freqs[i] >= lo && est.freqs[i] <= hi) {
            out.freqs.push_back(est.freqs[i]);
            out.values.push_back(est.values[i]);
        }
    }
    return out;
}

}  // namespace flicker
