#include "flicker/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "flicker/summation.hpp"

namespace flicker {

CarrierPath::CarrierPath(CarrierState start, std::vector<double> durations, double horizon)
    : start_(start), durations_(std::move(durations)), horizon_(horizon) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw std::invalid_argument("path horizon must be positive");
    for (double d : durations_) {
        if (!(d > 0.0) || !std::isfinite(d)) throw std::invalid_argument("segment durations must be positive and finite");
    }
}

Segment CarrierPath::segment(std::size_t i) const {
    return {is_pulse(i) ? SegmentKind::Pulse : SegmentKind::Gap, durations_.at(i)};
}

std::size_t CarrierPath::pulse_count() const {
    const std::size_t n = durations_.size();
    return start_ == CarrierState::Free ? (n + 1) / 2 : n / 2;
}

double CarrierPath::free_time() const {
    CompensatedSum sum;
    for (std::size_t i = is_pulse(0) ? 0 : 1; i < durations_.size(); i += 2) sum.add(durations_[i]);
    return sum.value();
}

std::vector<PulseInterval> CarrierPath::pulses() const {
    std::vector<PulseInterval> out;
    out.reserve(pulse_count());
    CompensatedSum clock;
    for (std::size_t i = 0; i < durations_.size(); ++i) {
        const double start = clock.value();
        clock.add(durations_[i]);
        if (is_pulse(i)) out.push_back({start, std::min(clock.value(), horizon_)});
    }
    return out;
}

std::vector<double> CarrierPath::detrap_times() const {
    std::vector<double> out;
    out.reserve(pulse_count());
    for (const auto& p : pulses()) out.push_back(p.start);
    return out;
}

void SimConfig::validate() const {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw std::invalid_argument("horizon T must be positive");
    if (!(amplitude > 0.0) || !std::isfinite(amplitude)) throw std::invalid_argument("amplitude a must be positive");
    if (carriers < 1) throw std::invalid_argument("carrier count N must be >= 1");
    if (realizations < 1) throw std::invalid_argument("realization count R must be >= 1");
    if (sample_interval && !(*sample_interval > 0.0)) throw std::invalid_argument("sample interval must be positive");
}

CarrierPath simulate_carrier(const SimConfig& config, RandomStream& stream) {
    const double horizon = config.horizon;
    std::vector<double> durations;
    CompensatedSum clock;
    bool trapped = true;
    for (;;) {
        const double d =
            trapped ? sample_detrap_time(config.rates, stream) : sample_trap_time(config.trapping, stream);
        const double now = clock.value();
        if (now + d >= horizon) {
            const double rest = horizon - now;
            if (rest > 0.0) durations.push_back(rest);
            break;
        }
        durations.push_back(d);
        clock.add(d);
        trapped = !trapped;
    }
    return CarrierPath(CarrierState::Trapped, std::move(durations), horizon);
}

RandomStream carrier_stream(const SimConfig& config, std::size_t realization, std::size_t carrier) {
    return RandomStream(config.seed, realization, carrier);
}

std::vector<CarrierPath> simulate_realization(const SimConfig& config, std::size_t realization) {
    std::vector<CarrierPath> paths;
    paths.reserve(config.carriers);
    for (std::size_t c = 0; c < config.carriers; ++c) {
        auto stream = carrier_stream(config, realization, c);
        paths.push_back(simulate_carrier(config, stream));
    }
    return paths;
}

double empirical_nu(const CarrierPath& path) { return static_cast<double>(path.pulse_count()) / path.horizon(); }

std::vector<double> SampledSignal::values() const {
    std::vector<double> out(counts.size());
    std::transform(counts.begin(), counts.end(), out.begin(), [this](std::uint32_t c) { return amplitude * c; });
    return out;
}

double SampledSignal::mean() const {
    if (counts.empty()) return 0.0;
    const auto total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    return amplitude * static_cast<double>(total) / static_cast<double>(counts.size());
}

namespace {

// First sample index k with k * dt >= t, clamped to [0, length].
std::size_t first_sample_at_or_after(double t, double dt, std::size_t length) {
    if (t <= 0.0) return 0;
    double guess = std::ceil(t / dt);
    if (guess >= static_cast<double>(length)) return length;
    auto k = static_cast<std::size_t>(guess);
    while (k > 0 && static_cast<double>(k - 1) * dt >= t) --k;
    while (k < length && static_cast<double>(k) * dt < t) ++k;
    return k;
}

}  // namespace

SampledSignal superpose(std::span<const CarrierPath> paths, double amplitude, double sample_interval) {
    if (paths.empty()) throw std::invalid_argument("superpose: no paths");
    if (!(sample_interval > 0.0)) throw std::invalid_argument("superpose: sample interval must be positive");
    const double horizon = paths.front().horizon();
    for (const auto& p : paths) {
        if (p.horizon() != horizon) throw std::invalid_argument("superpose: paths have mismatched horizons");
    }
    // floor(T / dt), tolerant of T / dt landing a rounding error below an integer.
    const double ratio = horizon / sample_interval;
    const double nearest = std::round(ratio);
    const auto length =
        static_cast<std::size_t>(std::abs(ratio - nearest) <= 1e-9 * nearest ? nearest : std::floor(ratio));

    SampledSignal out{sample_interval, amplitude, paths.size(), horizon, {}};
    // Difference array in modular unsigned arithmetic; the prefix sums are the counts.
    out.counts.assign(length + 1, 0u);
    for (const auto& path : paths) {
        for (const auto& pulse : path.pulses()) {
            const std::size_t k0 = first_sample_at_or_after(pulse.start, sample_interval, length);
            const std::size_t k1 = first_sample_at_or_after(pulse.end, sample_interval, length);
            if (k0 >= k1) continue;
            out.counts[k0] += 1u;
            out.counts[k1] -= 1u;
        }
    }
    std::uint32_t running = 0;
    for (std::size_t k = 0; k < length; ++k) {
        running += out.counts[k];
        out.counts[k] = running;
    }
    out.counts.pop_back();
    return out;
}

std::vector<double> amplitude_pmf(const SampledSignal& signal) {
    if (signal.counts.empty()) throw std::invalid_argument("amplitude_pmf: empty signal");
    std::vector<std::uint64_t> hist(signal.carriers + 1, 0);
    for (auto c : signal.counts) ++hist.at(c);
    std::vector<double> pmf(hist.size());
    const double n = static_cast<double>(signal.counts.size());
    std::transform(hist.begin(), hist.end(), pmf.begin(), [n](std::uint64_t h) { return static_cast<double>(h) / n; });
    return pmf;
}

std::vector<double> binomial_pmf(std::size_t n, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial_pmf: p outside [0, 1]");
    std::vector<double> pmf(n + 1, 0.0);
    if (p == 0.0 || p == 1.0) {
        pmf[p == 0.0 ? 0 : n] = 1.0;
        return pmf;
    }
    const double dn = static_cast<double>(n);
    const double log_p = std::log(p);
    const double log_q = std::log1p(-p);
    for (std::size_t k = 0; k <= n; ++k) {
        const double dk = static_cast<double>(k);
        pmf[k] = std::exp(std::lgamma(dn + 1.0) - std::lgamma(dk + 1.0) - std::lgamma(dn - dk + 1.0) + dk * log_p +
                          (dn - dk) * log_q);
    }
    return pmf;
}

double fit_binomial_p(const SampledSignal& signal) {
    if (signal.counts.empty()) throw std::invalid_argument("fit_binomial_p: empty signal");
    const auto total = std::accumulate(signal.counts.begin(), signal.counts.end(), std::uint64_t{0});
    return static_cast<double>(total) / (static_cast<double>(signal.counts.size()) * static_cast<double>(signal.carriers));
}

BinomialPrediction predict_amplitude_pmf(const SampledSignal& signal, const SimConfig& config) {
    BinomialPrediction out{};
    if (config.rates.min_rate() > 0.0) {
        out.p_free = free_probability(config.rates, config.trapping);
        out.from_rates = true;
    } else {
        out.p_free = fit_binomial_p(signal);
        out.from_rates = false;
    }
    out.pmf = binomial_pmf(signal.carriers, out.p_free);
    return out;
}

}  // namespace flicker
