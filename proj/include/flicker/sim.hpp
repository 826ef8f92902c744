#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "flicker/dist.hpp"
#include "flicker/random.hpp"

namespace flicker {

enum class CarrierState { Trapped, Free };
enum class SegmentKind { Gap, Pulse };

struct Segment {
    SegmentKind kind;
    double duration;
};

/// Half-open interval [start, end) during which a carrier is free.
struct PulseInterval {
    double start;
    double end;
};

/// One carrier's alternating gap/pulse history on [0, horizon].
///
/// Only durations are stored; segment kinds alternate from the start state
/// and event times are rebuilt by compensated prefix sums on demand.
class CarrierPath {
public:
    CarrierPath(CarrierState start, std::vector<double> durations, double horizon);

    CarrierState start_state() const { return start_; }
    double horizon() const { return horizon_; }
    std::size_t size() const { return durations_.size(); }
    Segment segment(std::size_t i) const;
    std::span<const double> durations() const { return durations_; }

    /// Number of pulses K (pulses clipped at the horizon included).
    std::size_t pulse_count() const;
    /// Total time spent free within [0, horizon].
    double free_time() const;
    /// Pulse intervals in time order.
    std::vector<PulseInterval> pulses() const;
    /// Detrapping event times t_i, i.e. the pulse start times.
    std::vector<double> detrap_times() const;

private:
    bool is_pulse(std::size_t i) const { return (i % 2 == 0) == (start_ == CarrierState::Free); }

    CarrierState start_;
    std::vector<double> durations_;
    double horizon_;
};

struct SimConfig {
    RateModel rates;
    TrappingModel trapping;
    double amplitude = 1.0;
    double horizon = 1.0;
    std::size_t carriers = 1;
    std::size_t realizations = 1;
    std::optional<double> sample_interval = std::nullopt;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument when an invariant is violated.
    void validate() const;
};

/// Alternating gap/pulse draws starting Trapped at t = 0, truncated at the
/// horizon. Every capture draws a fresh trap rate. An infinite gap (zero
/// rate) closes the path.
CarrierPath simulate_carrier(const SimConfig& config, RandomStream& stream);

/// Stream for (realization, carrier) derived from config.seed.
RandomStream carrier_stream(const SimConfig& config, std::size_t realization, std::size_t carrier);

/// All carriers of one realization, each on its own sub-stream.
std::vector<CarrierPath> simulate_realization(const SimConfig& config, std::size_t realization);

/// K / T.
double empirical_nu(const CarrierPath& path);

/// Sum of `amplitude` over free carriers at instants k * sample_interval.
struct SampledSignal {
    double sample_interval = 1.0;
    double amplitude = 1.0;
    std::size_t carriers = 1;
    double horizon = 0.0;
    std::vector<std::uint32_t> counts;

    std::size_t size() const { return counts.size(); }
    double value(std::size_t k) const { return amplitude * counts[k]; }
    std::vector<double> values() const;
    /// Length times sample interval.
    double duration() const { return static_cast<double>(counts.size()) * sample_interval; }
    double mean() const;
};

/// Samples the superposition of `paths` at k * sample_interval,
/// k = 0 .. floor(T / sample_interval) - 1. All paths must share a horizon.
SampledSignal superpose(std::span<const CarrierPath> paths, double amplitude, double sample_interval);

/// Normalized histogram of the free-carrier count over {0 .. N}.
std::vector<double> amplitude_pmf(const SampledSignal& signal);

/// Binomial(n, p) probability mass function.
std::vector<double> binomial_pmf(std::size_t n, double p);

struct BinomialPrediction {
    double p_free;
    bool from_rates;  ///< false when p_free was estimated from the signal mean
    std::vector<double> pmf;
};

/// Binomial(N, p_F) with p_F from the rate laws when <tau> exists,
/// otherwise from mean(values) / (a N).
BinomialPrediction predict_amplitude_pmf(const SampledSignal& signal, const SimConfig& config);

/// Maximum-likelihood Binomial success probability, mean count / N.
double fit_binomial_p(const SampledSignal& signal);

}  // namespace flicker
