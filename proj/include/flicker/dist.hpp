#pragma once

#include <stdexcept>
#include <variant>

#include "flicker/random.hpp"

namespace flicker {

/// Detrapping rates drawn uniformly from [min_rate, max_rate].
struct UniformRates {
    double min_rate;
    double max_rate;
};

/// Trap depths follow a Boltzmann law truncated to [min_energy, max_energy];
/// the escape rate of a trap of depth E is prefactor * exp(-E / thermal_energy).
struct ArrheniusRates {
    double prefactor;
    double thermal_energy;
    double min_energy;
    double max_energy;
};

/// Law of the detrapping rate of a freshly captured carrier.
///
/// Either parametrization induces a uniform rate law on [min_rate(), max_rate()].
/// Equal bounds are accepted and describe a single-rate (exponential) trap.
class RateModel {
public:
    using Law = std::variant<UniformRates, ArrheniusRates>;

    static RateModel uniform(double min_rate, double max_rate);
    static RateModel arrhenius(double prefactor, double thermal_energy, double min_energy, double max_energy);

    const Law& law() const { return law_; }
    double min_rate() const { return min_rate_; }
    double max_rate() const { return max_rate_; }
    double width() const { return max_rate_ - min_rate_; }
    bool degenerate() const { return max_rate_ == min_rate_; }

private:
    RateModel(Law law, double min_rate, double max_rate) : law_(law), min_rate_(min_rate), max_rate_(max_rate) {}

    Law law_;
    double min_rate_;
    double max_rate_;
};

/// Poisson trapping of a free carrier.
class TrappingModel {
public:
    explicit TrappingModel(double rate);

    double rate() const { return rate_; }
    double mean_time() const { return 1.0 / rate_; }

private:
    double rate_;
};

/// Raised when a quantity needs a positive minimum detrapping rate.
class NonergodicError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

double sample_rate(const RateModel& model, RandomStream& rng);

/// Two-stage draw: a trap rate, then an exponential escape time at that rate.
/// A zero rate (possible when min_rate() == 0) yields +infinity.
double sample_detrap_time(const RateModel& model, RandomStream& rng);

double sample_trap_time(const TrappingModel& model, RandomStream& rng);

/// Density of the detrapping time, the uniform mixture of exponentials.
/// Finite at tau = 0, where it equals (min_rate + max_rate) / 2.
double detrap_pdf(double tau, const RateModel& model);

/// P(detrapping time > tau).
double detrap_survival(double tau, const RateModel& model);

double detrap_cdf(double tau, const RateModel& model);

/// ln(max/min) / (max - min). Throws NonergodicError when min_rate() == 0.
double detrap_mean(const RateModel& model);

/// Mean pulse rate 1 / (<theta> + <tau>) of a stationary carrier.
double mean_pulse_rate(const RateModel& rates, const TrappingModel& trapping);

/// Stationary probability that a carrier is free, <theta> / (<theta> + <tau>).
double free_probability(const RateModel& rates, const TrappingModel& trapping);

}  // namespace flicker
