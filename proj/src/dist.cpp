#include "flicker/dist.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace flicker {
namespace {

// 8-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 4> kGlNodes = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                            0.9602898564975363};
constexpr std::array<double, 4> kGlWeights = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                              0.1012285362903763};

// Below this value of (max - min) * tau the closed forms lose digits to
// cancellation; the rate average is then taken by quadrature instead.
constexpr double kNarrowWidth = 1e-2;

// Mean of g over the rate interval [lo, hi].
template <class F>
double rate_average(double lo, double hi, F g) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double sum = 0.0;
    for (std::size_t i = 0; i < kGlNodes.size(); ++i) {
        sum += kGlWeights[i] * (g(mid - half * kGlNodes[i]) + g(mid + half * kGlNodes[i]));
    }
    return 0.5 * sum;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

RateModel RateModel::uniform(double min_rate, double max_rate) {
    require(std::isfinite(min_rate) && std::isfinite(max_rate), "rate bounds must be finite");
    require(min_rate >= 0.0, "min_rate must be >= 0");
    require(max_rate > 0.0, "max_rate must be > 0");
    require(min_rate <= max_rate, "min_rate must not exceed max_rate");
    return RateModel(UniformRates{min_rate, max_rate}, min_rate, max_rate);
}

RateModel RateModel::arrhenius(double prefactor, double thermal_energy, double min_energy, double max_energy) {
    require(prefactor > 0.0 && std::isfinite(prefactor), "prefactor must be positive");
    require(thermal_energy > 0.0 && std::isfinite(thermal_energy), "thermal energy must be positive");
    require(min_energy >= 0.0, "min_energy must be >= 0");
    require(max_energy >= min_energy && std::isfinite(max_energy), "max_energy must be >= min_energy");
    const double lo = prefactor * std::exp(-max_energy / thermal_energy);
    const double hi = prefactor * std::exp(-min_energy / thermal_energy);
    require(lo > 0.0, "energy window underflows the minimum rate");
    return RateModel(ArrheniusRates{prefactor, thermal_energy, min_energy, max_energy}, lo, hi);
}

TrappingModel::TrappingModel(double rate) : rate_(rate) {
    require(rate > 0.0 && std::isfinite(rate), "trapping rate must be positive and finite");
}

double sample_rate(const RateModel& model, RandomStream& rng) {
    if (const auto* u = std::get_if<UniformRates>(&model.law())) {
        return u->min_rate + rng.uniform() * (u->max_rate - u->min_rate);
    }
    const auto& a = std::get<ArrheniusRates>(model.law());
    // Inverse CDF of the truncated Boltzmann law in energy.
    const double span = (a.max_energy - a.min_energy) / a.thermal_energy;
    const double energy = a.min_energy - a.thermal_energy * std::log1p(rng.uniform() * std::expm1(-span));
    return a.prefactor * std::exp(-energy / a.thermal_energy);
}

double sample_detrap_time(const RateModel& model, RandomStream& rng) {
    const double rate = sample_rate(model, rng);
    if (rate <= 0.0) {
        // Still consume the variate so the stream layout does not depend on the draw.
        rng.uniform_open();
        return std::numeric_limits<double>::infinity();
    }
    return rng.exponential(rate);
}

double sample_trap_time(const TrappingModel& model, RandomStream& rng) { return rng.exponential(model.rate()); }

double detrap_pdf(double tau, const RateModel& model) {
    if (!(tau >= 0.0)) throw std::domain_error("detrap_pdf: tau must be >= 0");
    const double lo = model.min_rate();
    const double hi = model.max_rate();
    const double width = hi - lo;
    if (std::isinf(tau)) return 0.0;
    if (width * tau < kNarrowWidth) {
        return rate_average(lo, hi, [tau](double g) { return g * std::exp(-g * tau); });
    }
    const double a = lo * tau;
    const double d = width * tau;
    const double bracket = (1.0 + a) * -std::expm1(-d) - d * std::exp(-d);
    return std::exp(-a) * bracket / (width * tau * tau);
}

double detrap_survival(double tau, const RateModel& model) {
    if (!(tau >= 0.0)) throw std::domain_error("detrap_survival: tau must be >= 0");
    const double lo = model.min_rate();
    const double width = model.width();
    if (std::isinf(tau)) return 0.0;
    if (width * tau < kNarrowWidth) {
        return rate_average(lo, model.max_rate(), [tau](double g) { return std::exp(-g * tau); });
    }
    const double d = width * tau;
    return std::exp(-lo * tau) * -std::expm1(-d) / d;
}

double detrap_cdf(double tau, const RateModel& model) { return 1.0 - detrap_survival(tau, model); }

double detrap_mean(const RateModel& model) {
    const double lo = model.min_rate();
    if (lo <= 0.0) throw NonergodicError("nonergodic: mean detrapping time undefined for min_rate == 0");
    if (model.degenerate()) return 1.0 / lo;
    const double width = model.width();
    return std::log1p(width / lo) / width;
}

double mean_pulse_rate(const RateModel& rates, const TrappingModel& trapping) {
    return 1.0 / (trapping.mean_time() + detrap_mean(rates));
}

double free_probability(const RateModel& rates, const TrappingModel& trapping) {
    return trapping.mean_time() / (trapping.mean_time() + detrap_mean(rates));
}

}  // namespace flicker
