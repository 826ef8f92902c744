#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "flicker/dist.hpp"

namespace flicker {

using Complex = std::complex<double>;

/// chi(f) = rate / (rate - 2 pi i f).
Complex chi_exponential(double f, double rate);

/// Characteristic function of the uniform mixture of exponentials on
/// [min_rate, max_rate]. Exactly 1 at f = 0; min_rate = 0 is allowed.
Complex chi_uniform_rate(double f, double min_rate, double max_rate);

/// Broad-range approximation of chi_uniform_rate, valid for
/// min_rate << 2 pi f << max_rate.
Complex chi_uniform_rate_approx(double f, double max_rate);

enum class CharFnKind { ExponentialExact, UniformRateExact, UniformRateApprox };

/// A characteristic function of a gap or pulse duration law.
class CharFn {
public:
    static CharFn exponential(double rate);
    static CharFn uniform_rate(double min_rate, double max_rate);
    static CharFn uniform_rate_approx(double max_rate);
    /// Exact characteristic function of the detrapping time under `model`.
    static CharFn of(const RateModel& model);

    CharFnKind kind() const { return kind_; }
    Complex operator()(double f) const;
    std::vector<Complex> evaluate(std::span<const double> freqs) const;

private:
    CharFn(CharFnKind kind, double lo, double hi) : kind_(kind), lo_(lo), hi_(hi) {}

    CharFnKind kind_;
    double lo_;
    double hi_;
};

/// Raised when 1 - chi_theta * chi_tau vanishes numerically (f too close to 0).
class IndeterminateError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// One-sided PSD of a renewal train of rectangular pulses of height a that
/// alternates gaps and pulses, with mean pulse rate nu.
double psd_general_pulse(double f, double a, double nu, const CharFn& chi_pulse, const CharFn& chi_gap);

/// psd_general_pulse with exponential pulse durations of rate trap_rate.
double psd_poisson_pulse(double f, double a, double nu, double trap_rate, const CharFn& chi_gap);

/// Poisson trapping combined with the broad-range detrapping approximation.
double psd_full_expression(double f, double a, double nu, double trap_rate, double max_rate);

/// a^2 nu / (max_rate f).
double psd_one_over_f(double f, double a, double nu, double max_rate);

/// N a^2 nu / (max_rate f); nu is the per-carrier pulse rate.
double psd_multi_carrier(double f, double carriers, double a, double nu, double max_rate);

/// 4 a^2 nu / ((trap_rate + detrap_rate)^2 + (2 pi f)^2), the random telegraph spectrum.
double psd_lorentzian(double f, double a, double nu, double trap_rate, double detrap_rate);

struct FrequencyWindow {
    double lo;
    double hi;
    bool contains(double f) const { return f >= lo && f <= hi; }
};

/// Window min_rate / (2 pi) <= f <= max_rate / (2 pi) of the 1/f approximation.
FrequencyWindow one_over_f_window(double min_rate, double max_rate);

namespace psd {

struct Lorentzian {
    double a, nu, trap_rate, detrap_rate;
};
struct GeneralPulse {
    double a, nu;
    CharFn chi_pulse, chi_gap;
};
struct PoissonPulse {
    double a, nu, trap_rate;
    CharFn chi_gap;
};
struct FullExpression {
    double a, nu, trap_rate, max_rate;
    FrequencyWindow validity;
};
struct OneOverF {
    double a, nu, max_rate;
    FrequencyWindow validity;
};
struct MultiCarrier {
    double carriers, a, nu, max_rate;
    FrequencyWindow validity;
};

}  // namespace psd

/// Closed-form PSD model.
using AnalyticPsd =
    std::variant<psd::Lorentzian, psd::GeneralPulse, psd::PoissonPulse, psd::FullExpression, psd::OneOverF, psd::MultiCarrier>;

double evaluate(const AnalyticPsd& model, double f);
std::vector<double> evaluate(const AnalyticPsd& model, std::span<const double> freqs);

}  // namespace flicker
