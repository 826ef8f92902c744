#include "flicker/charfn.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

namespace flicker {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

// log(1 + z) without losing the small-|z| digits.
Complex log1p(Complex z) {
    const double x = z.real();
    const double y = z.imag();
    return {0.5 * std::log1p(2.0 * x + x * x + y * y), std::atan2(y, 1.0 + x)};
}

void require_positive_frequency(double f) {
    if (!(f > 0.0) || !std::isfinite(f)) throw std::domain_error("PSD needs a positive finite frequency");
}

}  // namespace

Complex chi_exponential(double f, double rate) { return rate / Complex(rate, -kTwoPi * f); }

Complex chi_uniform_rate(double f, double min_rate, double max_rate) {
    if (f == 0.0) return 1.0;
    if (f < 0.0) return std::conj(chi_uniform_rate(-f, min_rate, max_rate));
    const double width = max_rate - min_rate;
    if (width == 0.0) return chi_exponential(f, min_rate);
    const double omega = kTwoPi * f;
    // ln((max - i w) / (min - i w)) = ln(1 + width / (min - i w)); both factors sit in
    // the closed lower half-plane so the principal branch is continuous in f.
    const Complex log_ratio = log1p(width / Complex(min_rate, -omega));
    assert(std::abs(log_ratio.imag()) <= kHalfPi + 1e-12);
    return 1.0 + Complex(0.0, omega / width) * log_ratio;
}

Complex chi_uniform_rate_approx(double f, double max_rate) {
    if (f == 0.0) return 1.0;
    if (f < 0.0) return std::conj(chi_uniform_rate_approx(-f, max_rate));
    const double x = kTwoPi * f / max_rate;
    return 1.0 - x * Complex(kHalfPi, std::log(x));
}

CharFn CharFn::exponential(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("exponential characteristic function needs rate > 0");
    return CharFn(CharFnKind::ExponentialExact, rate, rate);
}

CharFn CharFn::uniform_rate(double min_rate, double max_rate) {
    if (!(min_rate >= 0.0 && max_rate > 0.0 && min_rate <= max_rate)) {
        throw std::invalid_argument("uniform-rate characteristic function needs 0 <= min_rate <= max_rate, max_rate > 0");
    }
    return CharFn(CharFnKind::UniformRateExact, min_rate, max_rate);
}

CharFn CharFn::uniform_rate_approx(double max_rate) {
    if (!(max_rate > 0.0)) throw std::invalid_argument("approximate characteristic function needs max_rate > 0");
    return CharFn(CharFnKind::UniformRateApprox, 0.0, max_rate);
}

CharFn CharFn::of(const RateModel& model) { return uniform_rate(model.min_rate(), model.max_rate()); }

Complex CharFn::operator()(double f) const {
    switch (kind_) {
        case CharFnKind::ExponentialExact:
            return chi_exponential(f, hi_);
        case CharFnKind::UniformRateExact:
            return chi_uniform_rate(f, lo_, hi_);
        case CharFnKind::UniformRateApprox:
            return chi_uniform_rate_approx(f, hi_);
    }
    return 1.0;
}

std::vector<Complex> CharFn::evaluate(std::span<const double> freqs) const {
    std::vector<Complex> out;
    out.reserve(freqs.size());
    for (double f : freqs) out.push_back((*this)(f));
    return out;
}

double psd_general_pulse(double f, double a, double nu, const CharFn& chi_pulse, const CharFn& chi_gap) {
    require_positive_frequency(f);
    const Complex cp = chi_pulse(f);
    const Complex cg = chi_gap(f);
    const Complex denom = 1.0 - cp * cg;
    if (std::abs(denom) < 1e-14) throw IndeterminateError("psd_general_pulse: 1 - chi_pulse*chi_gap vanishes");
    const double pf = std::numbers::pi * f;
    return a * a * nu / (pf * pf) * (((1.0 - cp) * (1.0 - cg)) / denom).real();
}

double psd_poisson_pulse(double f, double a, double nu, double trap_rate, const CharFn& chi_gap) {
    require_positive_frequency(f);
    const Complex denom = 1.0 - chi_gap(f) - Complex(0.0, kTwoPi * f / trap_rate);
    if (std::abs(denom) < 1e-14) throw IndeterminateError("psd_poisson_pulse: denominator vanishes");
    return 4.0 * a * a * nu / (trap_rate * trap_rate) * (1.0 / denom).real();
}

double psd_full_expression(double f, double a, double nu, double trap_rate, double max_rate) {
    require_positive_frequency(f);
    const double shift = max_rate / trap_rate - std::log(kTwoPi * f / max_rate);
    return a * a * nu * max_rate / (trap_rate * trap_rate * f) / (kHalfPi * kHalfPi + shift * shift);
}

double psd_one_over_f(double f, double a, double nu, double max_rate) {
    require_positive_frequency(f);
    return a * a * nu / (max_rate * f);
}

double psd_multi_carrier(double f, double carriers, double a, double nu, double max_rate) {
    return carriers * psd_one_over_f(f, a, nu, max_rate);
}

double psd_lorentzian(double f, double a, double nu, double trap_rate, double detrap_rate) {
    require_positive_frequency(f);
    const double total = trap_rate + detrap_rate;
    const double omega = kTwoPi * f;
    return 4.0 * a * a * nu / (total * total + omega * omega);
}

FrequencyWindow one_over_f_window(double min_rate, double max_rate) {
    return {min_rate / kTwoPi, max_rate / kTwoPi};
}

double evaluate(const AnalyticPsd& model, double f) {
    return std::visit(
        [f](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, psd::Lorentzian>) {
                return psd_lorentzian(f, m.a, m.nu, m.trap_rate, m.detrap_rate);
            } else if constexpr (std::is_same_v<T, psd::GeneralPulse>) {
                return psd_general_pulse(f, m.a, m.nu, m.chi_pulse, m.chi_gap);
            } else if constexpr (std::is_same_v<T, psd::PoissonPulse>) {
                return psd_poisson_pulse(f, m.a, m.nu, m.trap_rate, m.chi_gap);
            } else if constexpr (std::is_same_v<T, psd::FullExpression>) {
                return psd_full_expression(f, m.a, m.nu, m.trap_rate, m.max_rate);
            } else if constexpr (std::is_same_v<T, psd::OneOverF>) {
                return psd_one_over_f(f, m.a, m.nu, m.max_rate);
            } else {
                return psd_multi_carrier(f, m.carriers, m.a, m.nu, m.max_rate);
            }
        },
        model);
}

std::vector<double> evaluate(const AnalyticPsd& model, std::span<const double> freqs) {
    std::vector<double> out;
    out.reserve(freqs.size());
    for (double f : freqs) out.push_back(evaluate(model, f));
    return out;
}

}  // namespace flicker
