#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace flicker {

/// Deterministic random stream built on mt19937_64.
///
/// Sub-streams are keyed by (master seed, realization, carrier) through
/// std::seed_seq, whose mixing algorithm is fixed by the standard, so a
/// given key yields the same sequence on every conforming library and for
/// any worker count. Uniform variates are formed from the top 53 bits of
/// the engine output rather than std::uniform_real_distribution, whose
/// algorithm is implementation-defined.
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    RandomStream(std::uint64_t seed, std::uint64_t realization, std::uint64_t carrier)
        : engine_(make_seq(seed, realization, carrier)) {}

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    /// Uniform on the open interval (0, 1); never returns 0 or 1.
    double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Exponential variate with the given rate; strictly positive and finite.
    double exponential(double rate) { return -std::log(uniform_open()) / rate; }

private:
    static std::mt19937_64 make_seq(std::uint64_t seed, std::uint64_t realization, std::uint64_t carrier) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(realization), static_cast<std::uint32_t>(realization >> 32),
                          static_cast<std::uint32_t>(carrier), static_cast<std::uint32_t>(carrier >> 32)};
        return std::mt19937_64(seq);
    }

    std::mt19937_64 engine_;
};

}  // namespace flicker
