#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "flicker/sim.hpp"
#include "flicker/spectra.hpp"

namespace flicker {

using Json = nlohmann::ordered_json;

/// Shortest text that is never less precise than 17 significant digits.
std::string format_double(double v);

Json to_json(const RateModel& m);
RateModel rate_model_from_json(const Json& j);
Json to_json(const SimConfig& c);
SimConfig sim_config_from_json(const Json& j);

/// Columns f,S,R_eff,estimator; floats printed with 17 significant digits.
void write_spectrum_csv(std::ostream& os, const SpectrumEstimate& est);

/// Header row of the event export.
void write_events_header(std::ostream& os);
/// One row per segment: realization,carrier,kind,duration.
void write_events_csv(std::ostream& os, std::size_t realization, std::size_t carrier, const CarrierPath& path);

/// First line "# dt=...,N=...,a=...,T=...,seed=...", then t,value rows.
void write_sampled_csv(std::ostream& os, const SampledSignal& signal, std::uint64_t seed);

/// Binary layout, little-endian: "FLKS" magic, u32 version (1), f64 dt,
/// u64 N, f64 a, f64 T, u64 seed, u64 length, then length u32 counts.
void write_sampled_binary(std::ostream& os, const SampledSignal& signal, std::uint64_t seed);
SampledSignal read_sampled_binary(std::istream& is, std::uint64_t* seed = nullptr);

/// Writes `text` to `path`, throwing std::runtime_error on failure.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace flicker
