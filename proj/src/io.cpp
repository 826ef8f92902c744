#include "flicker/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace flicker {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json to_json(const RateModel& m) {
    if (const auto* u = std::get_if<UniformRates>(&m.law())) {
        return Json{{"law", "uniform"}, {"min_rate", u->min_rate}, {"max_rate", u->max_rate}};
    }
    const auto& a = std::get<ArrheniusRates>(m.law());
    return Json{{"law", "arrhenius"},
                {"prefactor", a.prefactor},
                {"thermal_energy", a.thermal_energy},
                {"min_energy", a.min_energy},
                {"max_energy", a.max_energy}};
}

RateModel rate_model_from_json(const Json& j) {
    const auto law = j.value("law", std::string("uniform"));
    if (law == "uniform") return RateModel::uniform(j.at("min_rate").get<double>(), j.at("max_rate").get<double>());
    if (law == "arrhenius") {
        return RateModel::arrhenius(j.at("prefactor").get<double>(), j.at("thermal_energy").get<double>(),
                                    j.at("min_energy").get<double>(), j.at("max_energy").get<double>());
    }
    throw std::invalid_argument("unknown rate law '" + law + "'");
}

Json to_json(const SimConfig& c) {
    Json j{{"rates", to_json(c.rates)},
           {"trap_rate", c.trapping.rate()},
           {"amplitude", c.amplitude},
           {"horizon", c.horizon},
           {"carriers", c.carriers},
           {"realizations", c.realizations}};
    j["sample_interval"] = c.sample_interval ? Json(*c.sample_interval) : Json(nullptr);
    j["seed"] = c.seed;
    return j;
}

SimConfig sim_config_from_json(const Json& j) {
    SimConfig c{rate_model_from_json(j.at("rates")), TrappingModel(j.at("trap_rate").get<double>())};
    c.amplitude = j.value("amplitude", 1.0);
    c.horizon = j.at("horizon").get<double>();
    c.carriers = j.value("carriers", std::size_t{1});
    c.realizations = j.value("realizations", std::size_t{1});
    if (j.contains("sample_interval") && !j["sample_interval"].is_null()) {
        c.sample_interval = j["sample_interval"].get<double>();
    }
    c.seed = j.value("seed", std::uint64_t{0});
    c.validate();
    return c;
}

void write_spectrum_csv(std::ostream& os, const SpectrumEstimate& est) {
    os << "f,S,R_eff,estimator\n";
    const auto name = to_string(est.estimator);
    for (std::size_t i = 0; i < est.freqs.size(); ++i) {
        os << format_double(est.freqs[i]) << ',' << format_double(est.values[i]) << ',' << est.realizations << ','
           << name << '\n';
    }
}

void write_events_header(std::ostream& os) { os << "realization,carrier,kind,duration\n"; }

void write_events_csv(std::ostream& os, std::size_t realization, std::size_t carrier, const CarrierPath& path) {
    for (std::size_t i = 0; i < path.size(); ++i) {
        const auto seg = path.segment(i);
        os << realization << ',' << carrier << ',' << (seg.kind == SegmentKind::Gap ? "gap" : "pulse") << ','
           << format_double(seg.duration) << '\n';
    }
}

void write_sampled_csv(std::ostream& os, const SampledSignal& signal, std::uint64_t seed) {
    os << "# dt=" << format_double(signal.sample_interval) << ",N=" << signal.carriers
       << ",a=" << format_double(signal.amplitude) << ",T=" << format_double(signal.horizon) << ",seed=" << seed
       << '\n';
    os << "t,value\n";
    for (std::size_t k = 0; k < signal.size(); ++k) {
        os << format_double(static_cast<double>(k) * signal.sample_interval) << ',' << format_double(signal.value(k))
           << '\n';
    }
}

namespace {

static_assert(std::endian::native == std::endian::little, "binary export assumes a little-endian host");

template <class T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& is) {
    T v{};
    if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw std::runtime_error("truncated sampled-signal file");
    return v;
}

}  // namespace

void write_sampled_binary(std::ostream& os, const SampledSignal& signal, std::uint64_t seed) {
    os.write("FLKS", 4);
    put<std::uint32_t>(os, 1);
    put<double>(os, signal.sample_interval);
    put<std::uint64_t>(os, signal.carriers);
    put<double>(os, signal.amplitude);
    put<double>(os, signal.horizon);
    put<std::uint64_t>(os, seed);
    put<std::uint64_t>(os, signal.size());
    os.write(reinterpret_cast<const char*>(signal.counts.data()),
             static_cast<std::streamsize>(signal.counts.size() * sizeof(std::uint32_t)));
}

SampledSignal read_sampled_binary(std::istream& is, std::uint64_t* seed) {
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, "FLKS", 4) != 0) throw std::runtime_error("not a sampled-signal file");
    if (get<std::uint32_t>(is) != 1) throw std::runtime_error("unsupported sampled-signal version");
    SampledSignal s;
    s.sample_interval = get<double>(is);
    s.carriers = get<std::uint64_t>(is);
    s.amplitude = get<double>(is);
    s.horizon = get<double>(is);
    const auto sd = get<std::uint64_t>(is);
    if (seed) *seed = sd;
    s.counts.resize(get<std::uint64_t>(is));
    if (!is.read(reinterpret_cast<char*>(s.counts.data()),
                 static_cast<std::streamsize>(s.counts.size() * sizeof(std::uint32_t)))) {
        throw std::runtime_error("truncated sampled-signal file");
    }
    return s;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace flicker
