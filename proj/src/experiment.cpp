#include "flicker/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "flicker/parallel.hpp"
#include "flicker/summation.hpp"

namespace flicker {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Detrapping rates of the individual trap curves drawn in figure 2.
constexpr double kFig2Rates[] = {1e-3, 2.78e-3, 7.74e-3, 2.15e-2, 5.99e-2, 1.67e-1, 4.64e-1, 1.29, 3.59, 10.0};

SimConfig base_config(double min_rate, double max_rate, double horizon, std::size_t realizations) {
    SimConfig c{RateModel::uniform(min_rate, max_rate), TrappingModel(1.0)};
    c.amplitude = 1.0;
    c.horizon = horizon;
    c.carriers = 1;
    c.realizations = realizations;
    c.seed = 1;
    return c;
}

ExperimentSpec spectrum_run(std::string name, SimConfig sim) {
    return ExperimentSpec{std::move(name), RunKind::Spectrum, std::move(sim), {}, {}, ".", 1.0};
}

std::string short_exp(double v) {
    std::ostringstream os;
    os << std::log10(v);
    return "1e" + os.str();
}

Json window_json(const std::optional<FrequencyWindow>& w) {
    if (!w) return nullptr;
    return Json::array({w->lo, w->hi});
}

PdfTable detrap_pdf_table(const RateModel& model) {
    PdfTable t;
    const double lo = std::log10(1e-2 / model.max_rate());
    const double hi = model.min_rate() > 0.0 ? std::log10(1e2 / model.min_rate()) : lo + 8.0;
    constexpr double kPerDecade = 20.0;
    const auto steps = static_cast<std::size_t>(std::ceil((hi - lo) * kPerDecade));
    for (std::size_t i = 0; i <= steps; ++i) {
        const double tau = std::pow(10.0, lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps));
        t.taus.push_back(tau);
        t.pdf.push_back(detrap_pdf(tau, model));
    }
    t.component_rates.assign(std::begin(kFig2Rates), std::end(kFig2Rates));
    // Each trap class weighted by its share of a log-spaced rate partition, so
    // the components stay proportional to their contribution to the mixture.
    const double log_step = std::log(kFig2Rates[9] / kFig2Rates[0]) / 9.0;
    const double width = model.width() > 0.0 ? model.width() : 1.0;
    for (double g : t.component_rates) {
        std::vector<double> curve;
        const double weight = g * log_step / width;
        for (double tau : t.taus) curve.push_back(weight * g * std::exp(-g * tau));
        t.components.push_back(std::move(curve));
    }
    return t;
}

}  // namespace

void ExperimentSpec::validate() const {
    if (name.empty()) throw std::invalid_argument("experiment name must be nonempty");
    sim.validate();
    if (kind == RunKind::Spectrum && spectrum.estimator == Estimator::SampledFft && !sim.sample_interval) {
        throw std::invalid_argument("sampled_fft estimator needs sim.sample_interval");
    }
    if (!(spectrum.points_per_decade > 0.0)) throw std::invalid_argument("points_per_decade must be positive");
    if (spectrum.bins_per_decade != 0.0 && spectrum.bins_per_decade < 1.0) {
        throw std::invalid_argument("bins_per_decade must be 0 or >= 1");
    }
    if (!(scale > 0.0)) throw std::invalid_argument("scale must be positive");
}

std::vector<std::string> preset_names() { return {"fig2", "fig3", "fig4", "fig5", "fig6"}; }

ExperimentSpec scaled(ExperimentSpec spec, double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("scale must be positive");
    spec.sim.horizon /= scale;
    spec.sim.realizations = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(static_cast<double>(spec.sim.realizations) / scale)));
    spec.scale *= scale;
    return spec;
}

FigurePreset preset(const std::string& figure, double scale, bool full) {
    FigurePreset fig{figure, {}};
    if (figure == "fig2") {
        auto run = spectrum_run("fig2", base_config(1e-3, 10.0, 1.0, 1));
        run.kind = RunKind::DetrapPdf;
        fig.runs.push_back(run);
        return fig;  // analytic only, nothing to scale
    }
    if (figure == "fig3") {
        auto run = spectrum_run("fig3", base_config(1e-4, 1e4, 1e6, 100));
        fig.runs.push_back(run);
    } else if (figure == "fig4") {
        std::vector<double> horizons{1e4, 1e6};
        if (full) horizons.push_back(1e8);
        for (double T : horizons) {
            auto run = spectrum_run("fig4_T" + short_exp(T), base_config(0.0, 1e3, T, 1));
            run.spectrum.f_max = 1e3;
            run.analyses.regime = CutoffRegime::LongTrapping;
            fig.runs.push_back(run);
        }
    } else if (figure == "fig5") {
        for (std::size_t R : {std::size_t{1}, std::size_t{1000}}) {
            auto run = spectrum_run("fig5_R" + std::to_string(R), base_config(0.0, 1e3, 1e6, R));
            run.spectrum.f_max = 1e3;
            run.analyses.regime = CutoffRegime::MultiExperiment;
            fig.runs.push_back(run);
        }
    } else if (figure == "fig6") {
        auto sim = base_config(0.0, 1e3, std::ldexp(1e-4, 26), 1);
        sim.carriers = 1000;
        sim.sample_interval = 1e-4;
        auto run = spectrum_run("fig6", sim);
        run.spectrum.estimator = Estimator::SampledFft;
        run.spectrum.bins_per_decade = 40.0;
        run.analyses.amplitude_pmf = true;
        run.analyses.regime = CutoffRegime::MultiExperiment;
        fig.runs.push_back(run);
    } else {
        throw std::invalid_argument("unknown preset '" + figure + "' (expected fig2..fig6)");
    }
    if (scale != 1.0) {
        for (auto& r : fig.runs) r = scaled(r, scale);
    }
    return fig;
}

Json to_json(const ExperimentSpec& spec) {
    Json spectrum{{"estimator", to_string(spec.spectrum.estimator)},
                  {"f_min", spec.spectrum.f_min},
                  {"f_max", spec.spectrum.f_max},
                  {"points_per_decade", spec.spectrum.points_per_decade},
                  {"bins_per_decade", spec.spectrum.bins_per_decade}};
    Json analyses{{"cutoff", spec.analyses.cutoff},
                  {"hooge", spec.analyses.hooge},
                  {"amplitude_pmf", spec.analyses.amplitude_pmf},
                  {"cutoff_regime", to_string(spec.analyses.regime)},
                  {"hooge_window", window_json(spec.analyses.hooge_window)}};
    return Json{{"name", spec.name},
                {"kind", spec.kind == RunKind::Spectrum ? "spectrum" : "detrap_pdf"},
                {"sim", to_json(spec.sim)},
                {"spectrum", spectrum},
                {"analyses", analyses},
                {"output_dir", spec.output_dir},
                {"scale", spec.scale}};
}

ExperimentSpec experiment_from_json(const Json& j) {
    ExperimentSpec spec{j.at("name").get<std::string>(), RunKind::Spectrum, sim_config_from_json(j.at("sim")), {}, {},
                        j.value("output_dir", std::string(".")), j.value("scale", 1.0)};
    const auto kind = j.value("kind", std::string("spectrum"));
    if (kind == "detrap_pdf") {
        spec.kind = RunKind::DetrapPdf;
    } else if (kind != "spectrum") {
        throw std::invalid_argument("unknown run kind '" + kind + "'");
    }
    if (j.contains("spectrum")) {
        const auto& s = j["spectrum"];
        spec.spectrum.estimator = estimator_from_string(s.value("estimator", std::string("event_exact")));
        spec.spectrum.f_min = s.value("f_min", 0.0);
        spec.spectrum.f_max = s.value("f_max", 0.0);
        spec.spectrum.points_per_decade = s.value("points_per_decade", 40.0);
        spec.spectrum.bins_per_decade = s.value("bins_per_decade", 0.0);
    }
    if (j.contains("analyses")) {
        const auto& a = j["analyses"];
        spec.analyses.cutoff = a.value("cutoff", true);
        spec.analyses.hooge = a.value("hooge", true);
        spec.analyses.amplitude_pmf = a.value("amplitude_pmf", false);
        spec.analyses.regime = cutoff_regime_from_string(a.value("cutoff_regime", std::string("auto")));
        if (a.contains("hooge_window") && !a["hooge_window"].is_null()) {
            spec.analyses.hooge_window = FrequencyWindow{a["hooge_window"].at(0).get<double>(),
                                                         a["hooge_window"].at(1).get<double>()};
        }
    }
    spec.validate();
    return spec;
}

Json to_json(const FigurePreset& fig) {
    Json runs = Json::array();
    for (const auto& r : fig.runs) runs.push_back(to_json(r));
    return Json{{"figure", fig.figure}, {"runs", runs}};
}

FigurePreset figure_from_json(const Json& j) {
    if (j.contains("runs")) {
        FigurePreset fig{j.value("figure", std::string("custom")), {}};
        for (const auto& r : j["runs"]) fig.runs.push_back(experiment_from_json(r));
        if (fig.runs.empty()) throw std::invalid_argument("figure document has no runs");
        return fig;
    }
    auto spec = experiment_from_json(j);
    return FigurePreset{spec.name, {spec}};
}

std::vector<double> event_grid(const ExperimentSpec& spec) {
    const double T = spec.sim.horizon;
    const double lo = spec.spectrum.f_min > 0.0 ? spec.spectrum.f_min : 1.0 / T;
    const double hi = spec.spectrum.f_max > 0.0 ? spec.spectrum.f_max : 10.0 * spec.sim.rates.max_rate() / kTwoPi;
    return natural_log_grid(T, lo, hi, spec.spectrum.points_per_decade);
}

SpectrumEstimate periodogram_event_exact_parallel(std::span<const CarrierPath> paths, double amplitude,
                                                  std::span<const double> freqs, unsigned workers) {
    if (workers == 1 || freqs.size() < 2) return periodogram_event_exact(paths, amplitude, freqs);
    // Frequencies are independent; chunk them and stitch the pieces back in order.
    const std::size_t chunks = std::min<std::size_t>(freqs.size(), 64);
    std::vector<SpectrumEstimate> parts(chunks);
    parallel_for(chunks, workers, [&](std::size_t c) {
        const std::size_t b = freqs.size() * c / chunks;
        const std::size_t e = freqs.size() * (c + 1) / chunks;
        parts[c] = periodogram_event_exact(paths, amplitude, freqs.subspan(b, e - b));
    });
    SpectrumEstimate out;
    out.estimator = Estimator::EventExact;
    for (auto& p : parts) {
        out.freqs.insert(out.freqs.end(), p.freqs.begin(), p.freqs.end());
        out.values.insert(out.values.end(), p.values.begin(), p.values.end());
    }
    return out;
}

namespace {

struct RealizationOutput {
    SpectrumEstimate spectrum;
    std::size_t pulses = 0;
    double free_time = 0.0;
    std::vector<double> pmf;
};

std::vector<CarrierPath> simulate_carriers(const SimConfig& sim, std::size_t realization, unsigned workers) {
    if (workers == 1 || sim.carriers == 1) return simulate_realization(sim, realization);
    std::vector<std::optional<CarrierPath>> slots(sim.carriers);
    parallel_for(sim.carriers, workers, [&](std::size_t c) {
        auto stream = carrier_stream(sim, realization, c);
        slots[c] = simulate_carrier(sim, stream);
    });
    std::vector<CarrierPath> paths;
    paths.reserve(sim.carriers);
    for (auto& s : slots) paths.push_back(std::move(*s));
    return paths;
}

RealizationOutput run_realization(const ExperimentSpec& spec, std::size_t realization,
                                  std::span<const double> grid, unsigned workers) {
    const auto& sim = spec.sim;
    RealizationOutput out;
    const auto paths = simulate_carriers(sim, realization, workers);
    CompensatedSum free;
    for (const auto& p : paths) {
        out.pulses += p.pulse_count();
        free.add(p.free_time());
    }
    out.free_time = free.value();

    if (spec.spectrum.estimator == Estimator::EventExact) {
        out.spectrum = periodogram_event_exact_parallel(paths, sim.amplitude, grid, workers);
    } else {
        const auto signal = superpose(paths, sim.amplitude, *sim.sample_interval);
        if (spec.analyses.amplitude_pmf) out.pmf = amplitude_pmf(signal);
        auto est = periodogram_fft(signal);
        const double lo = spec.spectrum.f_min > 0.0 ? spec.spectrum.f_min : 0.0;
        const double hi = spec.spectrum.f_max > 0.0 ? spec.spectrum.f_max : INFINITY;
        if (lo > 0.0 || std::isfinite(hi)) est = restrict_to(est, lo, hi);
        // Binning is linear, so binning before averaging matches binning after.
        if (spec.spectrum.bins_per_decade > 0.0) est = logbin_spectrum(est, spec.spectrum.bins_per_decade);
        out.spectrum = std::move(est);
    }
    out.spectrum.realizations = 1;
    return out;
}

}  // namespace

SpectrumEstimate realization_spectrum(const ExperimentSpec& spec, std::size_t realization, unsigned workers) {
    const auto grid = spec.spectrum.estimator == Estimator::EventExact ? event_grid(spec) : std::vector<double>{};
    auto est = run_realization(spec, realization, grid, workers).spectrum;
    est.config = spec.sim;
    return est;
}

RunResult run_experiment(const ExperimentSpec& spec, unsigned workers) {
    spec.validate();
    if (workers == 0) workers = default_workers();
    RunResult result;
    const auto& sim = spec.sim;

    if (spec.kind == RunKind::DetrapPdf) {
        result.pdf = detrap_pdf_table(sim.rates);
        return result;
    }

    const auto grid = spec.spectrum.estimator == Estimator::EventExact ? event_grid(spec) : std::vector<double>{};
    const std::size_t R = sim.realizations;
    const unsigned inner = R >= workers ? 1u : workers;
    std::vector<RealizationOutput> outputs(R);
    parallel_for(R, R >= workers ? workers : 1u,
                 [&](std::size_t r) { outputs[r] = run_realization(spec, r, grid, inner); });

    std::vector<SpectrumEstimate> spectra;
    spectra.reserve(R);
    std::size_t pulses = 0;
    CompensatedSum free;
    for (auto& o : outputs) {
        pulses += o.pulses;
        free.add(o.free_time);
        spectra.push_back(std::move(o.spectrum));
    }
    result.spectrum = average_spectra(spectra);
    result.spectrum.config = sim;
    spectra.clear();

    const double carrier_time = static_cast<double>(sim.carriers) * static_cast<double>(R) * sim.horizon;
    result.stats.pulses = pulses;
    result.stats.nu = static_cast<double>(pulses) / carrier_time;
    result.stats.free_fraction = free.value() / carrier_time;
    result.stats.mean_current = sim.amplitude * static_cast<double>(sim.carriers) * result.stats.free_fraction;

    result.output = (spec.spectrum.estimator == Estimator::EventExact && spec.spectrum.bins_per_decade > 0.0)
                        ? logbin_spectrum(result.spectrum, spec.spectrum.bins_per_decade)
                        : result.spectrum;

    const double max_rate = sim.rates.max_rate();
    if (spec.analyses.cutoff) {
        result.cutoff = effective_cutoff(sim, spec.analyses.regime);
        try {
            const auto smooth = logbin_spectrum(result.spectrum, 10.0);
            const double lo = smooth.freqs.empty() ? 0.0 : smooth.freqs.front();
            result.onset = fit_knee(smooth, {lo, max_rate / kTwoPi / 10.0});
        } catch (const std::invalid_argument& e) {
            result.notes.push_back(std::string("plateau onset not measured: ") + e.what());
        }
    }

    if (spec.analyses.hooge) {
        result.hooge_predicted = hooge_alpha_predicted(sim.trapping, sim.rates);
        if (result.stats.nu > 0.0) result.hooge_full = hooge_alpha_full(result.stats.nu, sim.trapping.mean_time(), max_rate);
        FrequencyWindow window;
        if (spec.analyses.hooge_window) {
            window = *spec.analyses.hooge_window;
        } else {
            const double cutoff = effective_cutoff(sim, CutoffRegime::Auto).min_rate_eff;
            window = {10.0 * cutoff / kTwoPi, max_rate / kTwoPi / 10.0};
        }
        try {
            if (result.stats.mean_current <= 0.0) throw std::invalid_argument("mean current is zero");
            result.hooge_fitted = hooge_alpha_fitted(result.spectrum, result.stats.mean_current,
                                                     static_cast<double>(sim.carriers), window);
        } catch (const std::invalid_argument& e) {
            result.notes.push_back(std::string("hooge fit skipped: ") + e.what());
        }
    }

    if (spec.analyses.amplitude_pmf) {
        if (spec.spectrum.estimator != Estimator::SampledFft) {
            result.notes.push_back("amplitude pmf needs the sampled_fft estimator");
        } else {
            AmplitudeResult amp;
            amp.pmf.assign(sim.carriers + 1, 0.0);
            for (const auto& o : outputs) {
                for (std::size_t k = 0; k < o.pmf.size(); ++k) amp.pmf[k] += o.pmf[k] / static_cast<double>(R);
            }
            double mean = 0.0;
            for (std::size_t k = 0; k < amp.pmf.size(); ++k) mean += static_cast<double>(k) * amp.pmf[k];
            amp.p_fit = mean / static_cast<double>(sim.carriers);
            amp.prediction.from_rates = sim.rates.min_rate() > 0.0;
            amp.prediction.p_free =
                amp.prediction.from_rates ? free_probability(sim.rates, sim.trapping) : amp.p_fit;
            amp.prediction.pmf = binomial_pmf(sim.carriers, amp.prediction.p_free);
            result.amplitude = std::move(amp);
        }
    }
    return result;
}

Json report_json(const ExperimentSpec& spec, const RunResult& result) {
    Json j{{"name", spec.name}};
    if (result.pdf) {
        j["detrap_mean"] = spec.sim.rates.min_rate() > 0.0 ? Json(detrap_mean(spec.sim.rates)) : Json(nullptr);
        return j;
    }
    j["stats"] = Json{{"pulses", result.stats.pulses},
                      {"nu_empirical", result.stats.nu},
                      {"free_fraction", result.stats.free_fraction},
                      {"mean_current", result.stats.mean_current},
                      {"realizations", result.spectrum.realizations}};
    if (result.cutoff) {
        Json by_regime = Json::object();
        for (auto r : {CutoffRegime::ErgodicExact, CutoffRegime::BroadRange, CutoffRegime::Nonergodic,
                       CutoffRegime::LongTrapping, CutoffRegime::MultiExperiment}) {
            const auto p = effective_cutoff(spec.sim, r);
            if (p.regime == r) by_regime[to_string(r)] = p.min_rate_eff;
        }
        j["cutoff"] = Json{{"regime", to_string(result.cutoff->regime)},
                           {"min_rate_eff", result.cutoff->min_rate_eff},
                           {"min_rate_eff_by_regime", by_regime},
                           {"measured_plateau_onset", result.onset ? Json(result.onset->knee) : Json(nullptr)}};
    }
    if (result.hooge_predicted) {
        Json h{{"alpha_predicted", result.hooge_predicted->alpha},
               {"alpha_predicted_full", result.hooge_full ? Json(*result.hooge_full) : Json(nullptr)},
               {"predicted_regime_ok", result.hooge_predicted->regime_ok}};
        if (result.hooge_fitted) {
            h["alpha_fitted"] = result.hooge_fitted->alpha;
            h["fit_window"] = window_json(result.hooge_fitted->window);
            h["fit_points"] = result.hooge_fitted->points;
            h["slope"] = result.hooge_fitted->slope;
            h["slope_deviation"] = result.hooge_fitted->slope_deviation;
            h["fitted_regime_ok"] = result.hooge_fitted->regime_ok;
        } else {
            h["alpha_fitted"] = nullptr;
        }
        j["hooge"] = h;
    }
    if (result.amplitude) {
        j["amplitude"] = Json{{"p_fit", result.amplitude->p_fit},
                              {"p_predicted", result.amplitude->prediction.p_free},
                              {"p_from_rates", result.amplitude->prediction.from_rates}};
    }
    if (!result.notes.empty()) j["notes"] = result.notes;
    return j;
}

std::vector<std::string> write_artifacts(const ExperimentSpec& spec, const RunResult& result, const std::string& dir,
                                         double wall_seconds, unsigned workers) {
    std::filesystem::create_directories(dir);
    const auto base = (std::filesystem::path(dir) / spec.name).string();
    std::vector<std::string> files;

    if (result.pdf) {
        std::ostringstream os;
        os << "tau,pdf";
        for (double g : result.pdf->component_rates) os << ",exp_" << format_double(g);
        os << '\n';
        for (std::size_t i = 0; i < result.pdf->taus.size(); ++i) {
            os << format_double(result.pdf->taus[i]) << ',' << format_double(result.pdf->pdf[i]);
            for (const auto& c : result.pdf->components) os << ',' << format_double(c[i]);
            os << '\n';
        }
        write_text_file(base + "_pdf.csv", os.str());
        files.push_back(base + "_pdf.csv");
    } else {
        std::ostringstream os;
        write_spectrum_csv(os, result.output);
        write_text_file(base + "_spectrum.csv", os.str());
        files.push_back(base + "_spectrum.csv");

        std::ostringstream an;
        an << "f,one_over_f\n";
        const double carriers = static_cast<double>(spec.sim.carriers);
        for (double f : result.output.freqs) {
            an << format_double(f) << ','
               << format_double(psd_multi_carrier(f, carriers, spec.sim.amplitude, result.stats.nu,
                                                  spec.sim.rates.max_rate()))
               << '\n';
        }
        write_text_file(base + "_analytic.csv", an.str());
        files.push_back(base + "_analytic.csv");

        if (result.amplitude) {
            std::ostringstream pm;
            pm << "k,empirical,binomial\n";
            for (std::size_t k = 0; k < result.amplitude->pmf.size(); ++k) {
                pm << k << ',' << format_double(result.amplitude->pmf[k]) << ','
                   << format_double(result.amplitude->prediction.pmf[k]) << '\n';
            }
            write_text_file(base + "_pmf.csv", pm.str());
            files.push_back(base + "_pmf.csv");
        }
    }

    write_text_file(base + "_report.json", report_json(spec, result).dump(2) + "\n");
    files.push_back(base + "_report.json");

    Json meta{{"version", kVersion},
              {"experiment", to_json(spec)},
              {"seed", spec.sim.seed},
              {"initial_state", "trapped"},
              {"estimator", to_string(spec.spectrum.estimator)},
              {"scale", spec.scale},
              {"workers", workers},
              {"wall_time_s", wall_seconds}};
    write_text_file(base + "_metadata.json", meta.dump(2) + "\n");
    files.push_back(base + "_metadata.json");
    return files;
}

std::string plot_script(const FigurePreset& fig) {
    std::ostringstream os;
    os << "# gnuplot script; run from the output directory: gnuplot " << fig.figure << ".gp\n";
    os << "set datafile separator ','\nset key top right\nset logscale xy\nset format xy '10^{%L}'\n";
    os << "set terminal pngcairo size 800,600\n";
    if (fig.runs.size() == 1 && fig.runs.front().kind == RunKind::DetrapPdf) {
        const auto& name = fig.runs.front().name;
        os << "set output '" << name << ".png'\nset xlabel 'tau'\nset ylabel 'p(tau)'\n";
        os << "plot '" << name << "_pdf.csv' using 1:2 with lines lw 2 lc rgb 'red' title 'mixture'";
        for (int c = 3; c <= 12; ++c) {
            os << ", \\\n     '' using 1:" << c << " with lines dt 2 lc rgb 'black' notitle";
        }
        os << "\n";
        return os.str();
    }
    os << "set output '" << fig.figure << ".png'\nset xlabel 'f'\nset ylabel 'S(f)'\n";
    os << "plot ";
    const char* colors[] = {"red", "green", "blue", "magenta"};
    for (std::size_t i = 0; i < fig.runs.size(); ++i) {
        const auto& name = fig.runs[i].name;
        if (i > 0) os << ", \\\n     ";
        os << "'" << name << "_spectrum.csv' using 1:2 with lines lc rgb '" << colors[i % 4] << "' title '" << name
           << "'";
        os << ", \\\n     '" << name << "_analytic.csv' using 1:2 with lines dt 2 lc rgb 'black' notitle";
    }
    os << "\n";
    for (const auto& r : fig.runs) {
        if (!r.analyses.amplitude_pmf) continue;
        os << "\nunset logscale\nset output '" << r.name << "_pmf.png'\nset xlabel 'free carriers'\n"
           << "set ylabel 'probability'\nplot '" << r.name << "_pmf.csv' using 1:2 with lines lc rgb 'red' title "
           << "'simulation', '' using 1:3 with lines dt 2 lc rgb 'black' title 'binomial'\n";
    }
    return os.str();
}

}  // namespace flicker
