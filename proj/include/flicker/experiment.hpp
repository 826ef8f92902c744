#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "flicker/analysis.hpp"
#include "flicker/io.hpp"
#include "flicker/sim.hpp"
#include "flicker/spectra.hpp"

namespace flicker {

inline constexpr const char* kVersion = "0.1.0";

enum class RunKind { Spectrum, DetrapPdf };

struct SpectrumOptions {
    Estimator estimator = Estimator::EventExact;
    double f_min = 0.0;              ///< 0 selects 1 / T
    double f_max = 0.0;              ///< 0 selects 10 max_rate / (2 pi), or Nyquist for sampled_fft
    double points_per_decade = 40.0; ///< event-exact grid density
    double bins_per_decade = 0.0;    ///< 0 leaves the output unbinned
};

struct AnalysisOptions {
    bool cutoff = true;
    bool hooge = true;
    bool amplitude_pmf = false;
    CutoffRegime regime = CutoffRegime::Auto;
    std::optional<FrequencyWindow> hooge_window;
};

struct ExperimentSpec {
    std::string name;
    RunKind kind = RunKind::Spectrum;
    SimConfig sim;
    SpectrumOptions spectrum;
    AnalysisOptions analyses;
    std::string output_dir = ".";
    double scale = 1.0;  ///< divisor already applied to T and R, kept for the record

    void validate() const;
};

/// The runs that make up one figure.
struct FigurePreset {
    std::string figure;
    std::vector<ExperimentSpec> runs;
};

std::vector<std::string> preset_names();

/// Built-in figure parameters. `scale` divides T and R (R never below 1);
/// `full` adds the T = 1e8 run of fig4.
FigurePreset preset(const std::string& figure, double scale = 1.0, bool full = false);

/// Divides T and R by `scale` and records it.
ExperimentSpec scaled(ExperimentSpec spec, double scale);

Json to_json(const ExperimentSpec& spec);
ExperimentSpec experiment_from_json(const Json& j);
Json to_json(const FigurePreset& fig);
/// Accepts either a figure document {"figure", "runs"} or a single run.
FigurePreset figure_from_json(const Json& j);

struct RunStats {
    std::size_t pulses = 0;
    double nu = 0.0;             ///< per-carrier pulse rate K / (N R T)
    double free_fraction = 0.0;  ///< per-carrier fraction of time free
    double mean_current = 0.0;   ///< time average of the superposed signal
};

struct AmplitudeResult {
    std::vector<double> pmf;
    double p_fit = 0.0;
    BinomialPrediction prediction;
};

struct PdfTable {
    std::vector<double> taus;
    std::vector<double> pdf;
    std::vector<double> component_rates;
    std::vector<std::vector<double>> components;  ///< one curve per component rate
};

struct RunResult {
    SpectrumEstimate spectrum;  ///< realization average on the computed grid
    SpectrumEstimate output;    ///< what is exported (log-binned when requested)
    RunStats stats;
    std::optional<CutoffPrediction> cutoff;
    std::optional<KneeFit> onset;
    std::optional<HoogeEstimate> hooge_predicted;
    std::optional<HoogeEstimate> hooge_fitted;
    std::optional<double> hooge_full;
    std::optional<AmplitudeResult> amplitude;
    std::optional<PdfTable> pdf;
    std::vector<std::string> notes;
};

/// Runs one experiment. Realizations (and carriers of a single realization)
/// are spread over `workers` threads (0 = all cores); results are merged in
/// index order so the output does not depend on the worker count.
RunResult run_experiment(const ExperimentSpec& spec, unsigned workers = 0);

/// Spectrum of one realization on the experiment's grid.
SpectrumEstimate realization_spectrum(const ExperimentSpec& spec, std::size_t realization, unsigned workers = 1);

/// Event-exact periodogram with frequencies spread over `workers` threads.
SpectrumEstimate periodogram_event_exact_parallel(std::span<const CarrierPath> paths, double amplitude,
                                                  std::span<const double> freqs, unsigned workers);

/// Frequency grid used for event-exact runs.
std::vector<double> event_grid(const ExperimentSpec& spec);

Json report_json(const ExperimentSpec& spec, const RunResult& result);

/// Writes <name>_spectrum.csv (or <name>_pdf.csv), <name>_analytic.csv,
/// <name>_report.json, <name>_metadata.json and, for amplitude analyses,
/// <name>_pmf.csv into `dir`. Returns the written paths.
std::vector<std::string> write_artifacts(const ExperimentSpec& spec, const RunResult& result, const std::string& dir,
                                         double wall_seconds, unsigned workers);

/// gnuplot script that redraws the figure from the exported CSVs.
std::string plot_script(const FigurePreset& fig);

}  // namespace flicker
