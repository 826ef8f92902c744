#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "flicker/experiment.hpp"
#include "flicker/parallel.hpp"

namespace fs = std::filesystem;
using namespace flicker;

namespace {

struct Common {
    std::optional<std::uint64_t> seed;
    double scale = 1.0;
    unsigned workers = 0;
    std::string out = ".";
    bool full = false;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--seed", c.seed, "Override the RNG seed");
    cmd->add_option("--scale", c.scale, "Divide T and R by this factor")->check(CLI::PositiveNumber);
    cmd->add_option("--workers", c.workers, "Worker threads (0 = all cores)");
    cmd->add_option("--out", c.out, "Output directory");
    cmd->add_flag("--full", c.full, "Include the T = 1e8 run of fig4");
}

FigurePreset load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw std::runtime_error("config '" + path + "' is not valid JSON: " + e.what());
    }
    return figure_from_json(j);
}

void apply(FigurePreset& fig, const Common& c, bool scale_runs) {
    for (auto& r : fig.runs) {
        if (c.seed) r.sim.seed = *c.seed;
        if (scale_runs && c.scale != 1.0 && r.kind == RunKind::Spectrum) r = scaled(r, c.scale);
        r.output_dir = c.out;
    }
}

unsigned workers_of(const Common& c) { return c.workers == 0 ? default_workers() : c.workers; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void run_figure(const FigurePreset& fig, const Common& c, bool analyses, bool with_script) {
    const unsigned workers = workers_of(c);
    for (auto spec : fig.runs) {
        if (!analyses) {
            spec.analyses.cutoff = false;
            spec.analyses.hooge = false;
            spec.analyses.amplitude_pmf = false;
        }
        std::cerr << "running " << spec.name << " (T=" << format_double(spec.sim.horizon)
                  << ", R=" << spec.sim.realizations << ", N=" << spec.sim.carriers << ", workers=" << workers
                  << ")\n";
        const auto t0 = std::chrono::steady_clock::now();
        const auto result = run_experiment(spec, workers);
        const double wall = seconds_since(t0);
        for (const auto& f : write_artifacts(spec, result, c.out, wall, workers)) std::cout << f << '\n';
        for (const auto& n : result.notes) std::cerr << spec.name << ": " << n << '\n';
    }
    if (with_script) {
        const auto path = (fs::path(c.out) / (fig.figure + ".gp")).string();
        write_text_file(path, plot_script(fig));
        std::cout << path << '\n';
    }
}

// Event histories of every realization, plus the sampled signal when the
// config has a sample interval.
void simulate(const FigurePreset& fig, const Common& c, bool binary) {
    fs::create_directories(c.out);
    const unsigned workers = workers_of(c);
    for (const auto& spec : fig.runs) {
        if (spec.kind != RunKind::Spectrum) throw std::runtime_error("simulate needs a spectrum run, got " + spec.name);
        const auto base = (fs::path(c.out) / spec.name).string();
        std::ofstream events(base + "_events.csv", std::ios::binary);
        if (!events) throw std::runtime_error("cannot write " + base + "_events.csv");
        write_events_header(events);
        for (std::size_t r = 0; r < spec.sim.realizations; ++r) {
            std::vector<CarrierPath> paths;
            if (workers == 1) {
                paths = simulate_realization(spec.sim, r);
            } else {
                std::vector<std::optional<CarrierPath>> slots(spec.sim.carriers);
                parallel_for(spec.sim.carriers, workers, [&](std::size_t k) {
                    auto stream = carrier_stream(spec.sim, r, k);
                    slots[k] = simulate_carrier(spec.sim, stream);
                });
                for (auto& s : slots) paths.push_back(std::move(*s));
            }
            for (std::size_t k = 0; k < paths.size(); ++k) write_events_csv(events, r, k, paths[k]);
            if (spec.sim.sample_interval) {
                const auto signal = superpose(paths, spec.sim.amplitude, *spec.sim.sample_interval);
                const auto name = base + "_r" + std::to_string(r) + (binary ? "_signal.bin" : "_signal.csv");
                std::ofstream out(name, std::ios::binary);
                if (binary) {
                    write_sampled_binary(out, signal, spec.sim.seed);
                } else {
                    write_sampled_csv(out, signal, spec.sim.seed);
                }
                if (!out) throw std::runtime_error("failed writing " + name);
                std::cout << name << '\n';
            }
        }
        if (!events) throw std::runtime_error("failed writing " + base + "_events.csv");
        std::cout << base << "_events.csv\n";
        Json meta{{"version", kVersion}, {"experiment", to_json(spec)}, {"seed", spec.sim.seed}};
        write_text_file(base + "_metadata.json", meta.dump(2) + "\n");
        std::cout << base << "_metadata.json\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulate and analyze 1/f noise from trapping with uniformly distributed detrapping rates"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    Common common;
    std::string config;
    std::string figure;
    bool binary = false;

    auto* sim_cmd = app.add_subcommand("simulate", "Write event histories (and sampled signals) for a config");
    sim_cmd->add_option("--config", config, "Experiment JSON")->required()->check(CLI::ExistingFile);
    sim_cmd->add_flag("--binary", binary, "Write sampled signals in the binary format");
    add_common(sim_cmd, common);

    auto* spec_cmd = app.add_subcommand("spectrum", "Estimate the averaged spectrum for a config");
    spec_cmd->add_option("--config", config, "Experiment JSON")->required()->check(CLI::ExistingFile);
    add_common(spec_cmd, common);

    auto* an_cmd = app.add_subcommand("analyze", "Spectrum plus cutoff, Hooge and amplitude analyses for a config");
    an_cmd->add_option("--config", config, "Experiment JSON")->required()->check(CLI::ExistingFile);
    add_common(an_cmd, common);

    auto* rep_cmd = app.add_subcommand("reproduce", "Run a built-in figure preset and write a gnuplot script");
    rep_cmd->add_option("figure", figure, "fig2 .. fig6")->required();
    add_common(rep_cmd, common);

    auto* dump_cmd = app.add_subcommand("dump-preset", "Print a figure preset as editable JSON");
    dump_cmd->add_option("figure", figure, "fig2 .. fig6")->required();
    dump_cmd->add_option("--scale", common.scale, "Divide T and R by this factor")->check(CLI::PositiveNumber);
    dump_cmd->add_option("--seed", common.seed, "Override the RNG seed");
    dump_cmd->add_flag("--full", common.full, "Include the T = 1e8 run of fig4");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*dump_cmd) {
            auto fig = preset(figure, common.scale, common.full);
            for (auto& r : fig.runs) {
                if (common.seed) r.sim.seed = *common.seed;
            }
            std::cout << to_json(fig).dump(2) << '\n';
        } else if (*rep_cmd) {
            auto fig = preset(figure, common.scale, common.full);
            apply(fig, common, false);
            run_figure(fig, common, true, true);
        } else {
            auto fig = load_config(config);
            apply(fig, common, true);
            if (*sim_cmd) {
                simulate(fig, common, binary);
            } else {
                run_figure(fig, common, an_cmd->parsed(), false);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
