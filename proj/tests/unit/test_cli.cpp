#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(FLICKER_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

int run_to(const std::string& args, const fs::path& out) {
    const std::string cmd = std::string(FLICKER_CLI) + " " + args + " >" + out.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("flicker_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("cli reproduce writes figure artifacts") {
    const auto dir = scratch("fig4");
    REQUIRE(run("reproduce fig4 --scale 1000 --workers 2 --out " + dir.string()) == 0);
    for (const char* f : {"fig4_T1e4_spectrum.csv", "fig4_T1e4_report.json", "fig4_T1e4_metadata.json",
                          "fig4_T1e6_spectrum.csv", "fig4_T1e4_analytic.csv", "fig4.gp"}) {
        CAPTURE(f);
        CHECK(fs::exists(dir / f));
    }
    const auto meta = nlohmann::json::parse(slurp(dir / "fig4_T1e6_metadata.json"));
    CHECK(meta["scale"] == 1000.0);
    CHECK(meta["experiment"]["sim"]["horizon"] == 1000.0);
}

TEST_CASE("cli dump-preset round trips through a config") {
    const auto dir = scratch("dump");
    REQUIRE(run_to("dump-preset fig3 --scale 1000", dir / "fig3.json") == 0);
    const auto doc = nlohmann::json::parse(slurp(dir / "fig3.json"));
    CHECK(doc["runs"][0]["sim"]["horizon"] == 1000.0);

    REQUIRE(run("spectrum --config " + (dir / "fig3.json").string() + " --seed 3 --out " + (dir / "a").string()) == 0);
    REQUIRE(run("spectrum --config " + (dir / "fig3.json").string() + " --seed 3 --workers 3 --out " +
                (dir / "b").string()) == 0);
    CHECK(slurp(dir / "a" / "fig3_spectrum.csv") == slurp(dir / "b" / "fig3_spectrum.csv"));
    REQUIRE(run("analyze --config " + (dir / "fig3.json").string() + " --out " + (dir / "c").string()) == 0);
    const auto report = nlohmann::json::parse(slurp(dir / "c" / "fig3_report.json"));
    CHECK(report.contains("hooge"));
    CHECK(report.contains("cutoff"));
}

TEST_CASE("cli simulate exports events and sampled signals") {
    const auto dir = scratch("simulate");
    nlohmann::json cfg = {{"name", "tiny"},
                          {"sim",
                           {{"rates", {{"law", "uniform"}, {"min_rate", 0.1}, {"max_rate", 10.0}}},
                            {"trap_rate", 1.0},
                            {"horizon", 20.0},
                            {"carriers", 2},
                            {"realizations", 1},
                            {"sample_interval", 0.01},
                            {"seed", 4}}}};
    std::ofstream(dir / "tiny.json") << cfg.dump();
    REQUIRE(run("simulate --config " + (dir / "tiny.json").string() + " --out " + dir.string()) == 0);
    CHECK(slurp(dir / "tiny_events.csv").rfind("realization,carrier,kind,duration\n0,0,gap,", 0) == 0);
    CHECK(slurp(dir / "tiny_r0_signal.csv").rfind("# dt=0.01,N=2,a=1,T=20,seed=4\nt,value\n", 0) == 0);
}

TEST_CASE("cli reports errors with a nonzero exit") {
    const auto dir = scratch("errors");
    CHECK(run("reproduce fig9 --out " + dir.string()) != 0);
    std::ofstream(dir / "bad.json") << "{ not json";
    CHECK(run("spectrum --config " + (dir / "bad.json").string()) != 0);
    std::ofstream(dir / "invalid.json") << R"({"name": "x", "sim": {"rates": {"min_rate": 5, "max_rate": 1},
        "trap_rate": 1, "horizon": 10}})";
    CHECK(run("spectrum --config " + (dir / "invalid.json").string()) != 0);
    CHECK(run("") != 0);
}
