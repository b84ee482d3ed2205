#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "attractorlab/errors.hpp"
#include "attractorlab/lab/scenario.hpp"

using namespace attractorlab;

namespace {
const char* kSample = R"(
# experiment description
kind = "loop-square"

[run]
seed = 7
out = "scratch"
parallel = false

[loop]
mu = 2.0
lambda = 1.0
K = 1.5
turns = 12

[ensemble]
pairs = 4

[probe]
horizons = [1.0, 2.5, 4]
)";
}  // namespace

TEST_CASE("TOML subset parsing with sections, comments and overrides") {
    const auto c = ScenarioConfig::from_string(kSample);
    CHECK(c.kind() == ScenarioKind::LoopSquare);
    CHECK(c.root_seed() == 7);
    CHECK(c.get_double("loop.K", 0.0) == 1.5);
    CHECK(c.get_int("ensemble.pairs", 0) == 4);
    CHECK(c.get_bool("run.parallel", true) == false);
    CHECK(c.get_string("run.out", "") == "scratch");
    const auto arr = c.get_array("probe.horizons");
    REQUIRE(arr.size() == 3);
    CHECK(arr[1] == 2.5);
    CHECK(c.get_double("missing.key", 9.5) == 9.5);

    const auto o = ScenarioConfig::from_string(kSample, {"loop.K=2.0", "run.seed=11"});
    CHECK(o.get_double("loop.K", 0.0) == 2.0);
    CHECK(o.root_seed() == 11);
    // overrides change the config hash
    CHECK(o.hash() != c.hash());
    CHECK(ScenarioConfig::from_string(kSample).hash() == c.hash());
}

TEST_CASE("ATTRACTORLAB_OUT overrides the output root") {
    const auto c = ScenarioConfig::from_string("kind = \"cylinder\"\n[run]\nout = \"from-file\"\n");
    CHECK(c.out_dir() == "from-file");
    setenv("ATTRACTORLAB_OUT", "/tmp/from-env", 1);
    CHECK(c.out_dir() == "/tmp/from-env");
    unsetenv("ATTRACTORLAB_OUT");
    CHECK(c.out_dir() == "from-file");
}

TEST_CASE("malformed config lines are rejected") {
    CHECK_THROWS_AS(ScenarioConfig::from_string("kind = \"cylinder\"\njunk line\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(ScenarioConfig::from_string("kind = \"no-such-scenario\""),
                    std::invalid_argument);
}

TEST_CASE("invalid model parameters are rejected before execution") {
    // biangle with Lambda <= 1 must not start running
    const auto c = ScenarioConfig::from_string(
        "kind = \"biangle-square\"\n[first]\nmu_A = 0.5\nmu_B = 1.0\n");
    CHECK_THROWS_AS(run_scenario_kind(c), invariant_error);
}

TEST_CASE("manifest round-trips through JSON") {
    RunManifest m;
    m.kind = "loop-square";
    m.config_hash = "abc123";
    m.root_seed = 42;
    m.wall_clock_s = 1.25;
    m.outputs = {"gaps.csv"};
    m.verdicts = {{"gaps-strictly-increasing", true}, {"final-gap-above-100K", false}};
    m.metrics = {{"final-gap", 123.5}};
    m.error = "";
    const auto m2 = RunManifest::from_json(m.to_json());
    CHECK(m2.to_json() == m.to_json());
    CHECK(!m2.all_pass());
}

TEST_CASE("loop-square scenario runs end to end and writes deterministic outputs") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "attractorlab-test-out";
    fs::remove_all(dir);
    const auto cfg = ScenarioConfig::from_string(
        "kind = \"loop-square\"\n[run]\nout = \"" + dir.string() +
        "\"\n[ensemble]\npairs = 20\n");

    const auto m1 = run_scenario(cfg);
    CHECK(m1.error.empty());
    CHECK(m1.all_pass());

    const auto run_dir = dir / (std::string("loop-square-") + cfg.hash());
    REQUIRE(fs::exists(run_dir / "manifest.json"));
    REQUIRE(fs::exists(run_dir / "gaps.csv"));

    // identical config reproduces byte-identical CSV outputs
    std::ifstream f1(run_dir / "gaps.csv");
    std::string first((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    const auto m2 = run_scenario(cfg);
    std::ifstream f2(run_dir / "gaps.csv");
    std::string second((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(first == second);
    CHECK(m2.config_hash == m1.config_hash);

    // report emission round-trips (the second run overwrote the manifest)
    const auto loaded = load_manifest((run_dir / "manifest.json").string());
    CHECK(loaded.to_json() == m2.to_json());
    const auto report_path = emit_report(loaded, run_dir.string(), "json");
    CHECK(fs::exists(report_path));
    fs::remove_all(dir);
}
