#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "attractorlab/lab/scenario.hpp"

using namespace attractorlab;

namespace {

void print_manifest_summary(const RunManifest& m) {
    std::printf("scenario %s (config %s, seed %llu) finished in %.2f s\n", m.kind.c_str(),
                m.config_hash.c_str(), static_cast<unsigned long long>(m.root_seed),
                m.wall_clock_s);
    if (!m.error.empty()) {
        std::printf("ERROR: %s\n", m.error.c_str());
        return;
    }
    for (const auto& [name, ok] : m.verdicts)
        std::printf("  [%s] %s\n", ok ? "PASS" : "FAIL", name.c_str());
    std::printf("%s\n", m.all_pass() ? "ALL CHECKS PASSED" : "SOME CHECKS FAILED");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"attractorlab: return-map models, timelines and attractor estimators"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    auto* run = app.add_subcommand("run", "run the scenario described by a TOML config");
    run->add_option("config", config_path, "TOML config file")->required();
    run->add_option("--set", overrides, "override a config key, e.g. --set run.seed=7");

    std::string kind_name;
    std::vector<std::string> check_overrides;
    auto* check = app.add_subcommand("check", "run the acceptance checks bound to a scenario kind");
    check->add_option("kind", kind_name, "scenario kind (e.g. mbe-square, cylinder)")->required();
    check->add_option("--set", check_overrides, "override a config key");

    std::string manifest_path;
    std::string format = "csv";
    auto* report = app.add_subcommand("report", "re-emit the verdict summary of a manifest");
    report->add_option("manifest", manifest_path, "path to manifest.json")->required();
    report->add_option("--format", format, "csv or json")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            const auto cfg = ScenarioConfig::from_file(config_path, overrides);
            const auto manifest = run_scenario(cfg);
            print_manifest_summary(manifest);
            return manifest.all_pass() ? 0 : 1;
        }
        if (*check) {
            auto cfg = ScenarioConfig::defaults(scenario_kind_from_name(kind_name));
            if (!check_overrides.empty())
                cfg = ScenarioConfig::from_string("kind = \"" + kind_name + "\"", check_overrides);
            const auto manifest = run_scenario(cfg);
            print_manifest_summary(manifest);
            return manifest.all_pass() ? 0 : 1;
        }
        if (*report) {
            const auto manifest = load_manifest(manifest_path);
            const auto dir =
                manifest_path.find('/') != std::string::npos
                    ? manifest_path.substr(0, manifest_path.find_last_of('/'))
                    : std::string(".");
            const auto out = emit_report(manifest, dir, format);
            std::printf("wrote %s\n", out.c_str());
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
