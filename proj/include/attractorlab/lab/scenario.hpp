#ifndef ATTRACTORLAB_LAB_SCENARIO_HPP
#define ATTRACTORLAB_LAB_SCENARIO_HPP

#include <string>
#include <utility>
#include <vector>

#include "attractorlab/lab/config.hpp"

namespace attractorlab {

inline constexpr const char* kVersionTag = "attractorlab-1.0.0";

/// Outcome of a scenario run: named pass/fail checks (the acceptance checks
/// bound to the scenario kind), reported metric values, and the CSV payloads.
struct ScenarioResult {
    std::vector<std::pair<std::string, bool>> checks;
    std::vector<std::pair<std::string, double>> metrics;
    std::vector<std::pair<std::string, std::string>> files;  // filename -> content

    bool all_pass() const;
    void check(const std::string& name, bool pass);
    void metric(const std::string& name, double value);
};

/// Execute the scenario bound to the config, pure of filesystem I/O.
ScenarioResult run_scenario_kind(const ScenarioConfig& c);

struct RunManifest {
    std::string kind;
    std::string config_hash;
    std::string version = kVersionTag;
    std::uint64_t root_seed = 0;
    double wall_clock_s = 0.0;
    std::vector<std::string> outputs;
    std::vector<std::pair<std::string, bool>> verdicts;
    std::vector<std::pair<std::string, double>> metrics;
    std::string error;  // captured module error; partial outputs are flagged

    bool all_pass() const;
    std::string to_json() const;
    static RunManifest from_json(const std::string& text);
};

/// Run the scenario, write its outputs and the manifest (atomically) into
/// <out_dir>/<kind>-<config_hash>/, and return the manifest.  Module errors
/// are captured into the manifest, never thrown across the run boundary.
RunManifest run_scenario(const ScenarioConfig& c);

/// Re-emit the verdict summary of a manifest as verdicts.csv or verdicts.json
/// next to it.  Returns the emitted file path.
std::string emit_report(const RunManifest& m, const std::string& dir, const std::string& format);

RunManifest load_manifest(const std::string& path);

}  // namespace attractorlab

#endif
