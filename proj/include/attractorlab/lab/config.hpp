#ifndef ATTRACTORLAB_LAB_CONFIG_HPP
#define ATTRACTORLAB_LAB_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace attractorlab {

enum class ScenarioKind {
    BiangleSquare,
    MbeSquare,
    LoopSquare,
    MbeTimesMbe,
    MbeTimesBiangle,
    Cylinder,
    CylinderSquare,
};

const char* scenario_kind_name(ScenarioKind k);
ScenarioKind scenario_kind_from_name(const std::string& name);

/// Declarative experiment configuration: a TOML table (subset: [sections],
/// key = value with strings, numbers, booleans and flat arrays, # comments)
/// plus --set key=value command-line overrides.  Keys are flattened to
/// "section.key".
class ScenarioConfig {
  public:
    static ScenarioConfig from_file(const std::string& path,
                                    const std::vector<std::string>& overrides = {});
    static ScenarioConfig from_string(const std::string& toml_text,
                                      const std::vector<std::string>& overrides = {});
    static ScenarioConfig defaults(ScenarioKind kind);

    ScenarioKind kind() const { return kind_; }
    std::uint64_t root_seed() const { return get_int("run.seed", 42); }
    std::string out_dir() const;
    bool parallel() const { return get_bool("run.parallel", true); }

    bool has(const std::string& key) const { return values_.count(key) > 0; }
    double get_double(const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::vector<double> get_array(const std::string& key) const;

    /// Canonical text of the configuration (sorted keys) and its FNV-1a hash.
    std::string canonical_text() const;
    std::string hash() const;

  private:
    ScenarioKind kind_ = ScenarioKind::MbeSquare;
    std::map<std::string, std::string> values_;  // flattened key -> raw value text
    void apply_overrides(const std::vector<std::string>& overrides);
    void finish();
};

}  // namespace attractorlab

#endif
