#include "attractorlab/lab/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace attractorlab {

const char* scenario_kind_name(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::BiangleSquare: return "biangle-square";
        case ScenarioKind::MbeSquare: return "mbe-square";
        case ScenarioKind::LoopSquare: return "loop-square";
        case ScenarioKind::MbeTimesMbe: return "mbe-times-mbe";
        case ScenarioKind::MbeTimesBiangle: return "mbe-times-biangle";
        case ScenarioKind::Cylinder: return "cylinder";
        case ScenarioKind::CylinderSquare: return "cylinder-square";
    }
    return "?";
}

ScenarioKind scenario_kind_from_name(const std::string& name) {
    for (ScenarioKind k :
         {ScenarioKind::BiangleSquare, ScenarioKind::MbeSquare, ScenarioKind::LoopSquare,
          ScenarioKind::MbeTimesMbe, ScenarioKind::MbeTimesBiangle, ScenarioKind::Cylinder,
          ScenarioKind::CylinderSquare}) {
        if (name == scenario_kind_name(k)) return k;
    }
    throw std::invalid_argument("unknown scenario kind: " + name);
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string strip_quotes(const std::string& s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                          (s.front() == '\'' && s.back() == '\'')))
        return s.substr(1, s.size() - 2);
    return s;
}

// Strip a trailing comment that is not inside a string.
std::string strip_comment(const std::string& line) {
    bool in_str = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_str = !in_str;
        if (line[i] == '#' && !in_str) return line.substr(0, i);
    }
    return line;
}

std::map<std::string, std::string> parse_toml_subset(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": empty key or value");
        out[section.empty() ? key : section + "." + key] = value;
    }
    return out;
}

}  // namespace

ScenarioConfig ScenarioConfig::from_string(const std::string& toml_text,
                                           const std::vector<std::string>& overrides) {
    ScenarioConfig c;
    c.values_ = parse_toml_subset(toml_text);
    c.apply_overrides(overrides);
    c.finish();
    return c;
}

ScenarioConfig ScenarioConfig::from_file(const std::string& path,
                                         const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str(), overrides);
}

ScenarioConfig ScenarioConfig::defaults(ScenarioKind kind) {
    ScenarioConfig c;
    c.values_["kind"] = std::string("\"") + scenario_kind_name(kind) + "\"";
    c.finish();
    return c;
}

void ScenarioConfig::apply_overrides(const std::vector<std::string>& overrides) {
    for (const auto& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("override must be key=value: " + ov);
        values_[trim(ov.substr(0, eq))] = trim(ov.substr(eq + 1));
    }
}

void ScenarioConfig::finish() {
    kind_ = scenario_kind_from_name(get_string("kind", "mbe-square"));
}

std::string ScenarioConfig::out_dir() const {
    if (const char* env = std::getenv("ATTRACTORLAB_OUT"))
        return std::string(env);
    return get_string("run.out", "out");
}

double ScenarioConfig::get_double(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw std::invalid_argument("config key " + key + " is not a number: " + it->second);
    }
}

std::int64_t ScenarioConfig::get_int(const std::string& key, std::int64_t fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw std::invalid_argument("config key " + key + " is not an integer: " + it->second);
    }
}

bool ScenarioConfig::get_bool(const std::string& key, bool fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second == "true") return true;
    if (it->second == "false") return false;
    throw std::invalid_argument("config key " + key + " is not a boolean: " + it->second);
}

std::string ScenarioConfig::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : strip_quotes(it->second);
}

std::vector<double> ScenarioConfig::get_array(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return {};
    std::string v = trim(it->second);
    if (v.size() < 2 || v.front() != '[' || v.back() != ']')
        throw std::invalid_argument("config key " + key + " is not an array: " + v);
    std::vector<double> out;
    std::istringstream in(v.substr(1, v.size() - 2));
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

std::string ScenarioConfig::canonical_text() const {
    std::string out;
    for (const auto& [k, v] : values_) {  // std::map iterates in sorted key order
        out += k;
        out += '=';
        out += v;
        out += '\n';
    }
    return out;
}

std::string ScenarioConfig::hash() const {
    // FNV-1a over the canonical text
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : canonical_text()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace attractorlab
