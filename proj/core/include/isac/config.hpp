#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "isac/impairments.hpp"
#include "isac/scenario.hpp"
#include "isac/waveform.hpp"

namespace isac {

/// Configuration syntax or semantic error. `line` is 1-based (0 when the
/// value came from a command-line override, -1 when no location applies);
/// `key` is the dotted section.key path when one is involved.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(const std::string& message, int line = -1, std::string key = {})
        : std::runtime_error(message), line_(line), key_(std::move(key)) {}
    int line() const { return line_; }
    const std::string& key() const { return key_; }

  private:
    int line_;
    std::string key_;
};

enum class KeyType { real, integer, boolean, text };

/// One entry of the configuration schema.
struct KeySpec {
    const char* section;
    const char* name;
    KeyType type;
    const char* default_value;  // nullptr = required; "auto" = scenario/preset-resolved
    double min_value;           // inclusive; ignored for boolean/text
    double max_value;
    const char* doc;
};

/// The full schema, in documentation order.
const std::vector<KeySpec>& config_keys();

/// Fully resolved run configuration.
struct RunConfig {
    ScenarioId scenario = ScenarioId::custom;
    Band preset = Band::fr3_10ghz;
    std::string scenario_name_str, preset_name_str;
    std::uint64_t seed = 1;
    int workers = 0;                 // 0 = hardware concurrency; excluded from echo
    bool cdf_include_masked = true;

    ScenarioParams scene_params;     // resolved (per-scenario defaults + overrides)
    CustomSceneParams custom_params; // used when scenario == custom
    WaveformConfig waveform;         // resolved (preset + overrides)

    // latency sweep
    double load_min_mflop = 0.0, load_max_mflop = 200.0, load_step_mflop = 0.5;
    double speed_mps = 10.0;
    double d_sensing_bits = 0.0;

    // PA range-ambiguity study
    RafConfig raf;

    // PN sweep
    double pn_linewidth_hz = 100.0;
    double pn_ref_carrier_ghz = 30.0;
    std::vector<double> pn_carriers_ghz{30.0, 300.0};
    double pn_bandwidth_hz = 100e6;
    int pn_subcarriers = 1024;
    double pn_tau_channel_ns = 200.0;
    double pn_mismatch_max_ns = 380.0;
    int pn_points = 20;
    int pn_trials = 500;
    std::uint64_t pn_seed = 777;

    /// Builds the configured scene (built-in scenario or custom).
    Scene make_configured_scene() const;
};

/// Incremental builder: file text first, then command-line overrides
/// (later set() wins), then finalize() resolves defaults and validates.
class ConfigParser {
  public:
    /// Parses `key = value` lines under `[section]` headers; '#' and ';'
    /// start comments. Throws ConfigError with the 1-based line number.
    void load_text(const std::string& text);

    /// Single override, `dotted_key` = "section.key". `line` 0 marks a
    /// command-line origin in error messages.
    void set(const std::string& dotted_key, const std::string& value, int line = 0);

    /// Validates everything and resolves scenario/preset-dependent defaults.
    RunConfig finalize() const;

  private:
    std::map<std::string, std::string> values_;  // dotted key -> raw value
};

/// One-shot helpers.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

/// Resolved-value echo for output metadata: (dotted key, value) pairs in
/// schema order, with `run.workers` excluded so output bytes never depend on
/// the worker count.
std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& cfg);

}  // namespace isac
