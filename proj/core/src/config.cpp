#include "isac/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "textio.hpp"

namespace isac {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPos = 1e-12;  // smallest allowed strictly-positive value

const std::vector<KeySpec>& registry() {
    static const std::vector<KeySpec> keys = {
        // [run]
        {"run", "scenario", KeyType::text, nullptr, 0, 0,
         "indoor_1 | indoor_2 | urban_intersection | rural_highway | custom"},
        {"run", "preset", KeyType::text, "fr3_10ghz", 0, 0, "fr3_10ghz | fr2_60ghz"},
        {"run", "grid_nx", KeyType::integer, "100", 2, 100000, "test-region cells along x"},
        {"run", "grid_ny", KeyType::integer, "100", 2, 100000, "test-region cells along y"},
        {"run", "seed", KeyType::integer, "1", 0, 9.2e18, "master seed for Monte-Carlo subcommands"},
        {"run", "workers", KeyType::integer, "0", 0, 4096,
         "worker threads; 0 = hardware concurrency; never changes results"},
        {"run", "cdf_include_masked", KeyType::boolean, "true", 0, 0,
         "include nonresolvable cells in the error CDF at the region penalty"},
        // [scene]
        {"scene", "room_length_m", KeyType::real, "10", kPos, 1e6, "indoor room x extent"},
        {"scene", "room_width_m", KeyType::real, "6", kPos, 1e6, "indoor room y extent"},
        {"scene", "room_height_m", KeyType::real, "3", kPos, 1e6, "indoor room height"},
        {"scene", "anchor_height_m", KeyType::real, "1.5", 0, 1e6, "anchor mount height"},
        {"scene", "anchor_wall_offset_m", KeyType::real, "0.5", 0, 1e6,
         "indoor anchor distance from their wall"},
        {"scene", "anchor_separation_m", KeyType::real, "5.5", kPos, 1e6,
         "indoor_1 Tx-Rx spacing along the shared wall"},
        {"scene", "wall_reflection", KeyType::real, "0.7", -1, 1, "indoor wall coefficient"},
        {"scene", "street_half_width_m", KeyType::real, "10", kPos, 1e6,
         "urban building setback from the street axes"},
        {"scene", "block_extent_m", KeyType::real, "40", kPos, 1e6,
         "urban building/ground outer extent"},
        {"scene", "building_height_m", KeyType::real, "20", kPos, 1e6, "urban building height"},
        {"scene", "building_reflection", KeyType::real, "0.7", -1, 1,
         "urban building-face coefficient"},
        {"scene", "ground_reflection", KeyType::real, "0.6", -1, 1, "urban ground coefficient"},
        {"scene", "fov_half_angle_deg", KeyType::real, "60", kPos, 180,
         "anchor field-of-view half angle"},
        {"scene", "target_rcs_m2", KeyType::real, "1", 0, 1e6, "target radar cross-section"},
        {"scene", "target_speed_mps", KeyType::real, "auto", 0, 1e5,
         "target speed; 0 disables Doppler gating (auto: scenario default)"},
        {"scene", "target_heading_deg", KeyType::real, "auto", -360, 360,
         "target horizontal heading (auto: scenario default)"},
        {"scene", "target_x_m", KeyType::real, "auto", -1e6, 1e6,
         "default target x (auto: scenario default)"},
        {"scene", "target_y_m", KeyType::real, "auto", -1e6, 1e6,
         "default target y (auto: scenario default)"},
        // [waveform]
        {"waveform", "carrier_hz", KeyType::real, "auto", 1e6, 1e13,
         "carrier frequency (auto: preset)"},
        {"waveform", "scs_hz", KeyType::real, "auto", kPos, 1e9,
         "subcarrier spacing (auto: preset)"},
        {"waveform", "n_subcarriers", KeyType::integer, "792", 2, 1e7, "subcarrier count"},
        {"waveform", "tx_power_dbm", KeyType::real, "20", -100, 100, "transmit power"},
        {"waveform", "cp_overhead", KeyType::real, "0.0703", 0, 1,
         "cyclic-prefix fraction of the symbol duration"},
        {"waveform", "noise_figure_db", KeyType::real, "8", 0, 50, "receiver noise figure"},
        {"waveform", "element_spacing_m", KeyType::real, "0", 0, 1,
         "antenna element spacing; 0 = half wavelength"},
        {"waveform", "tx_rows", KeyType::integer, "auto", 1, 1024, "tx array rows (auto: preset)"},
        {"waveform", "tx_cols", KeyType::integer, "auto", 1, 1024, "tx array cols (auto: preset)"},
        {"waveform", "rx_rows", KeyType::integer, "auto", 1, 1024, "rx array rows (auto: preset)"},
        {"waveform", "rx_cols", KeyType::integer, "auto", 1, 1024, "rx array cols (auto: preset)"},
        // [latency]
        {"latency", "load_min_mflop", KeyType::real, "0", 0, 1e9, "sweep start"},
        {"latency", "load_max_mflop", KeyType::real, "200", 0, 1e9, "sweep end (inclusive)"},
        {"latency", "load_step_mflop", KeyType::real, "0.5", kPos, 1e9, "sweep step"},
        {"latency", "speed_mps", KeyType::real, "10", 0, 1e5,
         "target speed for motion-induced error"},
        {"latency", "d_sensing_bits", KeyType::real, "0", 0, 1e15,
         "sensing data volume transported to the processing node"},
        // [impairments]
        {"impairments", "raf_blocks", KeyType::integer, "200", 1, 100000,
         "Monte-Carlo blocks for the ambiguity study"},
        {"impairments", "raf_block_len", KeyType::integer, "1024", 2, 1048576,
         "data symbols per block"},
        {"impairments", "raf_oversampling", KeyType::integer, "4", 1, 64,
         "single-carrier pulse-shaping oversampling"},
        {"impairments", "raf_rrc_beta", KeyType::real, "0.3", 0, 1, "RRC roll-off"},
        {"impairments", "pa_backoff_db", KeyType::real, "0", -50, 100, "PA input back-off"},
        {"impairments", "pa_a3", KeyType::real, "0.3333333333333333", kPos, 100,
         "cubic PA third-order coefficient"},
        {"impairments", "raf_seed", KeyType::integer, "12345", 0, 9.2e18, "ambiguity-study seed"},
        {"impairments", "pn_linewidth_hz", KeyType::real, "100", 0, 1e9,
         "oscillator linewidth at the reference carrier"},
        {"impairments", "pn_ref_carrier_ghz", KeyType::real, "30", kPos, 1e5,
         "linewidth reference carrier"},
        {"impairments", "pn_carriers_ghz", KeyType::text, "30,300", 0, 0,
         "comma-separated carriers to sweep"},
        {"impairments", "pn_bandwidth_hz", KeyType::real, "100e6", kPos, 1e12,
         "sensing bandwidth / PN sampling rate"},
        {"impairments", "pn_subcarriers", KeyType::integer, "1024", 2, 4194304,
         "subcarriers in the PN channel estimate"},
        {"impairments", "pn_tau_channel_ns", KeyType::real, "200", 0, 1e9, "true echo delay"},
        {"impairments", "pn_mismatch_max_ns", KeyType::real, "380", 0, 1e9,
         "largest LO-vs-echo delay mismatch"},
        {"impairments", "pn_points", KeyType::integer, "20", 1, 100000, "mismatch sweep points"},
        {"impairments", "pn_trials", KeyType::integer, "500", 1, 10000000,
         "Monte-Carlo trials per point"},
        {"impairments", "pn_seed", KeyType::integer, "777", 0, 9.2e18, "PN sweep seed"},
        // [custom]
        {"custom", "tx_x_m", KeyType::real, "0", -1e6, 1e6, "custom tx position x"},
        {"custom", "tx_y_m", KeyType::real, "0", -1e6, 1e6, "custom tx position y"},
        {"custom", "tx_z_m", KeyType::real, "1.5", -1e6, 1e6, "custom tx position z"},
        {"custom", "tx_boresight_az_deg", KeyType::real, "0", -360, 360, "tx boresight azimuth"},
        {"custom", "tx_boresight_el_deg", KeyType::real, "0", -90, 90, "tx boresight elevation"},
        {"custom", "rx_x_m", KeyType::real, "10", -1e6, 1e6, "custom rx position x"},
        {"custom", "rx_y_m", KeyType::real, "0", -1e6, 1e6, "custom rx position y"},
        {"custom", "rx_z_m", KeyType::real, "1.5", -1e6, 1e6, "custom rx position z"},
        {"custom", "rx_boresight_az_deg", KeyType::real, "180", -360, 360, "rx boresight azimuth"},
        {"custom", "rx_boresight_el_deg", KeyType::real, "0", -90, 90, "rx boresight elevation"},
        {"custom", "monostatic", KeyType::boolean, "false", 0, 0,
         "single co-located anchor (rx_* ignored)"},
        {"custom", "region_x0_m", KeyType::real, "0", -1e6, 1e6, "test region x start"},
        {"custom", "region_x1_m", KeyType::real, "10", -1e6, 1e6, "test region x end"},
        {"custom", "region_y0_m", KeyType::real, "-5", -1e6, 1e6, "test region y start"},
        {"custom", "region_y1_m", KeyType::real, "5", -1e6, 1e6, "test region y end"},
        {"custom", "region_z_m", KeyType::real, "1.5", -1e6, 1e6, "test region height"},
    };
    return keys;
}

const KeySpec* find_spec(const std::string& dotted) {
    const auto dot = dotted.find('.');
    if (dot == std::string::npos) return nullptr;
    const std::string section = dotted.substr(0, dot);
    const std::string name = dotted.substr(dot + 1);
    for (const KeySpec& k : registry())
        if (section == k.section && name == k.name) return &k;
    return nullptr;
}

bool known_section(const std::string& s) {
    for (const KeySpec& k : registry())
        if (s == k.section) return true;
    return false;
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string origin(int line) {
    if (line > 0) return "line " + std::to_string(line);
    if (line == 0) return "command line";
    return "configuration";
}

double parse_real(const std::string& v, const std::string& key, int line) {
    double out = 0.0;
    const char* first = v.data();
    const char* last = v.data() + v.size();
    const auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc{} || res.ptr != last || !std::isfinite(out))
        throw ConfigError(origin(line) + ": key '" + key + "': '" + v + "' is not a finite number",
                          line, key);
    return out;
}

long long parse_integer(const std::string& v, const std::string& key, int line) {
    long long out = 0;
    const char* first = v.data();
    const char* last = v.data() + v.size();
    const auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc{} || res.ptr != last)
        throw ConfigError(origin(line) + ": key '" + key + "': '" + v + "' is not an integer",
                          line, key);
    return out;
}

bool parse_boolean(const std::string& v, const std::string& key, int line) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError(origin(line) + ": key '" + key + "': '" + v +
                          "' is not a boolean (true/false/1/0)",
                      line, key);
}

void check_value(const KeySpec& spec, const std::string& dotted, const std::string& value,
                 int line) {
    if (value.empty())
        throw ConfigError(origin(line) + ": key '" + dotted + "': empty value", line, dotted);
    if (spec.default_value && value == "auto" && std::string(spec.default_value) == "auto")
        return;  // explicit request for the resolved default
    switch (spec.type) {
        case KeyType::real: {
            const double v = parse_real(value, dotted, line);
            if (v < spec.min_value || v > spec.max_value)
                throw ConfigError(origin(line) + ": key '" + dotted + "': " + value +
                                      " out of range [" + textio::fmt(spec.min_value) + ", " +
                                      textio::fmt(spec.max_value) + "]",
                                  line, dotted);
            break;
        }
        case KeyType::integer: {
            const double v = static_cast<double>(parse_integer(value, dotted, line));
            if (v < spec.min_value || v > spec.max_value)
                throw ConfigError(origin(line) + ": key '" + dotted + "': " + value +
                                      " out of range [" + textio::fmt(spec.min_value) + ", " +
                                      textio::fmt(spec.max_value) + "]",
                                  line, dotted);
            break;
        }
        case KeyType::boolean: parse_boolean(value, dotted, line); break;
        case KeyType::text: break;
    }
}

/// Read-side view over the stored raw values with defaults applied.
class View {
  public:
    explicit View(const std::map<std::string, std::string>& values) : values_(values) {}

    bool is_set(const std::string& dotted) const {
        const auto it = values_.find(dotted);
        return it != values_.end() && it->second != "auto";
    }

    std::string raw(const std::string& dotted) const {
        const auto it = values_.find(dotted);
        if (it != values_.end() && it->second != "auto") return it->second;
        const KeySpec* spec = find_spec(dotted);
        if (!spec || !spec->default_value)
            throw ConfigError("key '" + dotted + "' is required but not set", -1, dotted);
        return spec->default_value;
    }

    double real(const std::string& dotted) const { return parse_real(raw(dotted), dotted, -1); }
    long long integer(const std::string& dotted) const {
        return parse_integer(raw(dotted), dotted, -1);
    }
    bool boolean(const std::string& dotted) const { return parse_boolean(raw(dotted), dotted, -1); }

    void maybe_real(const std::string& dotted, double& target) const {
        if (is_set(dotted)) target = real(dotted);
    }
    void maybe_int(const std::string& dotted, int& target) const {
        if (is_set(dotted)) target = static_cast<int>(integer(dotted));
    }

  private:
    const std::map<std::string, std::string>& values_;
};

std::vector<double> parse_real_list(const std::string& value, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw ConfigError("key '" + key + "': empty list entry in '" + value + "'", -1, key);
        out.push_back(parse_real(item, key, -1));
    }
    if (out.empty()) throw ConfigError("key '" + key + "': empty list", -1, key);
    return out;
}

}  // namespace

const std::vector<KeySpec>& config_keys() { return registry(); }

void ConfigParser::load_text(const std::string& text) {
    std::string section;
    int line_no = 0;
    std::stringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        ++line_no;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(line_no) + ": unterminated section header",
                                  line_no);
            section = trim(line.substr(1, line.size() - 2));
            if (!known_section(section))
                throw ConfigError("line " + std::to_string(line_no) + ": unknown section [" +
                                      section + "]",
                                  line_no);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) +
                                  ": expected 'key = value' or '[section]'",
                              line_no);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": empty key", line_no);
        if (section.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": key '" + key +
                                  "' appears before any [section] header",
                              line_no, key);
        set(section + "." + key, value, line_no);
    }
}

void ConfigParser::set(const std::string& dotted_key, const std::string& value, int line) {
    const KeySpec* spec = find_spec(dotted_key);
    if (!spec)
        throw ConfigError(origin(line) + ": unknown key '" + dotted_key + "'", line, dotted_key);
    check_value(*spec, dotted_key, value, line);
    values_[dotted_key] = value;
}

RunConfig ConfigParser::finalize() const {
    const View v(values_);
    RunConfig r;

    if (!v.is_set("run.scenario"))
        throw ConfigError("'scenario' is required but not set (run.scenario)", -1, "run.scenario");
    try {
        r.scenario = scenario_from_name(v.raw("run.scenario"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string(e.what()) + " (run.scenario)", -1, "run.scenario");
    }
    try {
        r.preset = band_from_name(v.raw("run.preset"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string(e.what()) + " (run.preset)", -1, "run.preset");
    }
    r.scenario_name_str = scenario_name(r.scenario);
    r.preset_name_str = band_name(r.preset);
    r.seed = static_cast<std::uint64_t>(v.integer("run.seed"));
    r.workers = static_cast<int>(v.integer("run.workers"));
    r.cdf_include_masked = v.boolean("run.cdf_include_masked");

    // Scene parameters: per-scenario defaults, then explicit overrides.
    ScenarioParams& p = r.scene_params;
    p = ScenarioParams::defaults_for(r.scenario);
    v.maybe_real("scene.room_length_m", p.room_length_m);
    v.maybe_real("scene.room_width_m", p.room_width_m);
    v.maybe_real("scene.room_height_m", p.room_height_m);
    v.maybe_real("scene.anchor_height_m", p.anchor_height_m);
    v.maybe_real("scene.anchor_wall_offset_m", p.anchor_wall_offset_m);
    v.maybe_real("scene.anchor_separation_m", p.anchor_separation_m);
    v.maybe_real("scene.wall_reflection", p.wall_reflection);
    v.maybe_real("scene.street_half_width_m", p.street_half_width_m);
    v.maybe_real("scene.block_extent_m", p.block_extent_m);
    v.maybe_real("scene.building_height_m", p.building_height_m);
    v.maybe_real("scene.building_reflection", p.building_reflection);
    v.maybe_real("scene.ground_reflection", p.ground_reflection);
    v.maybe_real("scene.fov_half_angle_deg", p.fov_half_angle_deg);
    v.maybe_real("scene.target_rcs_m2", p.target_rcs_m2);
    v.maybe_real("scene.target_speed_mps", p.target_speed_mps);
    v.maybe_real("scene.target_heading_deg", p.target_heading_deg);
    v.maybe_real("scene.target_x_m", p.target_x_m);
    v.maybe_real("scene.target_y_m", p.target_y_m);
    p.grid_nx = static_cast<int>(v.integer("run.grid_nx"));
    p.grid_ny = static_cast<int>(v.integer("run.grid_ny"));
    if (r.scenario == ScenarioId::urban_intersection &&
        !(p.block_extent_m > p.street_half_width_m))
        throw ConfigError("scene.block_extent_m must exceed scene.street_half_width_m", -1,
                          "scene.block_extent_m");

    // Waveform: preset values, then explicit overrides.
    r.waveform = preset(r.preset);
    v.maybe_real("waveform.carrier_hz", r.waveform.carrier_freq_hz);
    v.maybe_real("waveform.scs_hz", r.waveform.scs_hz);
    v.maybe_int("waveform.n_subcarriers", r.waveform.n_subcarriers);
    v.maybe_real("waveform.tx_power_dbm", r.waveform.tx_power_dbm);
    v.maybe_real("waveform.cp_overhead", r.waveform.cp_overhead_fraction);
    v.maybe_real("waveform.noise_figure_db", r.waveform.noise_figure_db);
    v.maybe_real("waveform.element_spacing_m", r.waveform.element_spacing_m);
    v.maybe_int("waveform.tx_rows", r.waveform.tx_array.rows);
    v.maybe_int("waveform.tx_cols", r.waveform.tx_array.cols);
    v.maybe_int("waveform.rx_rows", r.waveform.rx_array.rows);
    v.maybe_int("waveform.rx_cols", r.waveform.rx_array.cols);

    // Latency sweep.
    r.load_min_mflop = v.real("latency.load_min_mflop");
    r.load_max_mflop = v.real("latency.load_max_mflop");
    r.load_step_mflop = v.real("latency.load_step_mflop");
    r.speed_mps = v.real("latency.speed_mps");
    r.d_sensing_bits = v.real("latency.d_sensing_bits");
    if (r.load_max_mflop < r.load_min_mflop)
        throw ConfigError("latency.load_max_mflop must be >= latency.load_min_mflop", -1,
                          "latency.load_max_mflop");

    // PA range-ambiguity study.
    r.raf.blocks = static_cast<int>(v.integer("impairments.raf_blocks"));
    r.raf.block_len = static_cast<int>(v.integer("impairments.raf_block_len"));
    r.raf.oversampling = static_cast<int>(v.integer("impairments.raf_oversampling"));
    r.raf.rrc_beta = v.real("impairments.raf_rrc_beta");
    r.raf.pa.backoff_db = v.real("impairments.pa_backoff_db");
    r.raf.pa.a3 = v.real("impairments.pa_a3");
    r.raf.seed = static_cast<std::uint64_t>(v.integer("impairments.raf_seed"));
    r.raf.workers = r.workers;

    // PN sweep.
    r.pn_linewidth_hz = v.real("impairments.pn_linewidth_hz");
    r.pn_ref_carrier_ghz = v.real("impairments.pn_ref_carrier_ghz");
    r.pn_carriers_ghz = parse_real_list(v.raw("impairments.pn_carriers_ghz"),
                                        "impairments.pn_carriers_ghz");
    for (double c : r.pn_carriers_ghz)
        if (!(c > 0.0))
            throw ConfigError("impairments.pn_carriers_ghz entries must be positive", -1,
                              "impairments.pn_carriers_ghz");
    r.pn_bandwidth_hz = v.real("impairments.pn_bandwidth_hz");
    r.pn_subcarriers = static_cast<int>(v.integer("impairments.pn_subcarriers"));
    r.pn_tau_channel_ns = v.real("impairments.pn_tau_channel_ns");
    r.pn_mismatch_max_ns = v.real("impairments.pn_mismatch_max_ns");
    r.pn_points = static_cast<int>(v.integer("impairments.pn_points"));
    r.pn_trials = static_cast<int>(v.integer("impairments.pn_trials"));
    r.pn_seed = static_cast<std::uint64_t>(v.integer("impairments.pn_seed"));

    // Custom scene.
    CustomSceneParams& c = r.custom_params;
    c.tx_position = {v.real("custom.tx_x_m"), v.real("custom.tx_y_m"), v.real("custom.tx_z_m")};
    c.tx_boresight_az_deg = v.real("custom.tx_boresight_az_deg");
    c.tx_boresight_el_deg = v.real("custom.tx_boresight_el_deg");
    c.rx_position = {v.real("custom.rx_x_m"), v.real("custom.rx_y_m"), v.real("custom.rx_z_m")};
    c.rx_boresight_az_deg = v.real("custom.rx_boresight_az_deg");
    c.rx_boresight_el_deg = v.real("custom.rx_boresight_el_deg");
    c.monostatic = v.boolean("custom.monostatic");
    c.region_x0_m = v.real("custom.region_x0_m");
    c.region_x1_m = v.real("custom.region_x1_m");
    c.region_y0_m = v.real("custom.region_y0_m");
    c.region_y1_m = v.real("custom.region_y1_m");
    c.region_z_m = v.real("custom.region_z_m");

    // Eager construction check so semantic violations surface as config errors.
    try {
        (void)r.make_configured_scene();
        if (r.waveform.n_symbols() < 1)
            throw std::invalid_argument("waveform has no beam-sweep symbols");
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid configuration: ") + e.what());
    }
    return r;
}

Scene RunConfig::make_configured_scene() const {
    if (scenario == ScenarioId::custom) return make_custom_scene(custom_params, scene_params);
    return make_scene(scenario, scene_params);
}

RunConfig parse_config(const std::string& text) {
    ConfigParser p;
    p.load_text(text);
    return p.finalize();
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& cfg) {
    using textio::fmt;
    std::vector<std::pair<std::string, std::string>> out;
    auto add = [&](const char* key, std::string value) { out.emplace_back(key, std::move(value)); };

    add("run.scenario", cfg.scenario_name_str);
    add("run.preset", cfg.preset_name_str);
    add("run.grid_nx", fmt(cfg.scene_params.grid_nx));
    add("run.grid_ny", fmt(cfg.scene_params.grid_ny));
    add("run.seed", fmt(cfg.seed));
    add("run.cdf_include_masked", fmt(cfg.cdf_include_masked));

    const ScenarioParams& p = cfg.scene_params;
    add("scene.room_length_m", fmt(p.room_length_m));
    add("scene.room_width_m", fmt(p.room_width_m));
    add("scene.room_height_m", fmt(p.room_height_m));
    add("scene.anchor_height_m", fmt(p.anchor_height_m));
    add("scene.anchor_wall_offset_m", fmt(p.anchor_wall_offset_m));
    add("scene.anchor_separation_m", fmt(p.anchor_separation_m));
    add("scene.wall_reflection", fmt(p.wall_reflection));
    add("scene.street_half_width_m", fmt(p.street_half_width_m));
    add("scene.block_extent_m", fmt(p.block_extent_m));
    add("scene.building_height_m", fmt(p.building_height_m));
    add("scene.building_reflection", fmt(p.building_reflection));
    add("scene.ground_reflection", fmt(p.ground_reflection));
    add("scene.fov_half_angle_deg", fmt(p.fov_half_angle_deg));
    add("scene.target_rcs_m2", fmt(p.target_rcs_m2));
    add("scene.target_speed_mps", fmt(p.target_speed_mps));
    add("scene.target_heading_deg", fmt(p.target_heading_deg));
    add("scene.target_x_m", fmt(p.target_x_m));
    add("scene.target_y_m", fmt(p.target_y_m));

    const WaveformConfig& w = cfg.waveform;
    add("waveform.carrier_hz", fmt(w.carrier_freq_hz));
    add("waveform.scs_hz", fmt(w.scs_hz));
    add("waveform.n_subcarriers", fmt(w.n_subcarriers));
    add("waveform.tx_power_dbm", fmt(w.tx_power_dbm));
    add("waveform.cp_overhead", fmt(w.cp_overhead_fraction));
    add("waveform.noise_figure_db", fmt(w.noise_figure_db));
    add("waveform.element_spacing_m", fmt(w.element_spacing_m));
    add("waveform.tx_rows", fmt(w.tx_array.rows));
    add("waveform.tx_cols", fmt(w.tx_array.cols));
    add("waveform.rx_rows", fmt(w.rx_array.rows));
    add("waveform.rx_cols", fmt(w.rx_array.cols));

    add("latency.load_min_mflop", fmt(cfg.load_min_mflop));
    add("latency.load_max_mflop", fmt(cfg.load_max_mflop));
    add("latency.load_step_mflop", fmt(cfg.load_step_mflop));
    add("latency.speed_mps", fmt(cfg.speed_mps));
    add("latency.d_sensing_bits", fmt(cfg.d_sensing_bits));

    add("impairments.raf_blocks", fmt(cfg.raf.blocks));
    add("impairments.raf_block_len", fmt(cfg.raf.block_len));
    add("impairments.raf_oversampling", fmt(cfg.raf.oversampling));
    add("impairments.raf_rrc_beta", fmt(cfg.raf.rrc_beta));
    add("impairments.pa_backoff_db", fmt(cfg.raf.pa.backoff_db));
    add("impairments.pa_a3", fmt(cfg.raf.pa.a3));
    add("impairments.raf_seed", fmt(cfg.raf.seed));
    add("impairments.pn_linewidth_hz", fmt(cfg.pn_linewidth_hz));
    add("impairments.pn_ref_carrier_ghz", fmt(cfg.pn_ref_carrier_ghz));
    std::string carriers;
    for (std::size_t i = 0; i < cfg.pn_carriers_ghz.size(); ++i) {
        if (i) carriers += ",";
        carriers += fmt(cfg.pn_carriers_ghz[i]);
    }
    add("impairments.pn_carriers_ghz", carriers);
    add("impairments.pn_bandwidth_hz", fmt(cfg.pn_bandwidth_hz));
    add("impairments.pn_subcarriers", fmt(cfg.pn_subcarriers));
    add("impairments.pn_tau_channel_ns", fmt(cfg.pn_tau_channel_ns));
    add("impairments.pn_mismatch_max_ns", fmt(cfg.pn_mismatch_max_ns));
    add("impairments.pn_points", fmt(cfg.pn_points));
    add("impairments.pn_trials", fmt(cfg.pn_trials));
    add("impairments.pn_seed", fmt(cfg.pn_seed));

    if (cfg.scenario == ScenarioId::custom) {
        const CustomSceneParams& c = cfg.custom_params;
        add("custom.tx_x_m", fmt(c.tx_position.x));
        add("custom.tx_y_m", fmt(c.tx_position.y));
        add("custom.tx_z_m", fmt(c.tx_position.z));
        add("custom.tx_boresight_az_deg", fmt(c.tx_boresight_az_deg));
        add("custom.tx_boresight_el_deg", fmt(c.tx_boresight_el_deg));
        add("custom.rx_x_m", fmt(c.rx_position.x));
        add("custom.rx_y_m", fmt(c.rx_position.y));
        add("custom.rx_z_m", fmt(c.rx_position.z));
        add("custom.rx_boresight_az_deg", fmt(c.rx_boresight_az_deg));
        add("custom.rx_boresight_el_deg", fmt(c.rx_boresight_el_deg));
        add("custom.monostatic", fmt(c.monostatic));
        add("custom.region_x0_m", fmt(c.region_x0_m));
        add("custom.region_x1_m", fmt(c.region_x1_m));
        add("custom.region_y0_m", fmt(c.region_y0_m));
        add("custom.region_y1_m", fmt(c.region_y1_m));
        add("custom.region_z_m", fmt(c.region_z_m));
    }
    return out;
}

}  // namespace isac
