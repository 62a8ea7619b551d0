#include "isac/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "isac/bounds.hpp"
#include "isac/channel.hpp"
#include "isac/impairments.hpp"
#include "isac/latency.hpp"
#include "isac/version.hpp"
#include "textio.hpp"

namespace isac {

namespace {

using ordered_json = nlohmann::ordered_json;
using textio::fmt;

/// '#'-comment metadata block: tool version, subcommand, resolved config.
std::string comment_header(const RunConfig& cfg, const std::string& sub) {
    std::string out;
    out += "# isac-sim " + std::string(kVersion) + "\n";
    out += "# subcommand = " + sub + "\n";
    for (const auto& [key, value] : config_echo(cfg)) out += "# " + key + " = " + value + "\n";
    return out;
}

/// The same metadata as a JSON object (JSON files cannot carry comments).
ordered_json meta_json(const RunConfig& cfg, const std::string& sub) {
    ordered_json meta;
    meta["tool_version"] = kVersion;
    meta["subcommand"] = sub;
    ordered_json echo;
    for (const auto& [key, value] : config_echo(cfg)) echo[key] = value;
    meta["config"] = echo;
    return meta;
}

/// JSON value for a double; non-finite values become "inf"/"-inf"/"nan"
/// strings because JSON has no literal for them.
ordered_json json_num(double v) {
    if (std::isfinite(v)) return ordered_json(v);
    if (std::isnan(v)) return ordered_json("nan");
    return ordered_json(v > 0 ? "inf" : "-inf");
}

std::string write_file(const std::string& out_dir, const std::string& name,
                       const std::string& content) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const fs::path path = fs::path(out_dir) / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file '" + path.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
    return path.string();
}

// ---- subcommands ----------------------------------------------------------

std::vector<std::string> run_resolution(const RunConfig& cfg, const std::string& out_dir) {
    const WaveformConfig& w = cfg.waveform;
    ordered_json j;
    j["meta"] = meta_json(cfg, "resolution");
    j["range_resolution_m"] = json_num(range_resolution_m(w));
    j["velocity_resolution_mps"] = json_num(velocity_resolution_mps(w));
    j["angular_resolution_tx_az_rad"] = json_num(angular_resolution_rad(w, Side::tx, AngleAxis::az));
    j["angular_resolution_tx_el_rad"] = json_num(angular_resolution_rad(w, Side::tx, AngleAxis::el));
    j["angular_resolution_rx_az_rad"] = json_num(angular_resolution_rad(w, Side::rx, AngleAxis::az));
    j["angular_resolution_rx_el_rad"] = json_num(angular_resolution_rad(w, Side::rx, AngleAxis::el));
    j["frame_duration_s"] = json_num(frame_duration_s(w));
    j["bandwidth_hz"] = json_num(w.bandwidth_hz());
    j["wavelength_m"] = json_num(w.wavelength_m());
    j["noise_power_w"] = json_num(noise_power_w(w));
    return {write_file(out_dir, "resolution.json", j.dump(2) + "\n")};
}

std::vector<std::string> run_paths(const RunConfig& cfg, const std::string& out_dir) {
    const Scene scene = cfg.make_configured_scene();
    const PathSet ps = build_pathset(scene, cfg.waveform, scene.tx_index, scene.rx_index);
    std::string csv = comment_header(cfg, "paths");
    csv += "# result.noise_power_w = " + fmt(ps.noise_power_w) + "\n";
    csv += "# result.monostatic = " + fmt(ps.monostatic) + "\n";
    csv += "kind,delay_s,aod_az_rad,aod_el_rad,aoa_az_rad,aoa_el_rad,doppler_hz,gain_mag,"
           "gain_phase_rad,target,surface_id\n";
    for (const PropagationPath& p : ps.paths) {
        csv += path_kind_name(p.kind) + "," + fmt(p.delay_s) + "," + fmt(p.aod_az_rad) + "," +
               fmt(p.aod_el_rad) + "," + fmt(p.aoa_az_rad) + "," + fmt(p.aoa_el_rad) + "," +
               fmt(p.doppler_hz) + "," + fmt(std::abs(p.gain)) + "," + fmt(std::arg(p.gain)) + ",";
        if (p.associated_target) csv += fmt(*p.associated_target);
        csv += "," + p.surface_id + "\n";
    }
    return {write_file(out_dir, "paths.csv", csv)};
}

PebMap build_map(const RunConfig& cfg) {
    const Scene scene = cfg.make_configured_scene();
    PebMap map = build_peb_map(scene, cfg.waveform, cfg.workers);
    map.scenario_name = cfg.scenario_name_str;
    map.preset_name = cfg.preset_name_str;
    return map;
}

/// Assigned errors entering the CDF/percentiles: feasible cells always,
/// nonresolvable cells at the region penalty when include_masked. Sorted.
std::vector<double> included_errors(const PebMap& map, bool include_masked) {
    std::vector<double> e;
    for (const PebCell& cell : map.cells) {
        if (cell.cls == CellClass::feasible ||
            (include_masked && cell.cls == CellClass::nonresolvable))
            e.push_back(cell.assigned_error_m);
    }
    std::sort(e.begin(), e.end());
    return e;
}

std::vector<std::string> run_heatmap(const RunConfig& cfg, const std::string& out_dir) {
    const PebMap map = build_map(cfg);

    std::string csv = comment_header(cfg, "heatmap");
    csv += "x_m,y_m,class,error_m\n";
    for (int iy = 0; iy < map.region.ny; ++iy) {
        for (int ix = 0; ix < map.region.nx; ++ix) {
            const PebCell& cell = map.at(ix, iy);
            csv += fmt(map.region.cell_x(ix)) + "," + fmt(map.region.cell_y(iy)) + "," +
                   cell_class_name(cell.cls) + ",";
            if (cell.cls != CellClass::infeasible) csv += fmt(cell.assigned_error_m);
            csv += "\n";
        }
    }

    ordered_json j;
    j["meta"] = meta_json(cfg, "heatmap");
    j["grid"] = {{"nx", map.region.nx}, {"ny", map.region.ny}};
    ordered_json counts;
    counts["feasible"] = map.count(CellClass::feasible);
    counts["infeasible"] = map.count(CellClass::infeasible);
    counts["nonresolvable"] = map.count(CellClass::nonresolvable);
    counts["los_masked"] = map.count_masked_by(PathKind::los);
    counts["target_masked"] = map.count_masked_by(PathKind::target_scatter);
    counts["specular_masked"] = map.count_masked_by(PathKind::specular);
    counts["ground_masked"] = map.count_masked_by(PathKind::ground);
    counts["singular_feasible"] = map.count_singular_feasible();
    j["counts"] = counts;
    j["max_region_error_m"] = json_num(map.max_region_error_m);
    const std::vector<double> sample = included_errors(map, cfg.cdf_include_masked);
    if (!sample.empty()) {
        ordered_json pct;
        pct["include_masked"] = cfg.cdf_include_masked;
        pct["p50"] = json_num(percentile_sorted(sample, 50.0));
        pct["p90"] = json_num(percentile_sorted(sample, 90.0));
        pct["p95"] = json_num(percentile_sorted(sample, 95.0));
        j["error_percentiles"] = pct;
    }

    return {write_file(out_dir, "heatmap.csv", csv),
            write_file(out_dir, "heatmap_summary.json", j.dump(2) + "\n")};
}

std::vector<std::string> run_cdf(const RunConfig& cfg, const std::string& out_dir) {
    const PebMap map = build_map(cfg);
    const std::vector<CdfPoint> points = error_cdf(map, cfg.cdf_include_masked);
    std::string csv = comment_header(cfg, "cdf");
    csv += "error_m,cum_prob\n";
    for (const CdfPoint& p : points) csv += fmt(p.error_m) + "," + fmt(p.cum_prob) + "\n";
    return {write_file(out_dir, "cdf.csv", csv)};
}

std::vector<std::string> run_latency_sweep(const RunConfig& cfg, const std::string& out_dir) {
    const std::vector<ProcessingNode> nodes = default_nodes();
    const std::vector<PlacementRow> rows =
        placement_sweep(cfg.load_min_mflop * 1e6, cfg.load_max_mflop * 1e6,
                        cfg.load_step_mflop * 1e6, nodes, cfg.speed_mps, cfg.d_sensing_bits);
    std::string csv = comment_header(cfg, "latency-sweep");
    csv += "load_mflop";
    for (const ProcessingNode& n : nodes) csv += ",t_" + n.name + "_ms";
    csv += ",best_node,motion_error_m\n";
    for (const PlacementRow& row : rows) {
        csv += fmt(row.load_flops / 1e6);
        for (const LatencyBreakdown& b : row.per_node) csv += "," + fmt(b.t_total_s * 1e3);
        csv += "," + nodes[static_cast<std::size_t>(row.best_node)].name + "," +
               fmt(row.motion_error_m) + "\n";
    }
    return {write_file(out_dir, "latency_sweep.csv", csv)};
}

std::vector<std::string> run_pa_raf(const RunConfig& cfg, const std::string& out_dir) {
    RafConfig rc = cfg.raf;
    rc.workers = cfg.workers;
    const RafStudy study = run_raf_study(rc);
    std::string csv = comment_header(cfg, "pa-raf");
    csv += "# result.floor_ofdm_clean_db = " + fmt(study.floor_ofdm_clean_db) + "\n";
    csv += "# result.floor_ofdm_pa_db = " + fmt(study.floor_ofdm_pa_db) + "\n";
    csv += "# result.floor_sc_clean_db = " + fmt(study.floor_sc_clean_db) + "\n";
    csv += "# result.floor_sc_pa_db = " + fmt(study.floor_sc_pa_db) + "\n";
    csv += "# result.excluded_bins_ofdm = " + fmt(study.excluded_bins_ofdm) + "\n";
    csv += "# result.excluded_bins_sc = " + fmt(study.excluded_bins_sc) + "\n";
    csv += "# result.distortion_excess_kurtosis = " + fmt(study.distortion_excess_kurtosis) + "\n";
    csv += "waveform,chain,bin,median_db\n";
    const auto emit = [&csv](const char* wf, const char* chain, const std::vector<double>& prof) {
        for (std::size_t i = 0; i < prof.size(); ++i)
            csv += std::string(wf) + "," + chain + "," + fmt(static_cast<int>(i)) + "," +
                   fmt(prof[i]) + "\n";
    };
    emit("ofdm", "clean", study.ofdm_clean_db);
    emit("ofdm", "pa", study.ofdm_pa_db);
    emit("sc", "clean", study.sc_clean_db);
    emit("sc", "pa", study.sc_pa_db);
    return {write_file(out_dir, "pa_raf.csv", csv)};
}

std::vector<std::string> run_pn_sweep(const RunConfig& cfg, const std::string& out_dir) {
    std::string csv = comment_header(cfg, "pn-sweep");
    csv += "carrier_ghz,tau_lo_ns,mismatch_ns,mean_abs_range_error_m\n";
    for (double carrier_ghz : cfg.pn_carriers_ghz) {
        PnSweepConfig sc;
        sc.pn.linewidth_hz = cfg.pn_linewidth_hz;
        sc.pn.ref_carrier_hz = cfg.pn_ref_carrier_ghz * 1e9;
        sc.pn.sample_rate_hz = cfg.pn_bandwidth_hz;
        sc.carrier_hz = carrier_ghz * 1e9;
        sc.bandwidth_hz = cfg.pn_bandwidth_hz;
        sc.n_subcarriers = cfg.pn_subcarriers;
        sc.tau_channel_s = cfg.pn_tau_channel_ns * 1e-9;
        sc.tau_lo_s = make_tau_lo_sweep(sc.tau_channel_s, cfg.pn_mismatch_max_ns * 1e-9,
                                        cfg.pn_points);
        sc.trials = cfg.pn_trials;
        sc.seed = cfg.pn_seed;  // shared across carriers: common random numbers
        sc.workers = cfg.workers;
        const PnSweepResult res = pn_range_error_sweep(sc);
        for (std::size_t i = 0; i < res.tau_lo_s.size(); ++i)
            csv += fmt(carrier_ghz) + "," + fmt(res.tau_lo_s[i] * 1e9) + "," +
                   fmt(res.mismatch_s[i] * 1e9) + "," + fmt(res.mean_abs_range_error_m[i]) + "\n";
    }
    return {write_file(out_dir, "pn_sweep.csv", csv)};
}

}  // namespace

const std::vector<std::string>& subcommand_names() {
    static const std::vector<std::string> names = {
        "heatmap", "cdf", "latency-sweep", "pa-raf", "pn-sweep", "resolution", "paths"};
    return names;
}

std::vector<std::string> run_subcommand(const std::string& subcommand, const RunConfig& cfg,
                                        const std::string& out_dir) {
    if (subcommand == "heatmap") return run_heatmap(cfg, out_dir);
    if (subcommand == "cdf") return run_cdf(cfg, out_dir);
    if (subcommand == "latency-sweep") return run_latency_sweep(cfg, out_dir);
    if (subcommand == "pa-raf") return run_pa_raf(cfg, out_dir);
    if (subcommand == "pn-sweep") return run_pn_sweep(cfg, out_dir);
    if (subcommand == "resolution") return run_resolution(cfg, out_dir);
    if (subcommand == "paths") return run_paths(cfg, out_dir);
    throw ConfigError("unknown subcommand '" + subcommand + "'");
}

}  // namespace isac
