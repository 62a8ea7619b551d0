#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

#include "fim_test_utils.hpp"
#include "isac/bounds.hpp"
#include "isac/scenario.hpp"

using namespace isac;

namespace {

/// Single synthetic scatter path between isotropic (1x1) anchors.
PathSet single_path_set(double noise_w) {
    PathSet ps;
    ps.tx.position = {0, 0, 0};
    ps.tx.boresight = {1, 0, 0};
    ps.rx.position = {20, 0, 0};
    ps.rx.boresight = {-1, 0, 0};
    ps.noise_power_w = noise_w;
    PropagationPath p;
    p.kind = PathKind::target_scatter;
    p.associated_target = 0;
    p.delay_s = 50e-9;
    p.aod_az_rad = 0.2;
    p.aoa_az_rad = 2.9;
    p.gain = {3e-6, -1e-6};
    ps.paths.push_back(p);
    return ps;
}

WaveformConfig isotropic_cfg(int n_sc) {
    WaveformConfig cfg;
    cfg.carrier_freq_hz = 10e9;
    cfg.scs_hz = 30e3;
    cfg.n_subcarriers = n_sc;
    cfg.tx_power_dbm = 20.0;
    cfg.tx_array = {1, 1};
    cfg.rx_array = {1, 1};
    return cfg;
}

/// Two-anchor free-space scene with interesting geometry (z offsets on).
Scene fd_scene() {
    CustomSceneParams c;
    c.tx_position = {0, 0, 3.0};
    c.rx_position = {25, 4, 1.0};
    c.tx_boresight_az_deg = 10;
    c.rx_boresight_az_deg = 185;
    ScenarioParams p = ScenarioParams::defaults_for(ScenarioId::custom);
    p.fov_half_angle_deg = 85;
    p.target_x_m = 11;
    p.target_y_m = 2.5;
    c.region_x0_m = 2;
    c.region_x1_m = 23;
    c.region_y0_m = -8;
    c.region_y1_m = 8;
    c.region_z_m = 1.5;
    return make_custom_scene(c, p);
}

}  // namespace

TEST_CASE("default beam schedule sweeps every pair row-major") {
    WaveformConfig cfg = preset(Band::fr3_10ghz);  // 4 tx x 4 rx beams
    const BeamSchedule s = default_beam_schedule(cfg);
    REQUIRE(s.n_symbols() == 16);
    CHECK(s.pairs[0] == std::pair<int, int>{0, 0});
    CHECK(s.pairs[1] == std::pair<int, int>{0, 1});
    CHECK(s.pairs[5] == std::pair<int, int>{1, 1});
    CHECK(s.pairs[15] == std::pair<int, int>{3, 3});
}

TEST_CASE("closed-form single-path Fisher information") {
    const double noise_w = 1e-12;
    const PathSet ps = single_path_set(noise_w);
    const WaveformConfig cfg = isotropic_cfg(64);
    const ChannelFim cf = channel_fim(ps, cfg);

    // Layout: tau, aod_az, aoa_az (no elevation: both angles are 0), gains.
    REQUIRE(cf.params.size() == 5);
    CHECK(cf.params[0].tag == ParamRef::Tag::delay);
    CHECK(cf.params[3].tag == ParamRef::Tag::gain_re);
    CHECK(cf.target_path == 0);

    const int n = 64;
    double sum_n2 = 0.0;
    for (int k = 0; k < n; ++k) sum_n2 += static_cast<double>(k) * k;
    // Per-subcarrier signal power s^2 = P/n and noise sigma^2 = noise/n, so
    // the 1/n factors cancel in 2 s^2 / sigma^2 = 2 P / noise.
    const double snr_scale = 2.0 * cfg.tx_power_w() / noise_w;
    // F_tautau = (2 s^2/sigma^2) |alpha|^2 (2 pi scs)^2 sum k^2  (one symbol).
    const double f_tt = snr_scale * std::norm(ps.paths[0].gain) *
                        std::pow(2.0 * M_PI * cfg.scs_hz, 2) * sum_n2;
    CHECK(cf.fim(0, 0) == doctest::Approx(f_tt).epsilon(1e-12));

    // Gain rows: F_rere = F_imim = (2 s^2/sigma^2) n, F_reim = 0.
    const double f_gg = snr_scale * n;
    CHECK(cf.fim(3, 3) == doctest::Approx(f_gg).epsilon(1e-12));
    CHECK(cf.fim(4, 4) == doctest::Approx(f_gg).epsilon(1e-12));
    CHECK(cf.fim(3, 4) == doctest::Approx(0.0).epsilon(1e-20));

    // Isotropic elements: no angle information.
    CHECK(cf.fim(1, 1) == doctest::Approx(0.0));
    CHECK(cf.fim(2, 2) == doctest::Approx(0.0));
}

TEST_CASE("finite differences confirm the analytic FIM") {
    const Scene scene = fd_scene();
    WaveformConfig cfg = preset(Band::fr3_10ghz);
    cfg.n_subcarriers = 48;
    const PathSet ps = build_pathset(scene, cfg, 0, 1);
    REQUIRE(ps.target_path_index(0) >= 0);
    const BeamSchedule sched = default_beam_schedule(cfg);
    const ChannelFim cf = channel_fim(ps, cfg, &sched);
    // Elevation is active on both sides (anchors off the target plane).
    REQUIRE(cf.params.size() >= 7);

    const Eigen::MatrixXd fd = fimtest::fd_fim(ps, cfg, sched, cf.params, 1e-4);
    CHECK(fimtest::max_rel_error(fd, cf.fim) < 1e-4);
}

TEST_CASE("power linearity and peb scaling") {
    const Scene scene = fd_scene();
    WaveformConfig cfg = preset(Band::fr3_10ghz);
    cfg.n_subcarriers = 32;
    const PathSet ps = build_pathset(scene, cfg, 0, 1);
    const ChannelFim base = channel_fim(ps, cfg);
    const double peb_base = position_efim(base, ps, scene, 0).peb_m;

    WaveformConfig boosted = cfg;
    boosted.tx_power_dbm += 10.0;  // x10 power
    const ChannelFim hot = channel_fim(ps, boosted);
    const Eigen::MatrixXd ratio = hot.fim.cwiseQuotient(base.fim.cwiseAbs().cwiseMax(1e-300));
    for (int i = 0; i < base.fim.rows(); ++i)
        for (int j = 0; j < base.fim.cols(); ++j)
            if (std::abs(base.fim(i, j)) > 1e-6 * base.fim.cwiseAbs().maxCoeff())
                CHECK(hot.fim(i, j) / base.fim(i, j) == doctest::Approx(10.0).epsilon(1e-12));

    const double peb_hot = position_efim(hot, ps, scene, 0).peb_m;
    CHECK(peb_hot == doctest::Approx(peb_base / std::sqrt(10.0)).epsilon(1e-9));
}

TEST_CASE("peb is invariant under rigid xy motions") {
    CustomSceneParams c;
    c.tx_position = {0, 0, 3.0};
    c.rx_position = {25, 4, 1.0};
    c.tx_boresight_az_deg = 10;
    c.rx_boresight_az_deg = 185;
    ScenarioParams p = ScenarioParams::defaults_for(ScenarioId::custom);
    p.fov_half_angle_deg = 85;
    p.target_x_m = 11;
    p.target_y_m = 2.5;
    c.region_x0_m = -40;
    c.region_x1_m = 40;
    c.region_y0_m = -40;
    c.region_y1_m = 40;
    c.region_z_m = 1.5;
    WaveformConfig cfg = preset(Band::fr2_60ghz);
    cfg.n_subcarriers = 64;

    const Scene s1 = make_custom_scene(c, p);
    const PathSet ps1 = build_pathset(s1, cfg, 0, 1);
    const double peb1 = position_efim(channel_fim(ps1, cfg), ps1, s1, 0).peb_m;
    REQUIRE(std::isfinite(peb1));

    // Rotate everything by phi about z, then translate by (3.2, -1.4).
    const double phi = 0.7;
    const Vec3 t{3.2, -1.4, 0.0};
    const auto move = [&](const Vec3& v) { return rotate_z(v, phi) + t; };
    CustomSceneParams c2 = c;
    c2.tx_position = move(c.tx_position);
    c2.rx_position = move(c.rx_position);
    c2.tx_boresight_az_deg = c.tx_boresight_az_deg + phi * 180.0 / M_PI;
    c2.rx_boresight_az_deg = c.rx_boresight_az_deg + phi * 180.0 / M_PI;
    ScenarioParams p2 = p;
    const Vec3 tgt = move(Vec3{p.target_x_m, p.target_y_m, 0.0});
    p2.target_x_m = tgt.x;
    p2.target_y_m = tgt.y;

    const Scene s2 = make_custom_scene(c2, p2);
    const PathSet ps2 = build_pathset(s2, cfg, 0, 1);
    const double peb2 = position_efim(channel_fim(ps2, cfg), ps2, s2, 0).peb_m;
    CHECK(std::abs(peb2 - peb1) / peb1 < 1e-9);
}

TEST_CASE("FIM is positive semidefinite on fuzzed path sets") {
    Rng rng(20240817ULL);
    for (int trial = 0; trial < 50; ++trial) {
        const fimtest::FuzzCase fc = fimtest::random_case(rng);
        const ChannelFim cf = channel_fim(fc.ps, fc.cfg);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cf.fim);
        REQUIRE(es.info() == Eigen::Success);
        const double max_eig = es.eigenvalues().cwiseAbs().maxCoeff();
        CHECK(es.eigenvalues().minCoeff() >= -1e-9 * std::max(max_eig, 1.0));
        // Symmetry comes with the construction.
        CHECK((cf.fim - cf.fim.transpose()).cwiseAbs().maxCoeff() <=
              1e-12 * std::max(max_eig, 1.0));
    }
}

TEST_CASE("position_efim rejects bad targets") {
    const Scene scene = fd_scene();
    WaveformConfig cfg = preset(Band::fr3_10ghz);
    cfg.n_subcarriers = 16;
    const PathSet ps = build_pathset(scene, cfg, 0, 1);
    const ChannelFim cf = channel_fim(ps, cfg);
    CHECK_THROWS_AS(position_efim(cf, ps, scene, 7), std::invalid_argument);
    CHECK_THROWS_AS(position_efim(cf, ps, scene, -1), std::invalid_argument);
}

TEST_CASE("classification gates: delay+angle masking and doppler escape") {
    CustomSceneParams c;
    c.tx_position = {0, 0, 1};
    c.rx_position = {20, 0, 1};
    c.rx_boresight_az_deg = 180;
    c.region_x0_m = 1;
    c.region_x1_m = 19;
    c.region_y0_m = -8;
    c.region_y1_m = 8;
    c.region_z_m = 1.0;
    ScenarioParams p = ScenarioParams::defaults_for(ScenarioId::custom);
    p.fov_half_angle_deg = 85;
    p.target_x_m = 10;
    p.target_y_m = 5;
    const WaveformConfig cfg = preset(Band::fr3_10ghz);

    // Static probe near the LoS in delay and angle: masked by the LoS path.
    const Scene still = make_custom_scene(c, p);
    const CellDetail d1 = classify_cell_detail(still, cfg, {10, 5, 1});
    CHECK(d1.cls == CellClass::nonresolvable);
    CHECK(d1.masked_by(PathKind::los));

    // Fast crossing target separates in Doppler (|dv| > 1/frame).
    ScenarioParams fast = p;
    fast.target_speed_mps = 100.0;
    fast.target_heading_deg = 270.0;  // straight toward the baseline
    const Scene moving = make_custom_scene(c, fast);
    CHECK(classify_cell(moving, cfg, {10, 5, 1}) == CellClass::feasible);

    // Out of the receiver's field of view: infeasible.
    CustomSceneParams narrow = c;
    ScenarioParams pn = p;
    pn.fov_half_angle_deg = 5.0;
    const Scene blind = make_custom_scene(narrow, pn);
    CHECK(classify_cell(blind, cfg, {10, 5, 1}) == CellClass::infeasible);
}

TEST_CASE("build_peb_map classifies, penalizes, and parallelizes deterministically") {
    ScenarioParams p = ScenarioParams::defaults_for(ScenarioId::indoor_1);
    p.grid_nx = 12;
    p.grid_ny = 10;
    const Scene scene = make_scene(ScenarioId::indoor_1, p);
    const WaveformConfig cfg = preset(Band::fr2_60ghz);

    const PebMap m1 = build_peb_map(scene, cfg, 1);
    const PebMap m3 = build_peb_map(scene, cfg, 3);
    REQUIRE(m1.cells.size() == 120);
    REQUIRE(m3.cells.size() == 120);
    CHECK(m1.count(CellClass::feasible) + m1.count(CellClass::infeasible) +
              m1.count(CellClass::nonresolvable) ==
          120);
    for (std::size_t i = 0; i < m1.cells.size(); ++i) {
        CHECK(m1.cells[i].cls == m3.cells[i].cls);
        // Bit-identical across worker counts.
        CHECK(std::memcmp(&m1.cells[i].peb_m, &m3.cells[i].peb_m, sizeof(double)) == 0);
        CHECK(std::memcmp(&m1.cells[i].assigned_error_m, &m3.cells[i].assigned_error_m,
                          sizeof(double)) == 0);
    }

    for (const PebCell& cell : m1.cells) {
        if (cell.cls == CellClass::infeasible) {
            CHECK(std::isnan(cell.assigned_error_m));
        } else if (cell.cls == CellClass::nonresolvable) {
            CHECK(cell.assigned_error_m == doctest::Approx(m1.max_region_error_m));
            CHECK(cell.masking_kinds != 0);
        } else {
            CHECK(cell.assigned_error_m == doctest::Approx(cell.peb_m));
            CHECK(std::isfinite(cell.peb_m));
        }
    }

    // Per-cell classification agrees with the map.
    const CellClass c00 = classify_cell(scene, cfg, {scene.test_region.cell_x(0),
                                                     scene.test_region.cell_y(0),
                                                     scene.test_region.z});
    CHECK(c00 == m1.at(0, 0).cls);
}

TEST_CASE("error_cdf and percentiles") {
    PebMap map;
    map.region.nx = 2;
    map.region.ny = 2;
    map.max_region_error_m = 5.0;
    PebCell f1{CellClass::feasible, 0, 1.0, 1.0};
    PebCell f2{CellClass::feasible, 0, 2.0, 2.0};
    PebCell nr{CellClass::nonresolvable, 1, 0.5, 5.0};
    PebCell inf_{CellClass::infeasible, 0,
                 std::numeric_limits<double>::quiet_NaN(),
                 std::numeric_limits<double>::quiet_NaN()};
    map.cells = {f1, f2, nr, inf_};

    const auto with_mask = error_cdf(map, true);
    REQUIRE(with_mask.size() == 3);
    CHECK(with_mask[0].error_m == doctest::Approx(1.0));
    CHECK(with_mask[0].cum_prob == doctest::Approx(1.0 / 3));
    CHECK(with_mask[2].error_m == doctest::Approx(5.0));
    CHECK(with_mask[2].cum_prob == doctest::Approx(1.0));

    const auto feasible_only = error_cdf(map, false);
    REQUIRE(feasible_only.size() == 2);
    CHECK(feasible_only[1].cum_prob == doctest::Approx(1.0));

    // Duplicate errors collapse into one right-continuous step.
    map.cells = {f1, f1, f2, inf_};
    const auto dup = error_cdf(map, true);
    REQUIRE(dup.size() == 2);
    CHECK(dup[0].cum_prob == doctest::Approx(2.0 / 3));

    map.cells = {inf_, inf_, inf_, inf_};
    CHECK_THROWS_WITH_AS(error_cdf(map, true), "no feasible cells", std::runtime_error);

    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    CHECK(percentile_sorted(v, 50.0) == doctest::Approx(2.5));
    CHECK(percentile_sorted(v, 90.0) == doctest::Approx(3.7));
    CHECK(percentile_sorted(v, 0.0) == doctest::Approx(1.0));
    CHECK(percentile_sorted(v, 100.0) == doctest::Approx(4.0));
}

TEST_CASE("indoor scenario maps reproduce frozen reference counts") {
    // 50x50 grids at the 60 GHz preset; values frozen from the pre-build
    // reference implementation of the same model.
    ScenarioParams p1 = ScenarioParams::defaults_for(ScenarioId::indoor_1);
    p1.grid_nx = p1.grid_ny = 50;
    const PebMap m1 = build_peb_map(make_scene(ScenarioId::indoor_1, p1),
                                    preset(Band::fr2_60ghz), 0);
    CHECK(m1.count(CellClass::infeasible) == 824);
    CHECK(m1.count(CellClass::nonresolvable) == 872);
    CHECK(m1.count_masked_by(PathKind::los) == 290);

    ScenarioParams p2 = ScenarioParams::defaults_for(ScenarioId::indoor_2);
    p2.grid_nx = p2.grid_ny = 50;
    const PebMap m2 = build_peb_map(make_scene(ScenarioId::indoor_2, p2),
                                    preset(Band::fr2_60ghz), 0);
    CHECK(m2.count(CellClass::infeasible) == 1592);
    CHECK(m2.count(CellClass::nonresolvable) == 352);
    CHECK(m2.count_masked_by(PathKind::los) == 352);
}
