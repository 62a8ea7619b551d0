#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "isac/channel.hpp"
#include "isac/geometry.hpp"
#include "isac/waveform.hpp"

namespace isac {

/// One (tx beam, rx beam) pair per OFDM symbol.
struct BeamSchedule {
    std::vector<std::pair<int, int>> pairs;
    int n_symbols() const { return static_cast<int>(pairs.size()); }
};

/// Row-major full sweep: symbol m uses tx beam m / n_rx_beams and rx beam
/// m % n_rx_beams, covering every pair once (n_symbols() total).
BeamSchedule default_beam_schedule(const WaveformConfig& cfg);

/// Identifies one scalar unknown of the observation model.
struct ParamRef {
    enum class Tag { delay, aod_az, aoa_az, aod_el, aoa_el, gain_re, gain_im };
    int path_index = 0;
    Tag tag = Tag::delay;
};

/// Fisher information of the multipath observation over subcarriers and
/// beam-swept symbols, with the parameter layout in `params`.
struct ChannelFim {
    Eigen::MatrixXd fim;           // symmetric PSD
    std::vector<ParamRef> params;  // row/column labels of fim
    int target_path = -1;          // path index whose geometry is estimated
};

/// Builds the FIM for the noise-free mean
///   mu[n, m] = s * sum_p alpha_p g_tx(m, p) g_rx(m, p) exp(-j 2 pi n scs tau_p),
/// s = sqrt(P_tx / n_subcarriers), under circularly symmetric per-subcarrier
/// noise sigma_s^2 = noise_power_w / n_subcarriers:
///   FIM = (2 / sigma_s^2) Re{ sum_{n,m} conj(d mu) d mu },
/// accumulated with separable closed-form sums over n and m so the per-call
/// cost is O(P^2 (n_subcarriers + n_symbols)).
///
/// Unknowns: the target path's delay and angles (departure/arrival azimuth;
/// elevation per side only when the target is off that anchor's horizontal
/// plane; monostatic pairs share one azimuth and one elevation between
/// departure and arrival) plus Re/Im of every path gain. Non-target path
/// geometry is treated as known.
///
/// `schedule` defaults to default_beam_schedule(cfg) when null.
ChannelFim channel_fim(const PathSet& ps, const WaveformConfig& cfg,
                       const BeamSchedule* schedule = nullptr);

struct PositionBound {
    Eigen::Matrix2d efim;  // (x, y) equivalent Fisher information
    double peb_m = 0.0;    // sqrt(trace(efim^-1)); +inf when singular
};

/// Schur-complement elimination of all nuisance parameters (every gain and
/// every non-target parameter), then transformation of the target's
/// (delay, angles) block to 2D position via the bistatic geometry Jacobian.
PositionBound position_efim(const ChannelFim& cf, const PathSet& ps, const Scene& scene,
                            int target_id);

enum class CellClass { infeasible, nonresolvable, feasible };

std::string cell_class_name(CellClass c);

/// Per-cell classification detail: which interfering path kinds make the
/// target non-separable (bit (int)PathKind per kind).
struct CellDetail {
    CellClass cls = CellClass::infeasible;
    unsigned masking_kinds = 0;

    bool masked_by(PathKind k) const { return (masking_kinds >> static_cast<int>(k)) & 1u; }
};

/// Classifies a hypothetical target at cell_pos (rcs/velocity taken from
/// scene.targets[0], which acts as the probe template):
///  - infeasible: no line of sight to Tx or Rx, or outside either FoV;
///  - nonresolvable: some interfering path is within the delay resolution AND
///    within every usable angle resolution AND (when the probe target moves)
///    within the Doppler resolution;
///  - feasible otherwise.
CellDetail classify_cell_detail(const Scene& scene, const WaveformConfig& cfg,
                                const Vec3& cell_pos);
CellClass classify_cell(const Scene& scene, const WaveformConfig& cfg, const Vec3& cell_pos);

struct PebCell {
    CellClass cls = CellClass::infeasible;
    unsigned masking_kinds = 0;
    double peb_m = 0.0;            // defined for non-infeasible cells
    double assigned_error_m = 0.0; // peb for feasible, region penalty otherwise
};

struct PebMap {
    TestRegion region;
    std::vector<PebCell> cells;  // row-major, index iy * nx + ix
    double max_region_error_m = 0.0;
    std::string scenario_name, preset_name;

    const PebCell& at(int ix, int iy) const { return cells[iy * region.nx + ix]; }
    int count(CellClass c) const;
    int count_masked_by(PathKind k) const;      // nonresolvable cells masked by kind
    int count_singular_feasible() const;        // feasible cells with infinite peb
};

/// Evaluates every grid cell of scene.test_region (cell centers) with
/// `workers` threads (0 = hardware concurrency). Deterministic regardless of
/// the worker count.
PebMap build_peb_map(const Scene& scene, const WaveformConfig& cfg, int workers = 0);

struct CdfPoint {
    double error_m = 0.0;
    double cum_prob = 0.0;
};

/// Empirical CDF of assigned errors over feasible cells (plus nonresolvable
/// cells at the region penalty when include_masked). Sorted ascending,
/// right-continuous, one point per distinct error value. Throws
/// std::runtime_error("no feasible cells") when the domain is empty.
std::vector<CdfPoint> error_cdf(const PebMap& map, bool include_masked = true);

/// Linear-interpolation percentile (p in [0, 100]) of a sorted sample.
double percentile_sorted(const std::vector<double>& sorted_values, double p);

}  // namespace isac
