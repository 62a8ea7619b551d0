#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "isac/geometry.hpp"
#include "isac/waveform.hpp"

namespace isac {

enum class PathKind { los, target_scatter, specular, ground };

std::string path_kind_name(PathKind kind);

struct PropagationPath {
    PathKind kind = PathKind::los;
    double delay_s = 0.0;
    double aod_az_rad = 0.0, aod_el_rad = 0.0;  // departure angles (global frame)
    double aoa_az_rad = 0.0, aoa_el_rad = 0.0;  // arrival angles (global frame)
    double doppler_hz = 0.0;
    std::complex<double> gain{0.0, 0.0};
    std::optional<int> associated_target;       // index into Scene::targets
    std::string surface_id;                     // for specular / ground bounces
};

/// Enumerated propagation paths between one Tx/Rx anchor pair, plus the
/// receiver noise power. Immutable after construction; carries copies of the
/// anchors so downstream consumers can build steering vectors.
struct PathSet {
    std::vector<PropagationPath> paths;
    double noise_power_w = 0.0;  // over the full bandwidth
    Anchor tx, rx;
    bool monostatic = false;

    int target_path_index(int target = 0) const;  // -1 if absent
};

/// Free-space amplitude: magnitude lambda/(4*pi*d), phase -2*pi*d/lambda.
std::complex<double> los_gain(double distance_m, double lambda_m);

/// Bistatic radar-equation amplitude sqrt(lambda^2 rcs / ((4 pi)^3 d_tx^2 d_rx^2)).
/// The scatter phase is an unknown nuisance handled downstream.
double bistatic_target_gain_mag(double d_tx_m, double d_rx_m, double rcs_m2, double lambda_m);

/// Enumerates LoS, single-bounce specular/ground, and target-scatter paths
/// between scene.anchors[tx_id] and scene.anchors[rx_id], gated by mutual
/// visibility and FoV. Monostatic (tx_id == rx_id with role monostatic)
/// produces target paths only, with equal legs. Throws std::invalid_argument
/// when tx_id == rx_id but the anchor role is not monostatic.
PathSet build_pathset(const Scene& scene, const WaveformConfig& cfg, int tx_id, int rx_id);

/// Post-beamforming SNR in dB for one path under a given DFT beam pair:
/// 10 log10(P_tx |gain g_tx g_rx|^2 / noise), with g_tx = f_m^T a_tx (weights
/// applied unconjugated at the transmitter) and g_rx = w_m^H a_rx.
double beam_pair_snr_db(const PathSet& ps, const WaveformConfig& cfg, int path_index,
                        int tx_beam, int rx_beam);

namespace detail {
/// Element positions relative to the anchor position. The local frame is
/// u_col = normalize(z x boresight) (falling back to +x when the boresight is
/// vertical) and u_row = boresight x u_col; element (r, c) sits at
/// ((c - (C-1)/2) u_col + (r - (R-1)/2) u_row) * spacing, row-major order.
std::vector<Vec3> element_positions(const Anchor& anchor, const ArrayShape& shape,
                                    double spacing_m);

/// Steering vector entries exp(+j 2 pi / lambda * p_e . k) for unit direction k.
std::vector<std::complex<double>> steering(const std::vector<Vec3>& elements, const Vec3& k,
                                           double lambda_m);

/// Appends the scatter path for target `t` (tagged with `target_index`) to an
/// existing path set when the target is visible from both anchors and inside
/// both fields of view; no-op otherwise. build_pathset uses this for each
/// scene target; map builders reuse it to move a probe target across cells.
void append_target_path(PathSet& ps, const Scene& scene, const WaveformConfig& cfg,
                        const PointTarget& t, int target_index);
}  // namespace detail

}  // namespace isac
