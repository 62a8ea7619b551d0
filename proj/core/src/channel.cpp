#include "isac/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace isac {

namespace {

constexpr double kPi = std::numbers::pi;

struct AzEl {
    double az, el;
};

AzEl az_el(const Vec3& d) {
    const double n = norm(d);
    return {std::atan2(d.y, d.x), std::asin(std::clamp(d.z / n, -1.0, 1.0))};
}

}  // namespace

std::string path_kind_name(PathKind kind) {
    switch (kind) {
        case PathKind::los: return "los";
        case PathKind::target_scatter: return "target_scatter";
        case PathKind::specular: return "specular";
        case PathKind::ground: return "ground";
    }
    return "unknown";
}

int PathSet::target_path_index(int target) const {
    for (std::size_t i = 0; i < paths.size(); ++i)
        if (paths[i].kind == PathKind::target_scatter && paths[i].associated_target &&
            *paths[i].associated_target == target)
            return static_cast<int>(i);
    return -1;
}

std::complex<double> los_gain(double distance_m, double lambda_m) {
    const double mag = lambda_m / (4.0 * kPi * distance_m);
    return std::polar(mag, -2.0 * kPi * distance_m / lambda_m);
}

double bistatic_target_gain_mag(double d_tx_m, double d_rx_m, double rcs_m2, double lambda_m) {
    const double fourpi = 4.0 * kPi;
    return std::sqrt(lambda_m * lambda_m * rcs_m2 /
                     (fourpi * fourpi * fourpi * d_tx_m * d_tx_m * d_rx_m * d_rx_m));
}

PathSet build_pathset(const Scene& scene, const WaveformConfig& cfg, int tx_id, int rx_id) {
    if (tx_id < 0 || rx_id < 0 || tx_id >= static_cast<int>(scene.anchors.size()) ||
        rx_id >= static_cast<int>(scene.anchors.size()))
        throw std::invalid_argument("build_pathset: anchor index out of range");
    const Anchor& tx = scene.anchors[tx_id];
    const Anchor& rx = scene.anchors[rx_id];
    const bool mono = tx_id == rx_id;
    if (mono && tx.role != AnchorRole::monostatic)
        throw std::invalid_argument("build_pathset: tx and rx coincide but the anchor role is not monostatic");

    PathSet ps;
    ps.tx = tx;
    ps.rx = rx;
    ps.monostatic = mono;
    ps.noise_power_w = noise_power_w(cfg);
    const double lambda = cfg.wavelength_m();

    if (!mono) {
        // Direct Tx-Rx path.
        const Vec3 d = rx.position - tx.position;
        const double dist = norm(d);
        if (dist > 1e-12 && is_visible(scene, tx.position, rx.position) &&
            in_fov(tx, rx.position) && in_fov(rx, tx.position)) {
            PropagationPath p;
            p.kind = PathKind::los;
            p.delay_s = dist / kSpeedOfLight;
            const AzEl dep = az_el(d), arr = az_el(-1.0 * d);
            p.aod_az_rad = dep.az;
            p.aod_el_rad = dep.el;
            p.aoa_az_rad = arr.az;
            p.aoa_el_rad = arr.el;
            p.gain = los_gain(dist, lambda);
            ps.paths.push_back(std::move(p));
        }
        // Single-bounce reflections off configured surfaces.
        for (const Reflection& ref : first_order_reflections(scene, tx, rx)) {
            const Surface& s = scene.surfaces[ref.surface_index];
            PropagationPath p;
            p.kind = s.kind == SurfaceKind::ground ? PathKind::ground : PathKind::specular;
            p.surface_id = ref.surface_id;
            p.delay_s = ref.path_length_m / kSpeedOfLight;
            const AzEl dep = az_el(ref.bounce_point - tx.position);
            const AzEl arr = az_el(ref.bounce_point - rx.position);
            p.aod_az_rad = dep.az;
            p.aod_el_rad = dep.el;
            p.aoa_az_rad = arr.az;
            p.aoa_el_rad = arr.el;
            p.gain = s.reflection_coeff * lambda / (4.0 * kPi * ref.path_length_m) *
                     std::polar(1.0, -2.0 * kPi * ref.path_length_m / lambda);
            ps.paths.push_back(std::move(p));
        }
    }

    // Diffuse scatter off each visible in-FoV target.
    for (std::size_t ti = 0; ti < scene.targets.size(); ++ti)
        detail::append_target_path(ps, scene, cfg, scene.targets[ti], static_cast<int>(ti));
    return ps;
}

namespace detail {

void append_target_path(PathSet& ps, const Scene& scene, const WaveformConfig& cfg,
                        const PointTarget& t, int target_index) {
    const Anchor& tx = ps.tx;
    const Anchor& rx = ps.rx;
    const Vec3 dt = t.position - tx.position;
    const Vec3 dr = t.position - rx.position;
    const double d1 = norm(dt), d2 = norm(dr);
    if (d1 < 1e-9 || d2 < 1e-9) return;
    if (!in_fov(tx, t.position) || !in_fov(rx, t.position)) return;
    if (!is_visible(scene, tx.position, t.position) ||
        !is_visible(scene, t.position, rx.position))
        return;
    const double lambda = cfg.wavelength_m();
    PropagationPath p;
    p.kind = PathKind::target_scatter;
    p.associated_target = target_index;
    p.delay_s = (d1 + d2) / kSpeedOfLight;
    const AzEl dep = az_el(dt), arr = az_el(dr);
    p.aod_az_rad = dep.az;
    p.aod_el_rad = dep.el;
    p.aoa_az_rad = arr.az;
    p.aoa_el_rad = arr.el;
    const double mag = bistatic_target_gain_mag(d1, d2, t.rcs_m2, lambda);
    p.gain = std::polar(mag, -2.0 * kPi * (d1 + d2) / lambda);
    if (norm(t.velocity_mps) > 0.0) {
        // Bistatic Doppler: closing-rate sum over both legs.
        const Vec3 u_to_tx = (tx.position - t.position) / d1;
        const Vec3 u_to_rx = (rx.position - t.position) / d2;
        p.doppler_hz = (dot(t.velocity_mps, u_to_tx) + dot(t.velocity_mps, u_to_rx)) / lambda;
    }
    ps.paths.push_back(std::move(p));
}

std::vector<Vec3> element_positions(const Anchor& anchor, const ArrayShape& shape,
                                    double spacing_m) {
    Vec3 u_col;
    const Vec3 c = cross(Vec3{0.0, 0.0, 1.0}, anchor.boresight);
    if (norm(c) < 1e-9)
        u_col = Vec3{1.0, 0.0, 0.0};
    else
        u_col = normalized(c);
    const Vec3 u_row = cross(anchor.boresight, u_col);
    std::vector<Vec3> out;
    out.reserve(static_cast<std::size_t>(shape.count()));
    for (int r = 0; r < shape.rows; ++r)
        for (int col = 0; col < shape.cols; ++col) {
            const double oc = (col - (shape.cols - 1) / 2.0) * spacing_m;
            const double orow = (r - (shape.rows - 1) / 2.0) * spacing_m;
            out.push_back(oc * u_col + orow * u_row);
        }
    return out;
}

std::vector<std::complex<double>> steering(const std::vector<Vec3>& elements, const Vec3& k,
                                           double lambda_m) {
    std::vector<std::complex<double>> a(elements.size());
    const double w = 2.0 * kPi / lambda_m;
    for (std::size_t e = 0; e < elements.size(); ++e)
        a[e] = std::polar(1.0, w * dot(elements[e], k));
    return a;
}

}  // namespace detail

double beam_pair_snr_db(const PathSet& ps, const WaveformConfig& cfg, int path_index,
                        int tx_beam, int rx_beam) {
    if (path_index < 0 || path_index >= static_cast<int>(ps.paths.size()))
        throw std::invalid_argument("beam_pair_snr_db: path index out of range");
    const PropagationPath& p = ps.paths[path_index];
    const double lambda = cfg.wavelength_m();
    const double sp = cfg.spacing_m();
    const auto et = detail::element_positions(ps.tx, cfg.tx_array, sp);
    const auto er = detail::element_positions(ps.rx, cfg.rx_array, sp);
    const auto at = detail::steering(et, direction_from_angles(p.aod_az_rad, p.aod_el_rad), lambda);
    const auto ar = detail::steering(er, direction_from_angles(p.aoa_az_rad, p.aoa_el_rad), lambda);
    const BeamCodebook wt = fft_codebook(cfg.tx_array.count());
    const BeamCodebook wr = fft_codebook(cfg.rx_array.count());
    if (tx_beam < 0 || tx_beam >= wt.n_beams() || rx_beam < 0 || rx_beam >= wr.n_beams())
        throw std::invalid_argument("beam_pair_snr_db: beam index out of range");
    std::complex<double> gt{0.0, 0.0}, gr{0.0, 0.0};
    for (std::size_t e = 0; e < at.size(); ++e) gt += wt.weights[tx_beam][e] * at[e];
    for (std::size_t e = 0; e < ar.size(); ++e) gr += std::conj(wr.weights[rx_beam][e]) * ar[e];
    const double amp2 = std::norm(p.gain * gt * gr);
    return 10.0 * std::log10(cfg.tx_power_w() * amp2 / ps.noise_power_w);
}

}  // namespace isac
