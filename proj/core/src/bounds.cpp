#include "isac/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace isac {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using cd = std::complex<double>;

double wrapped_gap(double a, double b) { return std::abs(std::remainder(a - b, 2.0 * kPi)); }

/// All paths that do not depend on the probe target position.
PathSet static_pathset(const Scene& scene, const WaveformConfig& cfg) {
    Scene s = scene;
    s.targets.clear();
    return build_pathset(s, cfg, scene.tx_index, scene.rx_index);
}

struct Gates {
    double delay_s;
    double aod_az, aoa_az, aod_el, aoa_el;  // +inf when axis unusable
    double doppler_hz;                      // active only when moving
    bool doppler_active;
};

Gates make_gates(const WaveformConfig& cfg, bool moving) {
    Gates g{};
    g.delay_s = 1.0 / cfg.bandwidth_hz();
    g.aod_az = angular_resolution_rad(cfg, Side::tx, AngleAxis::az);
    g.aoa_az = angular_resolution_rad(cfg, Side::rx, AngleAxis::az);
    g.aod_el = angular_resolution_rad(cfg, Side::tx, AngleAxis::el);
    g.aoa_el = angular_resolution_rad(cfg, Side::rx, AngleAxis::el);
    g.doppler_hz = 1.0 / frame_duration_s(cfg);
    g.doppler_active = moving;
    return g;
}

CellDetail classify_paths(const PathSet& ps, const Gates& g, int target_path) {
    CellDetail out;
    if (target_path < 0) {
        out.cls = CellClass::infeasible;
        return out;
    }
    const PropagationPath& t = ps.paths[target_path];
    for (std::size_t qi = 0; qi < ps.paths.size(); ++qi) {
        if (static_cast<int>(qi) == target_path) continue;
        const PropagationPath& q = ps.paths[qi];
        if (std::abs(t.delay_s - q.delay_s) > g.delay_s) continue;
        const bool angle_separable =
            (std::isfinite(g.aod_az) && wrapped_gap(t.aod_az_rad, q.aod_az_rad) > g.aod_az) ||
            (std::isfinite(g.aoa_az) && wrapped_gap(t.aoa_az_rad, q.aoa_az_rad) > g.aoa_az) ||
            (std::isfinite(g.aod_el) && wrapped_gap(t.aod_el_rad, q.aod_el_rad) > g.aod_el) ||
            (std::isfinite(g.aoa_el) && wrapped_gap(t.aoa_el_rad, q.aoa_el_rad) > g.aoa_el);
        if (angle_separable) continue;
        if (g.doppler_active && std::abs(t.doppler_hz - q.doppler_hz) > g.doppler_hz) continue;
        out.masking_kinds |= 1u << static_cast<int>(q.kind);
    }
    out.cls = out.masking_kinds ? CellClass::nonresolvable : CellClass::feasible;
    return out;
}

/// Per-path beamformed gain profile over the symbol schedule, with angle
/// derivatives for the target path.
struct BeamProfile {
    std::vector<cd> g;                          // g_tx(m) * g_rx(m)
    std::vector<cd> d_aod_az, d_aoa_az, d_aod_el, d_aoa_el;
};

std::vector<cd> apply_tx_codebook(const BeamCodebook& cb, const std::vector<cd>& a) {
    std::vector<cd> out(cb.weights.size());
    for (std::size_t b = 0; b < cb.weights.size(); ++b) {
        cd acc{0.0, 0.0};
        const auto& w = cb.weights[b];
        for (std::size_t e = 0; e < w.size(); ++e) acc += w[e] * a[e];
        out[b] = acc;
    }
    return out;
}

std::vector<cd> apply_rx_codebook(const BeamCodebook& cb, const std::vector<cd>& a) {
    std::vector<cd> out(cb.weights.size());
    for (std::size_t b = 0; b < cb.weights.size(); ++b) {
        cd acc{0.0, 0.0};
        const auto& w = cb.weights[b];
        for (std::size_t e = 0; e < w.size(); ++e) acc += std::conj(w[e]) * a[e];
        out[b] = acc;
    }
    return out;
}

std::vector<cd> steering_derivative(const std::vector<Vec3>& elems, const std::vector<cd>& a,
                                    double az, double el, AngleAxis axis, double lambda) {
    Vec3 dk;
    if (axis == AngleAxis::az)
        dk = Vec3{-std::cos(el) * std::sin(az), std::cos(el) * std::cos(az), 0.0};
    else
        dk = Vec3{-std::sin(el) * std::cos(az), -std::sin(el) * std::sin(az), std::cos(el)};
    std::vector<cd> out(a.size());
    const double w = 2.0 * kPi / lambda;
    for (std::size_t e = 0; e < a.size(); ++e) out[e] = cd{0.0, w * dot(elems[e], dk)} * a[e];
    return out;
}

std::vector<cd> gather_product(const std::vector<cd>& gt, const std::vector<cd>& gr,
                               const BeamSchedule& sched) {
    std::vector<cd> out(sched.pairs.size());
    for (std::size_t m = 0; m < sched.pairs.size(); ++m)
        out[m] = gt[sched.pairs[m].first] * gr[sched.pairs[m].second];
    return out;
}

}  // namespace

BeamSchedule default_beam_schedule(const WaveformConfig& cfg) {
    BeamSchedule s;
    const int nt = cfg.tx_array.count(), nr = cfg.rx_array.count();
    s.pairs.reserve(static_cast<std::size_t>(nt) * nr);
    for (int t = 0; t < nt; ++t)
        for (int r = 0; r < nr; ++r) s.pairs.emplace_back(t, r);
    return s;
}

ChannelFim channel_fim(const PathSet& ps, const WaveformConfig& cfg, const BeamSchedule* schedule) {
    const BeamSchedule default_sched = schedule ? BeamSchedule{} : default_beam_schedule(cfg);
    const BeamSchedule& sched = schedule ? *schedule : default_sched;
    if (ps.paths.empty()) throw std::invalid_argument("channel_fim: empty path set");
    if (ps.noise_power_w <= 0.0) throw std::invalid_argument("channel_fim: nonpositive noise power");

    const int n_paths = static_cast<int>(ps.paths.size());
    int ti = -1;
    for (int pi = 0; pi < n_paths; ++pi)
        if (ps.paths[pi].kind == PathKind::target_scatter) {
            ti = pi;
            break;
        }
    const double lambda = cfg.wavelength_m();
    const double sp = cfg.spacing_m();
    const bool mono = ps.monostatic;

    // Parameter layout: the target path contributes delay + angles before its
    // gain; every path contributes Re/Im of its gain.
    ChannelFim out;
    out.target_path = ti;
    for (int pi = 0; pi < n_paths; ++pi) {
        if (pi == ti) {
            const PropagationPath& t = ps.paths[pi];
            out.params.push_back({pi, ParamRef::Tag::delay});
            out.params.push_back({pi, ParamRef::Tag::aod_az});
            if (!mono) out.params.push_back({pi, ParamRef::Tag::aoa_az});
            if (std::abs(t.aod_el_rad) > 1e-12) out.params.push_back({pi, ParamRef::Tag::aod_el});
            if (!mono && std::abs(t.aoa_el_rad) > 1e-12)
                out.params.push_back({pi, ParamRef::Tag::aoa_el});
        }
        out.params.push_back({pi, ParamRef::Tag::gain_re});
        out.params.push_back({pi, ParamRef::Tag::gain_im});
    }

    // Per-path beam profiles.
    const auto elems_tx = detail::element_positions(ps.tx, cfg.tx_array, sp);
    const auto elems_rx = detail::element_positions(ps.rx, cfg.rx_array, sp);
    const BeamCodebook cb_tx = fft_codebook(cfg.tx_array.count());
    const BeamCodebook cb_rx = fft_codebook(cfg.rx_array.count());
    std::vector<BeamProfile> prof(n_paths);
    for (int pi = 0; pi < n_paths; ++pi) {
        const PropagationPath& p = ps.paths[pi];
        const Vec3 kd = direction_from_angles(p.aod_az_rad, p.aod_el_rad);
        const Vec3 ka = direction_from_angles(p.aoa_az_rad, p.aoa_el_rad);
        const auto at = detail::steering(elems_tx, kd, lambda);
        const auto ar = detail::steering(elems_rx, ka, lambda);
        const auto gt = apply_tx_codebook(cb_tx, at);
        const auto gr = apply_rx_codebook(cb_rx, ar);
        prof[pi].g = gather_product(gt, gr, sched);
        if (pi == ti) {
            const auto gt_daz = apply_tx_codebook(
                cb_tx, steering_derivative(elems_tx, at, p.aod_az_rad, p.aod_el_rad, AngleAxis::az, lambda));
            const auto gt_del = apply_tx_codebook(
                cb_tx, steering_derivative(elems_tx, at, p.aod_az_rad, p.aod_el_rad, AngleAxis::el, lambda));
            const auto gr_daz = apply_rx_codebook(
                cb_rx, steering_derivative(elems_rx, ar, p.aoa_az_rad, p.aoa_el_rad, AngleAxis::az, lambda));
            const auto gr_del = apply_rx_codebook(
                cb_rx, steering_derivative(elems_rx, ar, p.aoa_az_rad, p.aoa_el_rad, AngleAxis::el, lambda));
            prof[pi].d_aod_az = gather_product(gt_daz, gr, sched);
            prof[pi].d_aoa_az = gather_product(gt, gr_daz, sched);
            prof[pi].d_aod_el = gather_product(gt_del, gr, sched);
            prof[pi].d_aoa_el = gather_product(gt, gr_del, sched);
            if (mono) {
                // Departure and arrival share one azimuth and one elevation.
                for (std::size_t m = 0; m < prof[pi].g.size(); ++m) {
                    prof[pi].d_aod_az[m] += prof[pi].d_aoa_az[m];
                    prof[pi].d_aod_el[m] += prof[pi].d_aoa_el[m];
                }
            }
        }
    }

    // Closed-form subcarrier sums D_k(a, b) = sum_n n^k exp(-j 2 pi n scs (tau_b - tau_a)).
    const int nsc = cfg.n_subcarriers;
    std::vector<std::array<cd, 3>> dsum(static_cast<std::size_t>(n_paths) * n_paths);
    for (int a = 0; a < n_paths; ++a)
        for (int b = a; b < n_paths; ++b) {
            std::array<cd, 3> d{cd{0.0, 0.0}, cd{0.0, 0.0}, cd{0.0, 0.0}};
            const double dtau = ps.paths[b].delay_s - ps.paths[a].delay_s;
            const cd z = std::polar(1.0, -2.0 * kPi * cfg.scs_hz * dtau);
            cd zn{1.0, 0.0};
            for (int n = 0; n < nsc; ++n) {
                d[0] += zn;
                d[1] += static_cast<double>(n) * zn;
                d[2] += static_cast<double>(n) * static_cast<double>(n) * zn;
                zn *= z;
            }
            dsum[a * n_paths + b] = d;
            dsum[b * n_paths + a] = {std::conj(d[0]), std::conj(d[1]), std::conj(d[2])};
        }

    // Per-parameter symbol profiles A_i(m), subcarrier power k_i, scalar c_i.
    struct ParamProfile {
        std::vector<cd> a;
        int k = 0;
        int path = 0;
        cd c{1.0, 0.0};
    };
    const int dim = static_cast<int>(out.params.size());
    std::vector<ParamProfile> pp(dim);
    for (int i = 0; i < dim; ++i) {
        const ParamRef& r = out.params[i];
        const PropagationPath& p = ps.paths[r.path_index];
        ParamProfile& q = pp[i];
        q.path = r.path_index;
        const BeamProfile& bp = prof[r.path_index];
        auto scaled = [&](const std::vector<cd>& src) {
            std::vector<cd> v(src.size());
            for (std::size_t m = 0; m < src.size(); ++m) v[m] = p.gain * src[m];
            return v;
        };
        switch (r.tag) {
            case ParamRef::Tag::delay:
                q.a = scaled(bp.g);
                q.k = 1;
                q.c = cd{0.0, -2.0 * kPi * cfg.scs_hz};
                break;
            case ParamRef::Tag::aod_az: q.a = scaled(bp.d_aod_az); break;
            case ParamRef::Tag::aoa_az: q.a = scaled(bp.d_aoa_az); break;
            case ParamRef::Tag::aod_el: q.a = scaled(bp.d_aod_el); break;
            case ParamRef::Tag::aoa_el: q.a = scaled(bp.d_aoa_el); break;
            case ParamRef::Tag::gain_re: q.a = bp.g; break;
            case ParamRef::Tag::gain_im:
                q.a = bp.g;
                q.c = cd{0.0, 1.0};
                break;
        }
    }

    const double s2 = cfg.tx_power_w() / nsc;                 // per-subcarrier symbol power
    const double sigma_s2 = ps.noise_power_w / nsc;           // per-subcarrier noise power
    const double scale = 2.0 * s2 / sigma_s2;
    out.fim = Eigen::MatrixXd(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = i; j < dim; ++j) {
            cd msum{0.0, 0.0};
            const auto& ai = pp[i].a;
            const auto& aj = pp[j].a;
            for (std::size_t m = 0; m < ai.size(); ++m) msum += std::conj(ai[m]) * aj[m];
            const cd d = dsum[pp[i].path * n_paths + pp[j].path][pp[i].k + pp[j].k];
            const double val = scale * std::real(std::conj(pp[i].c) * pp[j].c * msum * d);
            out.fim(i, j) = val;
            out.fim(j, i) = val;
        }
    }
    return out;
}

namespace {

PositionBound position_bound_at(const ChannelFim& cf, const PathSet& ps, const Vec3& target_pos) {
    PositionBound out;
    out.efim.setZero();
    out.peb_m = kInf;
    if (cf.target_path < 0) return out;
    if (!cf.fim.allFinite()) return out;

    const int dim = static_cast<int>(cf.params.size());
    std::vector<int> gi, ui;
    for (int i = 0; i < dim; ++i) {
        const ParamRef& r = cf.params[i];
        const bool geom = r.path_index == cf.target_path && r.tag != ParamRef::Tag::gain_re &&
                          r.tag != ParamRef::Tag::gain_im;
        (geom ? gi : ui).push_back(i);
    }
    if (gi.empty()) return out;

    Eigen::MatrixXd A(gi.size(), gi.size()), B(gi.size(), ui.size()), C(ui.size(), ui.size());
    for (std::size_t i = 0; i < gi.size(); ++i)
        for (std::size_t j = 0; j < gi.size(); ++j) A(i, j) = cf.fim(gi[i], gi[j]);
    for (std::size_t i = 0; i < gi.size(); ++i)
        for (std::size_t j = 0; j < ui.size(); ++j) B(i, j) = cf.fim(gi[i], ui[j]);
    for (std::size_t i = 0; i < ui.size(); ++i)
        for (std::size_t j = 0; j < ui.size(); ++j) C(i, j) = cf.fim(ui[i], ui[j]);

    Eigen::MatrixXd J;
    if (ui.empty()) {
        J = A;
    } else {
        Eigen::LDLT<Eigen::MatrixXd> ldlt(C);
        if (ldlt.info() != Eigen::Success) return out;
        J = A - B * ldlt.solve(B.transpose());
    }
    if (!J.allFinite()) return out;

    // Jacobian of the target's channel parameters w.r.t. its (x, y) position.
    const Vec3 dt = target_pos - ps.tx.position;
    const Vec3 dr = target_pos - ps.rx.position;
    const double d1 = norm(dt), d2 = norm(dr);
    const double r1 = std::hypot(dt.x, dt.y), r2 = std::hypot(dr.x, dr.y);
    Eigen::MatrixXd T(gi.size(), 2);
    for (std::size_t i = 0; i < gi.size(); ++i) {
        switch (cf.params[gi[i]].tag) {
            case ParamRef::Tag::delay:
                if (ps.monostatic) {
                    T(i, 0) = 2.0 * dt.x / (kSpeedOfLight * d1);
                    T(i, 1) = 2.0 * dt.y / (kSpeedOfLight * d1);
                } else {
                    T(i, 0) = dt.x / (kSpeedOfLight * d1) + dr.x / (kSpeedOfLight * d2);
                    T(i, 1) = dt.y / (kSpeedOfLight * d1) + dr.y / (kSpeedOfLight * d2);
                }
                break;
            case ParamRef::Tag::aod_az:
                T(i, 0) = -dt.y / (r1 * r1);
                T(i, 1) = dt.x / (r1 * r1);
                break;
            case ParamRef::Tag::aoa_az:
                T(i, 0) = -dr.y / (r2 * r2);
                T(i, 1) = dr.x / (r2 * r2);
                break;
            case ParamRef::Tag::aod_el:
                T(i, 0) = -dt.z * dt.x / (d1 * d1 * r1);
                T(i, 1) = -dt.z * dt.y / (d1 * d1 * r1);
                break;
            case ParamRef::Tag::aoa_el:
                T(i, 0) = -dr.z * dr.x / (d2 * d2 * r2);
                T(i, 1) = -dr.z * dr.y / (d2 * d2 * r2);
                break;
            default: break;
        }
    }

    const Eigen::Matrix2d Jp = T.transpose() * J * T;
    out.efim = Jp;
    const double det = Jp(0, 0) * Jp(1, 1) - Jp(0, 1) * Jp(1, 0);
    if (!std::isfinite(det) || det <= 0.0) return out;
    const double tr_cov = (Jp(0, 0) + Jp(1, 1)) / det;  // trace of the 2x2 inverse
    out.peb_m = tr_cov > 0.0 ? std::sqrt(tr_cov) : kInf;
    return out;
}

}  // namespace

PositionBound position_efim(const ChannelFim& cf, const PathSet& ps, const Scene& scene,
                            int target_id) {
    if (target_id < 0 || target_id >= static_cast<int>(scene.targets.size()))
        throw std::invalid_argument("position_efim: target index out of range");
    if (ps.target_path_index(target_id) < 0)
        throw std::invalid_argument("position_efim: target has no propagation path");
    return position_bound_at(cf, ps, scene.targets[target_id].position);
}

std::string cell_class_name(CellClass c) {
    switch (c) {
        case CellClass::infeasible: return "infeasible";
        case CellClass::nonresolvable: return "nonresolvable";
        case CellClass::feasible: return "feasible";
    }
    return "unknown";
}

CellDetail classify_cell_detail(const Scene& scene, const WaveformConfig& cfg,
                                const Vec3& cell_pos) {
    if (scene.targets.empty())
        throw std::invalid_argument("classify_cell: scene has no probe target");
    PathSet ps = static_pathset(scene, cfg);
    PointTarget probe = scene.targets[0];
    probe.position = cell_pos;
    detail::append_target_path(ps, scene, cfg, probe, 0);
    const Gates gates = make_gates(cfg, norm(probe.velocity_mps) > 0.0);
    return classify_paths(ps, gates, ps.target_path_index(0));
}

CellClass classify_cell(const Scene& scene, const WaveformConfig& cfg, const Vec3& cell_pos) {
    return classify_cell_detail(scene, cfg, cell_pos).cls;
}

int PebMap::count(CellClass c) const {
    int n = 0;
    for (const PebCell& cell : cells) n += cell.cls == c ? 1 : 0;
    return n;
}

int PebMap::count_masked_by(PathKind k) const {
    int n = 0;
    for (const PebCell& cell : cells)
        n += (cell.cls == CellClass::nonresolvable &&
              ((cell.masking_kinds >> static_cast<int>(k)) & 1u))
                 ? 1
                 : 0;
    return n;
}

int PebMap::count_singular_feasible() const {
    int n = 0;
    for (const PebCell& cell : cells)
        n += (cell.cls == CellClass::feasible && !std::isfinite(cell.peb_m)) ? 1 : 0;
    return n;
}

PebMap build_peb_map(const Scene& scene, const WaveformConfig& cfg, int workers) {
    if (scene.targets.empty())
        throw std::invalid_argument("build_peb_map: scene has no probe target");
    const TestRegion& region = scene.test_region;
    if (region.nx < 2 || region.ny < 2)
        throw std::invalid_argument("build_peb_map: grid must be at least 2x2");

    PebMap map;
    map.region = region;
    map.max_region_error_m = max_region_error_m(region);
    map.cells.assign(static_cast<std::size_t>(region.nx) * region.ny, PebCell{});

    const PathSet base = static_pathset(scene, cfg);
    const PointTarget probe_template = scene.targets[0];
    const Gates gates = make_gates(cfg, norm(probe_template.velocity_mps) > 0.0);
    const BeamSchedule sched = default_beam_schedule(cfg);

    const int total = region.nx * region.ny;
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int idx = next.fetch_add(1, std::memory_order_relaxed);
            if (idx >= total) break;
            const int ix = idx % region.nx;
            const int iy = idx / region.nx;
            const Vec3 pos{region.cell_x(ix), region.cell_y(iy), region.z};
            PathSet ps = base;
            PointTarget probe = probe_template;
            probe.position = pos;
            detail::append_target_path(ps, scene, cfg, probe, 0);
            const int ti = ps.target_path_index(0);
            PebCell& cell = map.cells[idx];
            if (ti < 0) {
                cell.cls = CellClass::infeasible;
                cell.peb_m = kNaN;
                cell.assigned_error_m = kNaN;
                continue;
            }
            const CellDetail det = classify_paths(ps, gates, ti);
            cell.cls = det.cls;
            cell.masking_kinds = det.masking_kinds;
            const ChannelFim cf = channel_fim(ps, cfg, &sched);
            cell.peb_m = position_bound_at(cf, ps, pos).peb_m;
            if (cell.cls == CellClass::feasible)
                cell.assigned_error_m =
                    std::isfinite(cell.peb_m) ? cell.peb_m : map.max_region_error_m;
            else
                cell.assigned_error_m = map.max_region_error_m;
        }
    };

    int n_workers = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
    n_workers = std::max(1, std::min(n_workers, total));
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(n_workers);
        for (int i = 0; i < n_workers; ++i) threads.emplace_back(worker);
        for (std::thread& t : threads) t.join();
    }
    return map;
}

std::vector<CdfPoint> error_cdf(const PebMap& map, bool include_masked) {
    std::vector<double> vals;
    vals.reserve(map.cells.size());
    for (const PebCell& cell : map.cells) {
        if (cell.cls == CellClass::feasible ||
            (include_masked && cell.cls == CellClass::nonresolvable))
            vals.push_back(cell.assigned_error_m);
    }
    if (vals.empty()) throw std::runtime_error("no feasible cells");
    std::sort(vals.begin(), vals.end());
    std::vector<CdfPoint> out;
    const double n = static_cast<double>(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (i + 1 < vals.size() && vals[i + 1] == vals[i]) continue;
        out.push_back({vals[i], (i + 1) / n});
    }
    return out;
}

double percentile_sorted(const std::vector<double>& sorted_values, double p) {
    if (sorted_values.empty()) throw std::invalid_argument("percentile of empty sample");
    const double h = (sorted_values.size() - 1) * p / 100.0;
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted_values.size()) return sorted_values.back();
    const double frac = h - lo;
    return sorted_values[lo] + (sorted_values[lo + 1] - sorted_values[lo]) * frac;
}

}  // namespace isac
