// Shared helpers for validating channel_fim against an independent
// reconstruction of the observation model: the noise-free mean is rebuilt
// from public steering/codebook primitives and differentiated numerically,
// so the analytic Fisher information can be cross-checked end to end.
#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "isac/bounds.hpp"
#include "isac/channel.hpp"
#include "isac/rng.hpp"
#include "isac/waveform.hpp"

namespace fimtest {

using isac::BeamSchedule;
using isac::ChannelFim;
using isac::ParamRef;
using isac::PathSet;
using isac::PropagationPath;
using isac::WaveformConfig;

/// mu[n, m] = s * sum_p alpha_p g_tx(m, p) g_rx(m, p) exp(-j 2 pi n scs tau_p),
/// flattened as n * n_symbols + m.
inline std::vector<std::complex<double>> observation_mean(const PathSet& ps,
                                                          const WaveformConfig& cfg,
                                                          const BeamSchedule& sched) {
    const double lam = cfg.wavelength_m();
    const double s = std::sqrt(cfg.tx_power_w() / cfg.n_subcarriers);
    const auto tx_elems = isac::detail::element_positions(ps.tx, cfg.tx_array, cfg.spacing_m());
    const auto rx_elems = isac::detail::element_positions(ps.rx, cfg.rx_array, cfg.spacing_m());
    const isac::BeamCodebook tx_cb = isac::fft_codebook(cfg.tx_array.count());
    const isac::BeamCodebook rx_cb = isac::fft_codebook(cfg.rx_array.count());

    const int n_sc = cfg.n_subcarriers;
    const int n_sym = sched.n_symbols();
    // Per-path, per-symbol combined beam gain.
    std::vector<std::vector<std::complex<double>>> g(ps.paths.size());
    for (std::size_t p = 0; p < ps.paths.size(); ++p) {
        const auto& path = ps.paths[p];
        const auto a_tx = isac::detail::steering(
            tx_elems, isac::direction_from_angles(path.aod_az_rad, path.aod_el_rad), lam);
        const auto a_rx = isac::detail::steering(
            rx_elems, isac::direction_from_angles(path.aoa_az_rad, path.aoa_el_rad), lam);
        g[p].resize(n_sym);
        for (int m = 0; m < n_sym; ++m) {
            const auto [tb, rb] = sched.pairs[m];
            std::complex<double> gt{0, 0}, gr{0, 0};
            for (std::size_t e = 0; e < a_tx.size(); ++e) gt += tx_cb.weights[tb][e] * a_tx[e];
            for (std::size_t e = 0; e < a_rx.size(); ++e)
                gr += std::conj(rx_cb.weights[rb][e]) * a_rx[e];
            g[p][m] = gt * gr;
        }
    }
    std::vector<std::complex<double>> mu(static_cast<std::size_t>(n_sc) * n_sym, {0, 0});
    for (int n = 0; n < n_sc; ++n) {
        for (std::size_t p = 0; p < ps.paths.size(); ++p) {
            const auto& path = ps.paths[p];
            const std::complex<double> tone =
                std::exp(std::complex<double>(0.0, -2.0 * M_PI * n * cfg.scs_hz * path.delay_s));
            for (int m = 0; m < n_sym; ++m)
                mu[static_cast<std::size_t>(n) * n_sym + m] += s * path.gain * g[p][m] * tone;
        }
    }
    return mu;
}

/// Applies +delta to the scalar identified by `ref`. Monostatic shared-angle
/// parameters perturb the departure and arrival fields together.
inline void nudge(PathSet& ps, const ParamRef& ref, double delta) {
    PropagationPath& p = ps.paths[static_cast<std::size_t>(ref.path_index)];
    using Tag = ParamRef::Tag;
    switch (ref.tag) {
        case Tag::delay: p.delay_s += delta; break;
        case Tag::aod_az:
            p.aod_az_rad += delta;
            if (ps.monostatic) p.aoa_az_rad += delta;
            break;
        case Tag::aoa_az: p.aoa_az_rad += delta; break;
        case Tag::aod_el:
            p.aod_el_rad += delta;
            if (ps.monostatic) p.aoa_el_rad += delta;
            break;
        case Tag::aoa_el: p.aoa_el_rad += delta; break;
        case Tag::gain_re: p.gain += std::complex<double>(delta, 0.0); break;
        case Tag::gain_im: p.gain += std::complex<double>(0.0, delta); break;
    }
}

/// Natural step size per parameter kind: a small fraction of one resolution
/// unit for delay, of a radian for angles, of the gain magnitude for gains.
inline double param_scale(const PathSet& ps, const WaveformConfig& cfg, const ParamRef& ref) {
    using Tag = ParamRef::Tag;
    if (ref.tag == Tag::delay) return 1.0 / (cfg.scs_hz * cfg.n_subcarriers);
    if (ref.tag == Tag::gain_re || ref.tag == Tag::gain_im)
        return std::max(std::abs(ps.paths[static_cast<std::size_t>(ref.path_index)].gain), 1e-12);
    return 1.0;
}

/// Central-difference Fisher information with relative step `base_step`.
inline Eigen::MatrixXd fd_fim(const PathSet& ps, const WaveformConfig& cfg,
                              const BeamSchedule& sched, const std::vector<ParamRef>& params,
                              double base_step) {
    const int np = static_cast<int>(params.size());
    const std::size_t dim = static_cast<std::size_t>(cfg.n_subcarriers) * sched.n_symbols();
    std::vector<std::vector<std::complex<double>>> deriv(static_cast<std::size_t>(np));
    for (int i = 0; i < np; ++i) {
        const double h = base_step * param_scale(ps, cfg, params[static_cast<std::size_t>(i)]);
        PathSet plus = ps, minus = ps;
        nudge(plus, params[static_cast<std::size_t>(i)], h);
        nudge(minus, params[static_cast<std::size_t>(i)], -h);
        const auto mu_p = observation_mean(plus, cfg, sched);
        const auto mu_m = observation_mean(minus, cfg, sched);
        auto& d = deriv[static_cast<std::size_t>(i)];
        d.resize(dim);
        for (std::size_t k = 0; k < dim; ++k) d[k] = (mu_p[k] - mu_m[k]) / (2.0 * h);
    }
    const double sigma2 = ps.noise_power_w / cfg.n_subcarriers;
    Eigen::MatrixXd f(np, np);
    for (int i = 0; i < np; ++i) {
        for (int j = i; j < np; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < dim; ++k)
                acc += (std::conj(deriv[static_cast<std::size_t>(i)][k]) *
                        deriv[static_cast<std::size_t>(j)][k])
                           .real();
            f(i, j) = f(j, i) = 2.0 / sigma2 * acc;
        }
    }
    return f;
}

/// Largest entry-wise deviation normalized by the largest analytic entry.
inline double max_rel_error(const Eigen::MatrixXd& fd, const Eigen::MatrixXd& an) {
    const double scale = an.cwiseAbs().maxCoeff();
    return (fd - an).cwiseAbs().maxCoeff() / scale;
}

/// Randomized synthetic path sets spanning mono/bistatic, elevation on/off,
/// and 1..3-element array axes. Deterministic given the rng state.
struct FuzzCase {
    PathSet ps;
    WaveformConfig cfg;
};

inline FuzzCase random_case(isac::Rng& rng) {
    FuzzCase fc;
    WaveformConfig& cfg = fc.cfg;
    cfg.carrier_freq_hz = 10e9 + 50e9 * rng.uniform01();
    cfg.scs_hz = 30e3 * (1 + std::floor(3 * rng.uniform01()));
    cfg.n_subcarriers = 16 + static_cast<int>(48 * rng.uniform01());
    cfg.tx_power_dbm = 10.0 + 20.0 * rng.uniform01();
    const auto dim = [&rng] { return 1 + static_cast<int>(3 * rng.uniform01()); };
    cfg.tx_array = {dim(), dim()};
    cfg.rx_array = {dim(), dim()};

    PathSet& ps = fc.ps;
    ps.monostatic = rng.uniform01() < 0.3;
    ps.tx.position = {0, 0, 1.5};
    ps.tx.boresight = {1, 0, 0};
    ps.rx.position = ps.monostatic ? ps.tx.position : isac::Vec3{30, 5, 2.0};
    ps.rx.boresight = {-1, 0, 0};
    ps.noise_power_w = 1e-13 * (0.5 + rng.uniform01());

    const int n_paths = 1 + static_cast<int>(4 * rng.uniform01());
    const int target_index = static_cast<int>(n_paths * rng.uniform01());
    for (int i = 0; i < n_paths; ++i) {
        PropagationPath p;
        const bool is_target = i == target_index && rng.uniform01() < 0.8;
        p.kind = is_target ? isac::PathKind::target_scatter
                           : (rng.uniform01() < 0.5 ? isac::PathKind::los
                                                    : isac::PathKind::specular);
        if (is_target) p.associated_target = 0;
        p.delay_s = 20e-9 + 400e-9 * rng.uniform01();
        p.aod_az_rad = -1.0 + 2.0 * rng.uniform01();
        p.aoa_az_rad = -1.0 + 2.0 * rng.uniform01();
        if (rng.uniform01() < 0.5) {
            p.aod_el_rad = -0.5 + 1.0 * rng.uniform01();
            p.aoa_el_rad = -0.5 + 1.0 * rng.uniform01();
        }
        if (ps.monostatic) {
            p.aoa_az_rad = p.aod_az_rad;
            p.aoa_el_rad = p.aod_el_rad;
        }
        const double mag = std::pow(10.0, -4.0 - 3.0 * rng.uniform01());
        const double phase = 2.0 * M_PI * rng.uniform01();
        p.gain = std::polar(mag, phase);
        ps.paths.push_back(p);
    }
    return fc;
}

}  // namespace fimtest
