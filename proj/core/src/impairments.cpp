#include "isac/impairments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "fft.hpp"
#include "isac/waveform.hpp"  // kSpeedOfLight

namespace isac {

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

/// Median with even-count averaging, over a copy.
double median(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median of empty sample");
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void run_pool(int n_jobs, int workers, const std::function<void(int)>& job) {
    workers = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min(workers, n_jobs));
    std::atomic<int> next{0};
    auto loop = [&]() {
        for (;;) {
            const int i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n_jobs) break;
            job(i);
        }
    };
    if (workers == 1) {
        loop();
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int i = 0; i < workers; ++i) threads.emplace_back(loop);
    for (std::thread& t : threads) t.join();
}

}  // namespace

double PaModel::a_sat() const {
    if (!(a3 > 0.0)) throw std::invalid_argument("pa model: a3 must be positive");
    return 1.0 / std::sqrt(3.0 * a3);
}

double pa_input_scale(const PaModel& pa) { return pa.a_sat() * std::pow(10.0, -pa.backoff_db / 20.0); }

std::vector<cd> apply_pa(const std::vector<cd>& x, const PaModel& pa) {
    const double g = pa_input_scale(pa);
    std::vector<cd> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const cd xs = g * x[i];
        y[i] = xs * (1.0 - pa.a3 * std::norm(xs));
    }
    return y;
}

std::vector<cd> random_qam64(Rng& rng, int n) {
    static constexpr double lv[8] = {-7.0, -5.0, -3.0, -1.0, 1.0, 3.0, 5.0, 7.0};
    const double s = 1.0 / std::sqrt(42.0);
    std::vector<cd> out(static_cast<std::size_t>(n));
    for (auto& v : out) {
        const double re = lv[rng.uniform8()];
        const double im = lv[rng.uniform8()];
        v = cd{re * s, im * s};
    }
    return out;
}

std::vector<double> rrc_spectral_response(int n_total, int oversampling, double beta) {
    if (n_total < 1 || oversampling < 1)
        throw std::invalid_argument("rrc_spectral_response: sizes must be >= 1");
    if (beta < 0.0 || beta > 1.0)
        throw std::invalid_argument("rrc_spectral_response: beta must be in [0, 1]");
    const double rate = 1.0 / oversampling;
    const double lo = (1.0 - beta) * rate / 2.0;
    const double hi = (1.0 + beta) * rate / 2.0;
    std::vector<double> p(static_cast<std::size_t>(n_total), 0.0);
    for (int k = 0; k < n_total; ++k) {
        const double f = k <= n_total / 2 ? static_cast<double>(k) / n_total
                                          : static_cast<double>(k - n_total) / n_total;
        const double af = std::abs(f);
        if (af <= lo)
            p[k] = 1.0;
        else if (af <= hi && beta > 0.0)
            p[k] = std::sqrt(0.5 * (1.0 + std::cos(kPi / (beta * rate) * (af - lo))));
    }
    return p;
}

RangeAmbiguityProfile range_ambiguity_profile(const std::vector<cd>& tx_freq,
                                              const std::vector<cd>& rx_freq) {
    if (tx_freq.empty() || tx_freq.size() != rx_freq.size())
        throw std::invalid_argument("range_ambiguity_profile: sequences must match and be nonempty");
    double power = 0.0;
    for (const cd& v : tx_freq) power += std::norm(v);
    const double thresh = 1e-12 * std::sqrt(power / tx_freq.size());
    RangeAmbiguityProfile out;
    std::vector<cd> h(tx_freq.size(), cd{0.0, 0.0});
    for (std::size_t k = 0; k < tx_freq.size(); ++k) {
        if (std::abs(tx_freq[k]) >= thresh)
            h[k] = rx_freq[k] / tx_freq[k];
        else
            ++out.excluded_bins;
    }
    const std::vector<cd> g = detail::ifft(h);
    std::vector<double> mag(g.size());
    double mx = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        mag[i] = std::abs(g[i]);
        mx = std::max(mx, mag[i]);
    }
    if (!(mx > 0.0))
        throw std::runtime_error("range_ambiguity_profile: every tx bin was excluded");
    out.db.resize(mag.size());
    for (std::size_t i = 0; i < mag.size(); ++i)
        out.db[i] = 20.0 * std::log10(std::max(mag[i], 1e-300) / mx);
    return out;
}

double profile_floor_db(const std::vector<double>& profile_db, int guard_bins) {
    const int n = static_cast<int>(profile_db.size());
    if (guard_bins < 0 || 2 * guard_bins + 1 >= n)
        throw std::invalid_argument("profile_floor_db: guard window covers the whole profile");
    const int pk = static_cast<int>(
        std::max_element(profile_db.begin(), profile_db.end()) - profile_db.begin());
    std::vector<double> tail;
    tail.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int fwd = (i - pk + n) % n;
        const int back = (pk - i + n) % n;
        if (std::min(fwd, back) > guard_bins) tail.push_back(profile_db[i]);
    }
    return median(std::move(tail));
}

RafStudy run_raf_study(const RafConfig& cfg) {
    if (cfg.blocks < 1) throw std::invalid_argument("raf study: blocks must be >= 1");
    if (cfg.block_len < 2) throw std::invalid_argument("raf study: block_len must be >= 2");
    if (cfg.oversampling < 1) throw std::invalid_argument("raf study: oversampling must be >= 1");
    const int n_sc = cfg.block_len;
    const int n_tot = n_sc * cfg.oversampling;
    const std::vector<double> shape = rrc_spectral_response(n_tot, cfg.oversampling, cfg.rrc_beta);
    const double norm_ofdm = std::sqrt(1.0 / n_sc);
    double shape_power = 0.0;
    for (double v : shape) shape_power += v * v;
    const double norm_sc = std::sqrt(n_sc * shape_power / (static_cast<double>(n_tot) * n_tot));
    const double g_pa = pa_input_scale(cfg.pa);

    enum Wave { ofdm_clean = 0, ofdm_pa = 1, sc_clean = 2, sc_pa = 3 };
    std::vector<std::vector<std::vector<double>>> prof(4);
    for (auto& p : prof) p.resize(static_cast<std::size_t>(cfg.blocks));
    std::vector<int> excluded_ofdm(cfg.blocks, 0), excluded_sc(cfg.blocks, 0);
    // Per-block (sum r^2, sum r^4, count) of the real part of the OFDM
    // frequency-domain distortion residual.
    std::vector<std::array<double, 3>> kurt_parts(cfg.blocks, {0.0, 0.0, 0.0});

    run_pool(cfg.blocks, cfg.workers, [&](int b) {
        Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(b)));
        const std::vector<cd> data = random_qam64(rng, n_sc);

        // OFDM: data straight onto subcarriers, unit nominal time power.
        std::vector<cd> x_ofdm = detail::ifft(data);
        for (cd& v : x_ofdm) v /= norm_ofdm;
        std::vector<cd> ref_ofdm(data.size());
        for (std::size_t k = 0; k < data.size(); ++k) ref_ofdm[k] = data[k] / norm_ofdm;
        {
            const std::vector<cd> y = detail::fft(x_ofdm);
            RangeAmbiguityProfile p = range_ambiguity_profile(ref_ofdm, y);
            excluded_ofdm[b] = p.excluded_bins;
            prof[ofdm_clean][b] = std::move(p.db);
        }
        {
            const std::vector<cd> y = detail::fft(apply_pa(x_ofdm, cfg.pa));
            std::vector<cd> ref(ref_ofdm.size());
            for (std::size_t k = 0; k < ref.size(); ++k) ref[k] = g_pa * ref_ofdm[k];
            RangeAmbiguityProfile p = range_ambiguity_profile(ref, y);
            prof[ofdm_pa][b] = std::move(p.db);
            cd num{0.0, 0.0}, den{0.0, 0.0};
            for (std::size_t k = 0; k < ref.size(); ++k) {
                num += std::conj(ref[k]) * y[k];
                den += std::conj(ref[k]) * ref[k];
            }
            const cd g_lin = num / den;
            for (std::size_t k = 0; k < ref.size(); ++k) {
                const double r = std::real(y[k] - g_lin * ref[k]);
                kurt_parts[b][0] += r * r;
                kurt_parts[b][1] += r * r * r * r;
                kurt_parts[b][2] += 1.0;
            }
        }

        // Single carrier: RRC-shaped, oversampled spectrum of the same data.
        const std::vector<cd> data_f = detail::fft(data);
        std::vector<cd> spec(static_cast<std::size_t>(n_tot));
        for (int k = 0; k < n_tot; ++k) spec[k] = shape[k] * data_f[k % n_sc];
        std::vector<cd> x_sc = detail::ifft(spec);
        for (cd& v : x_sc) v /= norm_sc;
        std::vector<cd> ref_sc(spec.size());
        for (std::size_t k = 0; k < spec.size(); ++k) ref_sc[k] = spec[k] / norm_sc;
        {
            const std::vector<cd> y = detail::fft(x_sc);
            RangeAmbiguityProfile p = range_ambiguity_profile(ref_sc, y);
            excluded_sc[b] = p.excluded_bins;
            prof[sc_clean][b] = std::move(p.db);
        }
        {
            const std::vector<cd> y = detail::fft(apply_pa(x_sc, cfg.pa));
            std::vector<cd> ref(ref_sc.size());
            for (std::size_t k = 0; k < ref.size(); ++k) ref[k] = g_pa * ref_sc[k];
            RangeAmbiguityProfile p = range_ambiguity_profile(ref, y);
            prof[sc_pa][b] = std::move(p.db);
        }
    });

    RafStudy out;
    auto median_profile = [&](Wave w) {
        const int bins = static_cast<int>(prof[w][0].size());
        std::vector<double> med(static_cast<std::size_t>(bins));
        std::vector<double> col(static_cast<std::size_t>(cfg.blocks));
        for (int k = 0; k < bins; ++k) {
            for (int b = 0; b < cfg.blocks; ++b) col[b] = prof[w][b][k];
            med[k] = median(col);
        }
        return med;
    };
    out.ofdm_clean_db = median_profile(ofdm_clean);
    out.ofdm_pa_db = median_profile(ofdm_pa);
    out.sc_clean_db = median_profile(sc_clean);
    out.sc_pa_db = median_profile(sc_pa);
    out.floor_ofdm_clean_db = profile_floor_db(out.ofdm_clean_db);
    out.floor_ofdm_pa_db = profile_floor_db(out.ofdm_pa_db);
    out.floor_sc_clean_db = profile_floor_db(out.sc_clean_db);
    out.floor_sc_pa_db = profile_floor_db(out.sc_pa_db);
    out.excluded_bins_ofdm = *std::max_element(excluded_ofdm.begin(), excluded_ofdm.end());
    out.excluded_bins_sc = *std::max_element(excluded_sc.begin(), excluded_sc.end());
    double m2 = 0.0, m4 = 0.0, count = 0.0;
    for (const auto& part : kurt_parts) {
        m2 += part[0];
        m4 += part[1];
        count += part[2];
    }
    m2 /= count;
    m4 /= count;
    out.distortion_excess_kurtosis = m4 / (m2 * m2) - 3.0;
    return out;
}

double pn_increment_variance(const PnModel& pn, double carrier_hz) {
    if (pn.linewidth_hz < 0.0) throw std::invalid_argument("pn model: negative linewidth");
    if (!(pn.ref_carrier_hz > 0.0) || !(pn.sample_rate_hz > 0.0) || !(carrier_hz > 0.0))
        throw std::invalid_argument("pn model: carrier and rates must be positive");
    const double ratio = carrier_hz / pn.ref_carrier_hz;
    return 2.0 * kPi * pn.linewidth_hz * ratio * ratio / pn.sample_rate_hz;
}

namespace {

/// One Wiener path, differenced at two integer sample delays. `d_max` sets the
/// history length and must be >= max(n_ch, n_lo); sharing it across calls
/// keeps a fixed rng-to-sample alignment (common random numbers).
std::vector<double> differential_pn_path(double increment_sigma, int n_samples, int n_ch, int n_lo,
                                         int d_max, Rng& rng) {
    std::vector<double> phi(static_cast<std::size_t>(n_samples) + d_max + 1);
    phi[0] = 0.0;
    for (std::size_t i = 1; i < phi.size(); ++i) phi[i] = phi[i - 1] + increment_sigma * rng.normal();
    std::vector<double> psi(static_cast<std::size_t>(n_samples));
    for (int k = 0; k < n_samples; ++k) psi[k] = phi[k + d_max - n_ch] - phi[k + d_max - n_lo];
    return psi;
}

}  // namespace

std::vector<double> simulate_differential_pn(const PnModel& pn, double carrier_hz,
                                             double tau_channel_s, double tau_lo_s, int n_samples,
                                             Rng& rng) {
    if (tau_channel_s < 0.0 || tau_lo_s < 0.0)
        throw std::invalid_argument("simulate_differential_pn: negative delay");
    if (n_samples < 1) throw std::invalid_argument("simulate_differential_pn: n_samples must be >= 1");
    const double sigma = std::sqrt(pn_increment_variance(pn, carrier_hz));
    const int n_ch = static_cast<int>(std::lround(tau_channel_s * pn.sample_rate_hz));
    const int n_lo = static_cast<int>(std::lround(tau_lo_s * pn.sample_rate_hz));
    return differential_pn_path(sigma, n_samples, n_ch, n_lo, std::max(n_ch, n_lo), rng);
}

std::vector<double> make_tau_lo_sweep(double tau_channel_s, double mismatch_max_s, int points) {
    if (points < 1) throw std::invalid_argument("make_tau_lo_sweep: points must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        out[i] = tau_channel_s +
                 (points > 1 ? mismatch_max_s * i / (points - 1) : 0.0);
    return out;
}

double estimate_delay_s(const std::vector<cd>& h, double scs_hz) {
    const int n = static_cast<int>(h.size());
    if (n < 2) throw std::invalid_argument("estimate_delay_s: need at least 2 subcarriers");
    double dsum = 0.0;
    for (int k = 0; k + 1 < n; ++k) dsum += std::arg(h[k + 1] * std::conj(h[k]));
    const double tau0 = -dsum / (n - 1) / (2.0 * kPi * scs_hz);
    const double n_mean = (n - 1) / 2.0;
    double num = 0.0, den = 0.0;
    for (int k = 0; k < n; ++k) {
        const double r = std::arg(h[k] * std::polar(1.0, 2.0 * kPi * k * scs_hz * tau0));
        const double nn = k - n_mean;
        num += nn * r;
        den += nn * nn;
    }
    return tau0 - (num / den) / (2.0 * kPi * scs_hz);
}

PnSweepResult pn_range_error_sweep(const PnSweepConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("pn sweep: trials must be >= 1");
    if (cfg.n_subcarriers < 2) throw std::invalid_argument("pn sweep: need >= 2 subcarriers");
    if (cfg.tau_lo_s.empty()) throw std::invalid_argument("pn sweep: empty tau_lo list");
    if (!(cfg.bandwidth_hz > 0.0)) throw std::invalid_argument("pn sweep: bandwidth must be positive");
    PnModel pn = cfg.pn;
    pn.sample_rate_hz = cfg.bandwidth_hz;  // PN sampled at the OFDM span
    const double sigma = std::sqrt(pn_increment_variance(pn, cfg.carrier_hz));
    const double scs = cfg.bandwidth_hz / cfg.n_subcarriers;
    const int n = cfg.n_subcarriers;
    const int n_ch = static_cast<int>(std::lround(cfg.tau_channel_s * pn.sample_rate_hz));
    int d_max = n_ch;
    std::vector<int> n_lo(cfg.tau_lo_s.size());
    for (std::size_t i = 0; i < cfg.tau_lo_s.size(); ++i) {
        if (cfg.tau_lo_s[i] < 0.0) throw std::invalid_argument("pn sweep: negative tau_lo");
        n_lo[i] = static_cast<int>(std::lround(cfg.tau_lo_s[i] * pn.sample_rate_hz));
        d_max = std::max(d_max, n_lo[i]);
    }

    PnSweepResult out;
    out.tau_lo_s = cfg.tau_lo_s;
    out.mismatch_s.resize(cfg.tau_lo_s.size());
    out.mean_abs_range_error_m.assign(cfg.tau_lo_s.size(), 0.0);
    for (std::size_t i = 0; i < cfg.tau_lo_s.size(); ++i)
        out.mismatch_s[i] = cfg.tau_lo_s[i] - cfg.tau_channel_s;

    run_pool(static_cast<int>(cfg.tau_lo_s.size()), cfg.workers, [&](int i) {
        double err_sum = 0.0;
        std::vector<cd> h(static_cast<std::size_t>(n));
        for (int t = 0; t < cfg.trials; ++t) {
            Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(t)));
            const std::vector<double> psi =
                differential_pn_path(sigma, n, n_ch, n_lo[i], d_max, rng);
            for (int k = 0; k < n; ++k)
                h[k] = std::polar(1.0, -2.0 * kPi * k * scs * cfg.tau_channel_s + psi[k]);
            const double tau_hat = estimate_delay_s(h, scs);
            err_sum += std::abs(tau_hat - cfg.tau_channel_s) * kSpeedOfLight / 2.0;
        }
        out.mean_abs_range_error_m[i] = err_sum / cfg.trials;
    });
    return out;
}

}  // namespace isac
