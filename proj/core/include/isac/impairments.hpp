#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "isac/rng.hpp"

namespace isac {

/// Memoryless cubic power-amplifier model y = x (1 - a3 |x|^2), saturating at
/// input amplitude A_sat = 1/sqrt(3 a3) (the cubic's stationary point).
struct PaModel {
    double a3 = 1.0 / 3.0;   // third-order coefficient; default puts A_sat = 1
    double backoff_db = 0.0; // input back-off of a unit-power signal below A_sat

    double a_sat() const;
};

/// Drive gain applied to a nominally unit-mean-power input so its RMS sits
/// backoff_db below A_sat: g = A_sat * 10^(-backoff_db / 20).
double pa_input_scale(const PaModel& pa);

/// Applies the drive gain then the cubic map to every sample. The global gain
/// is kept in the output; reciprocal-filtering consumers divide it back out.
/// Memoryless: permuting inputs permutes outputs identically.
std::vector<std::complex<double>> apply_pa(const std::vector<std::complex<double>>& x,
                                           const PaModel& pa);

/// n unit-average-power 64-QAM symbols (levels {±1, ±3, ±5, ±7} / sqrt(42)).
std::vector<std::complex<double>> random_qam64(Rng& rng, int n);

/// Root-raised-cosine amplitude response sampled on the length-n_total DFT
/// frequency grid (bin k maps to f = k/n for k <= n/2, (k - n)/n above), for
/// symbol rate 1/oversampling and roll-off beta.
std::vector<double> rrc_spectral_response(int n_total, int oversampling, double beta);

/// Delay-domain ambiguity profile of a reciprocal-filtered block.
struct RangeAmbiguityProfile {
    std::vector<double> db;  // per-bin magnitude, dB relative to the peak
    int excluded_bins = 0;   // tx bins below 1e-12 * rms, zeroed before the IDFT
};

/// Divides rx by tx per frequency bin (excluding near-null tx bins), inverse
/// transforms, and normalizes the peak to 0 dB.
RangeAmbiguityProfile range_ambiguity_profile(const std::vector<std::complex<double>>& tx_freq,
                                              const std::vector<std::complex<double>>& rx_freq);

/// Median of the profile outside a circular ±guard_bins window around the
/// peak bin.
double profile_floor_db(const std::vector<double>& profile_db, int guard_bins = 8);

/// Monte-Carlo study comparing OFDM and RRC-shaped single-carrier ambiguity
/// floors with and without the cubic PA.
struct RafConfig {
    int blocks = 200;
    int block_len = 1024;    // data symbols per block (also OFDM subcarriers)
    int oversampling = 4;    // single-carrier pulse-shaping factor
    double rrc_beta = 0.3;
    PaModel pa{};
    std::uint64_t seed = 12345;
    int workers = 1;         // result is independent of this
};

struct RafStudy {
    // Per-bin median profiles across blocks (dB relative to peak).
    std::vector<double> ofdm_clean_db, ofdm_pa_db, sc_clean_db, sc_pa_db;
    double floor_ofdm_clean_db = 0.0, floor_ofdm_pa_db = 0.0;
    double floor_sc_clean_db = 0.0, floor_sc_pa_db = 0.0;
    int excluded_bins_ofdm = 0, excluded_bins_sc = 0;   // max across blocks
    // Excess kurtosis of Re(frequency-domain PA distortion) pooled over all
    // OFDM blocks after removing the best linear fit (~0 for complex-normal).
    double distortion_excess_kurtosis = 0.0;
};

RafStudy run_raf_study(const RafConfig& cfg);

/// Free-running (Wiener) oscillator phase-noise model. The linewidth is
/// specified at ref_carrier_hz and scales by (carrier / ref_carrier)^2.
struct PnModel {
    double linewidth_hz = 100.0;
    double ref_carrier_hz = 30e9;
    double sample_rate_hz = 100e6;
};

/// Per-sample variance of the Wiener phase increment at the given carrier:
/// 2 pi * linewidth * (carrier / ref)^2 / sample_rate.
double pn_increment_variance(const PnModel& pn, double carrier_hz);

/// Residual phase psi[k] = phi(t_k - tau_channel) - phi(t_k - tau_lo) of a
/// monostatic receiver whose LO is the transmit oscillator delayed by tau_lo,
/// over n_samples samples of one Wiener path (delays rounded to the sample
/// grid). Identically zero when the delays round to the same sample.
std::vector<double> simulate_differential_pn(const PnModel& pn, double carrier_hz,
                                             double tau_channel_s, double tau_lo_s, int n_samples,
                                             Rng& rng);

struct PnSweepConfig {
    PnModel pn{};
    double carrier_hz = 30e9;
    double bandwidth_hz = 100e6;    // OFDM span; also the PN sampling rate
    int n_subcarriers = 1024;
    double tau_channel_s = 200e-9;
    std::vector<double> tau_lo_s;   // swept LO delays (>= tau_channel_s)
    int trials = 500;
    std::uint64_t seed = 777;
    int workers = 1;                // result is independent of this
};

/// Evenly spaced LO delays tau_channel + [0, mismatch_max], `points` of them.
std::vector<double> make_tau_lo_sweep(double tau_channel_s, double mismatch_max_s, int points);

struct PnSweepResult {
    std::vector<double> tau_lo_s;
    std::vector<double> mismatch_s;               // tau_lo - tau_channel
    std::vector<double> mean_abs_range_error_m;   // Monte-Carlo mean per point
};

/// Applies residual PN to an ideal single-echo OFDM channel estimate, runs a
/// phase-slope least-squares delay estimator per trial, and reports the mean
/// |delay error| * c/2 per LO delay. Trials use counter-derived seeds shared
/// across sweep points (common random numbers), so the zero-mismatch point is
/// exactly zero and curves at different carriers are directly comparable.
PnSweepResult pn_range_error_sweep(const PnSweepConfig& cfg);

/// Phase-slope least-squares delay estimate from a frequency-domain channel
/// response over subcarrier spacing scs_hz (coarse unwrapped-difference pass,
/// then a linear fit on the residual phase).
double estimate_delay_s(const std::vector<std::complex<double>>& h, double scs_hz);

}  // namespace isac
