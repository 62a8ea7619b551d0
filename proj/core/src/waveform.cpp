#include "isac/waveform.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace isac {

double WaveformConfig::tx_power_w() const { return std::pow(10.0, tx_power_dbm / 10.0 - 3.0); }

WaveformConfig preset(Band band) {
    WaveformConfig cfg;
    if (band == Band::fr3_10ghz) {
        cfg.carrier_freq_hz = 10e9;
        cfg.scs_hz = 30e3;
        cfg.tx_array = {2, 2};
        cfg.rx_array = {2, 2};
    } else {
        cfg.carrier_freq_hz = 60e9;
        cfg.scs_hz = 120e3;
        cfg.tx_array = {4, 4};
        cfg.rx_array = {4, 4};
    }
    return cfg;
}

Band band_from_name(const std::string& name) {
    if (name == "fr3_10ghz") return Band::fr3_10ghz;
    if (name == "fr2_60ghz") return Band::fr2_60ghz;
    throw std::invalid_argument("unknown preset '" + name + "'");
}

std::string band_name(Band band) {
    return band == Band::fr3_10ghz ? "fr3_10ghz" : "fr2_60ghz";
}

double range_resolution_m(const WaveformConfig& cfg) {
    return kSpeedOfLight / (2.0 * cfg.bandwidth_hz());
}

double frame_duration_s(const WaveformConfig& cfg) {
    return cfg.n_symbols() * (1.0 + cfg.cp_overhead_fraction) / cfg.scs_hz;
}

double velocity_resolution_mps(const WaveformConfig& cfg) {
    return cfg.wavelength_m() / (2.0 * frame_duration_s(cfg));
}

double angular_resolution_rad(const WaveformConfig& cfg, Side side, AngleAxis axis) {
    const ArrayShape& a = side == Side::tx ? cfg.tx_array : cfg.rx_array;
    const int n = axis == AngleAxis::az ? a.cols : a.rows;
    if (n < 2) return std::numeric_limits<double>::infinity();
    const double aperture = (n - 1) * cfg.spacing_m();
    return 0.89 * cfg.wavelength_m() / aperture;
}

BeamCodebook fft_codebook(int n_elements) {
    if (n_elements < 1) throw std::invalid_argument("fft_codebook: n_elements must be >= 1");
    BeamCodebook cb;
    cb.weights.resize(n_elements);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_elements));
    for (int m = 0; m < n_elements; ++m) {
        cb.weights[m].resize(n_elements);
        for (int e = 0; e < n_elements; ++e) {
            const double phase = -2.0 * std::numbers::pi * e * m / n_elements;
            cb.weights[m][e] = std::polar(scale, phase);
        }
    }
    return cb;
}

double noise_power_w(const WaveformConfig& cfg) {
    const double psd_w_per_hz = std::pow(10.0, (-174.0 + cfg.noise_figure_db) / 10.0 - 3.0);
    return psd_w_per_hz * cfg.bandwidth_hz();
}

}  // namespace isac
