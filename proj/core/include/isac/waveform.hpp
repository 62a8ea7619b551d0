#pragma once

#include <complex>
#include <string>
#include <vector>

namespace isac {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s, exact

enum class Band { fr3_10ghz, fr2_60ghz };

struct ArrayShape {
    int rows = 1;
    int cols = 1;
    int count() const { return rows * cols; }
};

/// OFDM + array + beam-codebook parameters. One OFDM symbol is spent per
/// (tx beam, rx beam) pair, so n_symbols() equals the product of the element
/// counts for the full-sweep DFT codebook.
struct WaveformConfig {
    double carrier_freq_hz = 10e9;
    double scs_hz = 30e3;            // sub-carrier spacing
    int n_subcarriers = 792;
    double tx_power_dbm = 20.0;
    double cp_overhead_fraction = 0.0703;
    ArrayShape tx_array{2, 2};
    ArrayShape rx_array{2, 2};
    double element_spacing_m = 0.0;  // 0 means half wavelength
    double noise_figure_db = 8.0;

    int n_symbols() const { return tx_array.count() * rx_array.count(); }
    double bandwidth_hz() const { return n_subcarriers * scs_hz; }
    double wavelength_m() const { return kSpeedOfLight / carrier_freq_hz; }
    double tx_power_w() const;
    double spacing_m() const {
        return element_spacing_m > 0.0 ? element_spacing_m : wavelength_m() / 2.0;
    }
};

WaveformConfig preset(Band band);

Band band_from_name(const std::string& name);     // throws std::invalid_argument
std::string band_name(Band band);

double range_resolution_m(const WaveformConfig& cfg);
double frame_duration_s(const WaveformConfig& cfg);
double velocity_resolution_mps(const WaveformConfig& cfg);

enum class Side { tx, rx };
enum class AngleAxis { az, el };

/// 0.89 * wavelength / aperture with aperture (n_axis - 1) * spacing.
/// The azimuth axis maps to array columns, elevation to rows. Returns +inf
/// when the axis has a single element (angle domain unusable).
double angular_resolution_rad(const WaveformConfig& cfg, Side side, AngleAxis axis);

/// Unit-norm DFT beams; weights[beam][element]. Pairwise orthogonal.
struct BeamCodebook {
    std::vector<std::vector<std::complex<double>>> weights;
    int n_beams() const { return static_cast<int>(weights.size()); }
};

BeamCodebook fft_codebook(int n_elements);

/// Full-bandwidth receiver noise power in watts: thermal PSD (-174 dBm/Hz)
/// plus the configured noise figure, over bandwidth_hz().
double noise_power_w(const WaveformConfig& cfg);

}  // namespace isac
