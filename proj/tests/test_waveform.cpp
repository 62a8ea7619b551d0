#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "isac/waveform.hpp"

using namespace isac;

TEST_CASE("presets carry the documented parameters") {
    const WaveformConfig lo = preset(Band::fr3_10ghz);
    CHECK(lo.carrier_freq_hz == doctest::Approx(10e9));
    CHECK(lo.scs_hz == doctest::Approx(30e3));
    CHECK(lo.n_subcarriers == 792);
    CHECK(lo.tx_array.rows == 2);
    CHECK(lo.tx_array.cols == 2);
    CHECK(lo.n_symbols() == 16);

    const WaveformConfig hi = preset(Band::fr2_60ghz);
    CHECK(hi.carrier_freq_hz == doctest::Approx(60e9));
    CHECK(hi.scs_hz == doctest::Approx(120e3));
    CHECK(hi.tx_array.rows == 4);
    CHECK(hi.rx_array.cols == 4);
    CHECK(hi.n_symbols() == 256);
}

TEST_CASE("band names round-trip and reject junk") {
    CHECK(band_from_name("fr3_10ghz") == Band::fr3_10ghz);
    CHECK(band_from_name("fr2_60ghz") == Band::fr2_60ghz);
    CHECK(band_name(Band::fr2_60ghz) == "fr2_60ghz");
    CHECK_THROWS_AS(band_from_name("fr1"), std::invalid_argument);
}

TEST_CASE("resolution formulas against hand arithmetic") {
    const WaveformConfig lo = preset(Band::fr3_10ghz);
    const WaveformConfig hi = preset(Band::fr2_60ghz);

    // Range: c / (2 B).
    CHECK(range_resolution_m(lo) ==
          doctest::Approx(299792458.0 / (2.0 * 792 * 30e3)).epsilon(1e-12));
    CHECK(range_resolution_m(hi) ==
          doctest::Approx(299792458.0 / (2.0 * 792 * 120e3)).epsilon(1e-12));

    // Frame: n_symbols * (1 + cp) / scs.
    CHECK(frame_duration_s(lo) == doctest::Approx(16 * 1.0703 / 30e3).epsilon(1e-12));
    CHECK(frame_duration_s(hi) == doctest::Approx(256 * 1.0703 / 120e3).epsilon(1e-12));

    // Velocity: lambda / (2 T_frame).
    const double lam_hi = 299792458.0 / 60e9;
    CHECK(velocity_resolution_mps(hi) ==
          doctest::Approx(lam_hi / (2.0 * 256 * 1.0703 / 120e3)).epsilon(1e-12));

    // Angle: 0.89 lambda / ((n - 1) spacing); half-wavelength spacing cancels lambda.
    CHECK(angular_resolution_rad(lo, Side::tx, AngleAxis::az) ==
          doctest::Approx(0.89 * 2.0 / (2 - 1)).epsilon(1e-12));
    CHECK(angular_resolution_rad(hi, Side::rx, AngleAxis::el) ==
          doctest::Approx(0.89 * 2.0 / (4 - 1)).epsilon(1e-12));
}

TEST_CASE("single-element axis has no angular resolution") {
    WaveformConfig cfg = preset(Band::fr3_10ghz);
    cfg.rx_array = {1, 4};
    CHECK(std::isinf(angular_resolution_rad(cfg, Side::rx, AngleAxis::el)));
    CHECK(std::isfinite(angular_resolution_rad(cfg, Side::rx, AngleAxis::az)));
}

TEST_CASE("power and noise") {
    WaveformConfig cfg = preset(Band::fr3_10ghz);
    CHECK(cfg.tx_power_w() == doctest::Approx(0.1).epsilon(1e-12));  // 20 dBm

    // Thermal PSD -174 dBm/Hz + 8 dB NF over 23.76 MHz.
    const double psd_w = std::pow(10.0, (-174.0 + 8.0) / 10.0 - 3.0);
    CHECK(noise_power_w(cfg) == doctest::Approx(psd_w * 792 * 30e3).epsilon(1e-12));
    CHECK(noise_power_w(cfg) == doctest::Approx(5.968242e-13).epsilon(1e-6));
}

TEST_CASE("spacing defaults to half wavelength") {
    WaveformConfig cfg = preset(Band::fr2_60ghz);
    CHECK(cfg.spacing_m() == doctest::Approx(cfg.wavelength_m() / 2).epsilon(1e-12));
    cfg.element_spacing_m = 0.004;
    CHECK(cfg.spacing_m() == doctest::Approx(0.004));
}

TEST_CASE("fft codebook is unitary") {
    const BeamCodebook cb = fft_codebook(8);
    REQUIRE(cb.n_beams() == 8);
    for (int b1 = 0; b1 < 8; ++b1) {
        for (int b2 = 0; b2 < 8; ++b2) {
            std::complex<double> ip{0.0, 0.0};
            for (int e = 0; e < 8; ++e) ip += std::conj(cb.weights[b1][e]) * cb.weights[b2][e];
            CHECK(std::abs(ip - (b1 == b2 ? 1.0 : 0.0)) < 1e-12);
        }
    }
}
