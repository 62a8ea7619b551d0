#pragma once

#include <complex>
#include <vector>

namespace isac::detail {

/// Unscaled forward DFT, X[k] = sum_n x[n] exp(-j 2 pi k n / N).
std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& x);

/// Inverse DFT scaled by 1/N, so ifft(fft(x)) == x.
std::vector<std::complex<double>> ifft(const std::vector<std::complex<double>>& x);

}  // namespace isac::detail
