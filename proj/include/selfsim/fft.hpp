#pragma once

#include <complex>
#include <vector>

namespace selfsim {

/// Unnormalized forward DFT, X[j] = sum_k x[k] exp(-2*pi*i*j*k/n).
/// Arbitrary n. Backed by FFTW with deterministic (FFTW_ESTIMATE) plans.
std::vector<std::complex<double>> fft_forward(const std::vector<std::complex<double>>& input);

} // namespace selfsim
