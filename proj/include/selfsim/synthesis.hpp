#pragma once

#include <cstdint>
#include <vector>

namespace selfsim {

enum class FormingKind { Fgn, White, Ar1 };

/// Zero-mean, unit-variance forming-process realization. Every generator
/// standardizes its output so that the sample mean is 0 and the sample
/// (population) variance is 1 to within 1e-9.
struct GaussianSeries {
    std::vector<double> values;
    FormingKind kind = FormingKind::White;
    double hurst = 0.5; // target H for Fgn; 0.5 nominal otherwise
    double phi = 0.0;   // Ar1 only
    std::uint64_t seed = 0;
};

struct FgnParams {
    double hurst = 0.8;
    std::size_t length = 0;
    std::uint64_t seed = 0;
};

struct Ar1Params {
    double phi = 0.5;
    std::size_t length = 0;
    std::uint64_t seed = 0;
};

/// Autocovariance of unit-variance fractional Gaussian noise,
/// gamma(k) = ((k+1)^2H - 2 k^2H + |k-1|^2H) / 2, gamma(0) = 1.
double fgn_autocovariance(double hurst, std::size_t lag);

/// Eigenvalues of the 2(length-1)-point circulant embedding of the fGn
/// autocovariance: the DFT of [gamma(0..L-1), gamma(L-2..1)]. All values
/// are nonnegative for fGn; anything in [-1e-8, 0) is numerical noise and
/// clamped to zero, anything below -1e-8 raises EmbeddingError.
std::vector<double> circulant_spectrum(double hurst, std::size_t length);

/// Exact fGn realization before standardization: the theoretical mean is
/// 0 and the theoretical autocovariance is exactly gamma(k). This is the
/// surface for covariance-fidelity checks, which per-realization
/// standardization would distort by O(N^(2H-2)).
std::vector<double> fgn_exact_realization(const FgnParams& params);

GaussianSeries generate_fgn(const FgnParams& params);
GaussianSeries generate_white(std::size_t length, std::uint64_t seed);
GaussianSeries generate_ar1(const Ar1Params& params);

/// In-place shift/scale to sample mean 0, population variance 1.
void standardize(std::vector<double>& values);

} // namespace selfsim
