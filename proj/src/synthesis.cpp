#include "selfsim/synthesis.hpp"

#include "selfsim/errors.hpp"
#include "selfsim/fft.hpp"
#include "selfsim/rng.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace selfsim {

namespace {

constexpr double kEigenvalueNoiseFloor = -1e-8;

void check_hurst(double hurst) {
    if (!(hurst > 0.0 && hurst < 1.0)) {
        throw std::domain_error("hurst must lie in (0,1), got " + std::to_string(hurst));
    }
}

void check_length(std::size_t length) {
    if (length < 2) throw std::invalid_argument("length must be at least 2");
}

std::size_t next_pow2(std::size_t x) {
    std::size_t p = 1;
    while (p < x) p <<= 1;
    return p;
}

// Monte Carlo campaigns synthesize thousands of realizations with the same
// (hurst, length); the embedding spectrum depends only on those, so it is
// memoized. std::map nodes are stable, which keeps returned references
// valid without copying. Entries are small and few per process.
const std::vector<double>& cached_spectrum(double hurst, std::size_t length) {
    static std::mutex mutex;
    static std::map<std::pair<double, std::size_t>, std::vector<double>> cache;
    const std::pair<double, std::size_t> key{hurst, length};
    {
        std::lock_guard<std::mutex> lock(mutex);
        if (const auto found = cache.find(key); found != cache.end()) return found->second;
    }
    auto spectrum = circulant_spectrum(hurst, length);
    std::lock_guard<std::mutex> lock(mutex);
    return cache.try_emplace(key, std::move(spectrum)).first->second;
}

} // namespace

double fgn_autocovariance(double hurst, std::size_t lag) {
    check_hurst(hurst);
    if (lag == 0) return 1.0;
    const double k = static_cast<double>(lag);
    const double two_h = 2.0 * hurst;
    return 0.5 * (std::pow(k + 1.0, two_h) - 2.0 * std::pow(k, two_h) + std::pow(k - 1.0, two_h));
}

std::vector<double> circulant_spectrum(double hurst, std::size_t length) {
    check_hurst(hurst);
    check_length(length);

    // First row of the circulant: gamma(0..L-1) followed by the mirrored
    // interior gamma(L-2..1), M = 2(L-1) entries in total.
    const std::size_t m = 2 * (length - 1);
    std::vector<std::complex<double>> row(m);
    for (std::size_t lag = 0; lag < length; ++lag) {
        row[lag] = fgn_autocovariance(hurst, lag);
    }
    for (std::size_t lag = 1; lag + 1 < length; ++lag) {
        row[m - lag] = row[lag];
    }

    const auto transformed = fft_forward(row);
    std::vector<double> eigenvalues(m);
    for (std::size_t j = 0; j < m; ++j) {
        double value = transformed[j].real();
        if (value < kEigenvalueNoiseFloor) {
            throw EmbeddingError("circulant eigenvalue " + std::to_string(value) +
                                 " below noise floor at index " + std::to_string(j));
        }
        eigenvalues[j] = value < 0.0 ? 0.0 : value;
    }
    return eigenvalues;
}

std::vector<double> fgn_exact_realization(const FgnParams& params) {
    check_hurst(params.hurst);
    check_length(params.length);

    // Embed in the next power-of-two circulant and truncate; a truncated
    // exact realization is still exact.
    const std::size_t m = next_pow2(2 * (params.length - 1));
    const std::size_t embed_length = m / 2 + 1;
    const auto& eigenvalues = cached_spectrum(params.hurst, embed_length);

    // Dietrich-Newsam sampling: load each Fourier mode with an
    // independent complex Gaussian weighted by sqrt(eigenvalue / M); the
    // real part of the DFT is then exactly fGn.
    NormalSampler sampler(params.seed);
    std::vector<std::complex<double>> modes(m);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double u = sampler.next();
        const double v = sampler.next();
        const double amplitude = std::sqrt(eigenvalues[j] * inv_m);
        modes[j] = std::complex<double>(amplitude * u, amplitude * v);
    }
    const auto field = fft_forward(modes);

    std::vector<double> values(params.length);
    for (std::size_t t = 0; t < params.length; ++t) values[t] = field[t].real();
    return values;
}

void standardize(std::vector<double>& values) {
    const std::size_t n = values.size();
    if (n < 2) throw std::invalid_argument("standardize: need at least 2 values");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);
    if (var <= 0.0) throw std::domain_error("standardize: zero variance");
    const double inv_sd = 1.0 / std::sqrt(var);
    for (double& v : values) v = (v - mean) * inv_sd;
}

GaussianSeries generate_fgn(const FgnParams& params) {
    GaussianSeries series;
    series.values = fgn_exact_realization(params);
    standardize(series.values);
    series.kind = FormingKind::Fgn;
    series.hurst = params.hurst;
    series.seed = params.seed;
    return series;
}

GaussianSeries generate_white(std::size_t length, std::uint64_t seed) {
    check_length(length);
    GaussianSeries series;
    series.values.resize(length);
    NormalSampler sampler(seed);
    sampler.fill(series.values);
    standardize(series.values);
    series.kind = FormingKind::White;
    series.seed = seed;
    return series;
}

GaussianSeries generate_ar1(const Ar1Params& params) {
    if (!(std::abs(params.phi) < 1.0)) {
        throw std::domain_error("ar1 phi must satisfy |phi| < 1");
    }
    check_length(params.length);

    // Burn-in: ten correlation lengths, at least 100 samples.
    const double corr_length = std::ceil(1.0 / (1.0 - std::abs(params.phi)));
    const std::size_t burn_in =
        std::max<std::size_t>(100, 10 * static_cast<std::size_t>(corr_length));

    NormalSampler sampler(params.seed);
    GaussianSeries series;
    series.values.resize(params.length);
    double state = sampler.next();
    for (std::size_t t = 1; t < burn_in; ++t) {
        state = params.phi * state + sampler.next();
    }
    for (std::size_t t = 0; t < params.length; ++t) {
        state = params.phi * state + sampler.next();
        series.values[t] = state;
    }
    standardize(series.values);
    series.kind = FormingKind::Ar1;
    series.phi = params.phi;
    series.seed = params.seed;
    return series;
}

} // namespace selfsim
