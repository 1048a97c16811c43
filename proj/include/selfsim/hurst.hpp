#pragma once

#include "selfsim/traffic_model.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace selfsim {

enum class HurstMethod { Rs, Dfa, AggVar };

std::string to_string(HurstMethod method);
HurstMethod hurst_method_from_string(const std::string& name);

/// Geometric grid of block sizes / window lengths for the log-log fits.
/// Scales run from min_scale up to max_scale_fraction * length with
/// points_per_decade points per decade (rounded, deduplicated). At least
/// four distinct scales must fit or estimation is refused.
struct ScaleGrid {
    std::size_t min_scale = 8;
    double max_scale_fraction = 0.25;
    int points_per_decade = 8;
};

struct HurstEstimate {
    double hurst = 0.0;
    HurstMethod method = HurstMethod::Dfa;
    double slope = 0.0;
    double intercept = 0.0; // base-10
    double r_squared = 0.0;
    std::size_t scales_used = 0;
};

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Ordinary least squares of log10(statistic) on log10(scale).
/// Requires at least four strictly positive points. A constant statistic
/// yields slope 0 with r_squared reported as 1 (the fit is exact).
FitResult loglog_fit(std::span<const std::pair<double, double>> points);

std::vector<std::size_t> build_scales(const ScaleGrid& grid, std::size_t length);

/// Rescaled-range analysis: per scale n, average R/S over the floor(N/n)
/// complete blocks (range of mean-adjusted cumulative sums over the block
/// standard deviation); H is the log-log slope. Blocks with zero standard
/// deviation are skipped; scales where every block degenerates are dropped.
HurstEstimate estimate_rs(std::span<const double> series, const ScaleGrid& grid = {});

/// Detrended fluctuation analysis of the given polynomial order on the
/// cumulative sum of the mean-centered series; H is the log-log slope of
/// the RMS residual F(n).
HurstEstimate estimate_dfa(std::span<const double> series, const ScaleGrid& grid = {},
                           int order = 1);

/// Aggregated-variance method: variance of block means decays as
/// m^(2H-2), so H = 1 + slope/2.
HurstEstimate estimate_aggvar(std::span<const double> series, const ScaleGrid& grid = {});

HurstEstimate estimate_hurst(std::span<const double> series, HurstMethod method,
                             const ScaleGrid& grid = {}, int order = 1);

HurstEstimate estimate_rs(const TrafficTrace& trace, const ScaleGrid& grid = {});
HurstEstimate estimate_dfa(const TrafficTrace& trace, const ScaleGrid& grid = {}, int order = 1);
HurstEstimate estimate_aggvar(const TrafficTrace& trace, const ScaleGrid& grid = {});
HurstEstimate estimate_hurst(const TrafficTrace& trace, HurstMethod method,
                             const ScaleGrid& grid = {}, int order = 1);

} // namespace selfsim
