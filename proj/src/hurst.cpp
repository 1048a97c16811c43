#include "selfsim/hurst.hpp"

#include "selfsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace selfsim {

std::string to_string(HurstMethod method) {
    switch (method) {
        case HurstMethod::Rs: return "rs";
        case HurstMethod::Dfa: return "dfa";
        case HurstMethod::AggVar: return "aggvar";
    }
    return "unknown";
}

HurstMethod hurst_method_from_string(const std::string& name) {
    if (name == "rs") return HurstMethod::Rs;
    if (name == "dfa") return HurstMethod::Dfa;
    if (name == "aggvar") return HurstMethod::AggVar;
    throw std::invalid_argument("unknown hurst method: " + name);
}

FitResult loglog_fit(std::span<const std::pair<double, double>> points) {
    if (points.size() < 4) {
        throw std::invalid_argument("loglog_fit: need at least 4 points");
    }
    double sx = 0.0, sy = 0.0;
    for (const auto& [scale, statistic] : points) {
        if (!(scale > 0.0) || !(statistic > 0.0)) {
            throw std::invalid_argument("loglog_fit: points must be strictly positive");
        }
        sx += std::log10(scale);
        sy += std::log10(statistic);
    }
    const double n = static_cast<double>(points.size());
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [scale, statistic] : points) {
        const double dx = std::log10(scale) - mx;
        const double dy = std::log10(statistic) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("loglog_fit: scales are all equal");

    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (syy > 0.0) {
        double ss_res = 0.0;
        for (const auto& [scale, statistic] : points) {
            const double residual =
                std::log10(statistic) - (fit.intercept + fit.slope * std::log10(scale));
            ss_res += residual * residual;
        }
        fit.r_squared = 1.0 - ss_res / syy;
        fit.r_squared = std::clamp(fit.r_squared, 0.0, 1.0);
    } else {
        // Constant statistic: the zero-slope line fits exactly.
        fit.r_squared = 1.0;
    }
    return fit;
}

std::vector<std::size_t> build_scales(const ScaleGrid& grid, std::size_t length) {
    if (grid.min_scale < 4) throw std::invalid_argument("scale grid: min_scale must be >= 4");
    if (!(grid.max_scale_fraction > 0.0 && grid.max_scale_fraction <= 1.0)) {
        throw std::invalid_argument("scale grid: max_scale_fraction must lie in (0,1]");
    }
    if (grid.points_per_decade < 1) {
        throw std::invalid_argument("scale grid: points_per_decade must be positive");
    }
    const auto max_scale =
        static_cast<std::size_t>(grid.max_scale_fraction * static_cast<double>(length));

    std::vector<std::size_t> scales;
    for (int i = 0;; ++i) {
        const double raw = static_cast<double>(grid.min_scale) *
                           std::pow(10.0, static_cast<double>(i) / grid.points_per_decade);
        const auto scale = static_cast<std::size_t>(std::llround(raw));
        if (scale > max_scale) break;
        if (scales.empty() || scale != scales.back()) scales.push_back(scale);
    }
    if (scales.size() < 4) {
        throw NonEstimableError("fewer than 4 scales fit the series (length " +
                                std::to_string(length) + ")");
    }
    return scales;
}

namespace {

using ScalePoints = std::vector<std::pair<double, double>>;

HurstEstimate finish(ScalePoints& points, HurstMethod method) {
    if (points.size() < 4) {
        throw NonEstimableError("fewer than 4 usable scales after dropping degenerate ones");
    }
    std::sort(points.begin(), points.end());
    const FitResult fit = loglog_fit(points);
    HurstEstimate estimate;
    estimate.method = method;
    estimate.slope = fit.slope;
    estimate.intercept = fit.intercept;
    estimate.r_squared = fit.r_squared;
    estimate.scales_used = points.size();
    estimate.hurst = method == HurstMethod::AggVar ? 1.0 + fit.slope / 2.0 : fit.slope;
    return estimate;
}

void check_series(std::span<const double> series, const ScaleGrid& grid) {
    if (series.size() < 4 * grid.min_scale) {
        throw NonEstimableError("series too short for the scale grid");
    }
}

} // namespace

HurstEstimate estimate_rs(std::span<const double> series, const ScaleGrid& grid) {
    check_series(series, grid);
    ScalePoints points;
    for (const std::size_t scale : build_scales(grid, series.size())) {
        const std::size_t blocks = series.size() / scale;
        double total = 0.0;
        std::size_t used = 0;
        for (std::size_t b = 0; b < blocks; ++b) {
            const auto block = series.subspan(b * scale, scale);
            double mean = 0.0;
            for (double v : block) mean += v;
            mean /= static_cast<double>(scale);
            double var = 0.0;
            for (double v : block) var += (v - mean) * (v - mean);
            var /= static_cast<double>(scale);
            if (!(var > 0.0)) continue; // degenerate block
            // Range of the mean-adjusted cumulative sum; the walk ends at
            // zero, so zero is always part of the range.
            double walk = 0.0, low = 0.0, high = 0.0;
            for (double v : block) {
                walk += v - mean;
                low = std::min(low, walk);
                high = std::max(high, walk);
            }
            total += (high - low) / std::sqrt(var);
            ++used;
        }
        if (used == 0) continue;
        const double statistic = total / static_cast<double>(used);
        if (statistic > 0.0) points.emplace_back(static_cast<double>(scale), statistic);
    }
    return finish(points, HurstMethod::Rs);
}

HurstEstimate estimate_dfa(std::span<const double> series, const ScaleGrid& grid, int order) {
    if (order < 1) throw std::invalid_argument("dfa: order must be positive");
    check_series(series, grid);

    // Profile: cumulative sum of the mean-centered series.
    const std::size_t n = series.size();
    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(n);
    std::vector<double> profile(n);
    double acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        acc += series[t] - mean;
        profile[t] = acc;
    }

    const std::size_t dim = static_cast<std::size_t>(order) + 1;
    std::vector<double> gram(dim * dim), rhs(dim), coeff(dim), powers(dim);

    ScalePoints points;
    for (const std::size_t scale : build_scales(grid, n)) {
        const std::size_t windows = n / scale;
        double ss_total = 0.0;
        for (std::size_t w = 0; w < windows; ++w) {
            const double* segment = profile.data() + w * scale;
            // Least-squares polynomial detrend in centered window time.
            const double t0 = 0.5 * static_cast<double>(scale - 1);
            std::fill(gram.begin(), gram.end(), 0.0);
            std::fill(rhs.begin(), rhs.end(), 0.0);
            for (std::size_t i = 0; i < scale; ++i) {
                const double t = static_cast<double>(i) - t0;
                powers[0] = 1.0;
                for (std::size_t p = 1; p < dim; ++p) powers[p] = powers[p - 1] * t;
                for (std::size_t r = 0; r < dim; ++r) {
                    for (std::size_t c = r; c < dim; ++c) gram[r * dim + c] += powers[r] * powers[c];
                    rhs[r] += powers[r] * segment[i];
                }
            }
            for (std::size_t r = 1; r < dim; ++r) {
                for (std::size_t c = 0; c < r; ++c) gram[r * dim + c] = gram[c * dim + r];
            }
            // Gaussian elimination with partial pivoting on the tiny system.
            coeff = rhs;
            for (std::size_t col = 0; col < dim; ++col) {
                std::size_t pivot = col;
                for (std::size_t r = col + 1; r < dim; ++r) {
                    if (std::abs(gram[r * dim + col]) > std::abs(gram[pivot * dim + col])) pivot = r;
                }
                if (pivot != col) {
                    for (std::size_t c = 0; c < dim; ++c) std::swap(gram[col * dim + c], gram[pivot * dim + c]);
                    std::swap(coeff[col], coeff[pivot]);
                }
                const double diag = gram[col * dim + col];
                if (diag == 0.0) throw NonEstimableError("dfa: singular detrend system");
                for (std::size_t r = col + 1; r < dim; ++r) {
                    const double factor = gram[r * dim + col] / diag;
                    if (factor == 0.0) continue;
                    for (std::size_t c = col; c < dim; ++c) gram[r * dim + c] -= factor * gram[col * dim + c];
                    coeff[r] -= factor * coeff[col];
                }
            }
            for (std::size_t col = dim; col-- > 0;) {
                for (std::size_t c = col + 1; c < dim; ++c) coeff[col] -= gram[col * dim + c] * coeff[c];
                coeff[col] /= gram[col * dim + col];
            }
            for (std::size_t i = 0; i < scale; ++i) {
                const double t = static_cast<double>(i) - t0;
                double trend = coeff[dim - 1];
                for (std::size_t p = dim - 1; p-- > 0;) trend = trend * t + coeff[p];
                const double residual = segment[i] - trend;
                ss_total += residual * residual;
            }
        }
        const double fluctuation =
            std::sqrt(ss_total / static_cast<double>(windows * scale));
        if (fluctuation > 0.0) points.emplace_back(static_cast<double>(scale), fluctuation);
    }
    return finish(points, HurstMethod::Dfa);
}

HurstEstimate estimate_aggvar(std::span<const double> series, const ScaleGrid& grid) {
    check_series(series, grid);
    ScalePoints points;
    for (const std::size_t scale : build_scales(grid, series.size())) {
        const std::size_t blocks = series.size() / scale;
        if (blocks < 2) continue;
        std::vector<double> means(blocks);
        for (std::size_t b = 0; b < blocks; ++b) {
            double sum = 0.0;
            for (std::size_t i = 0; i < scale; ++i) sum += series[b * scale + i];
            means[b] = sum / static_cast<double>(scale);
        }
        double grand = 0.0;
        for (double v : means) grand += v;
        grand /= static_cast<double>(blocks);
        double var = 0.0;
        for (double v : means) var += (v - grand) * (v - grand);
        var /= static_cast<double>(blocks);
        if (var > 0.0) points.emplace_back(static_cast<double>(scale), var);
    }
    return finish(points, HurstMethod::AggVar);
}

HurstEstimate estimate_hurst(std::span<const double> series, HurstMethod method,
                             const ScaleGrid& grid, int order) {
    switch (method) {
        case HurstMethod::Rs: return estimate_rs(series, grid);
        case HurstMethod::Dfa: return estimate_dfa(series, grid, order);
        case HurstMethod::AggVar: return estimate_aggvar(series, grid);
    }
    throw std::invalid_argument("estimate_hurst: bad method");
}

HurstEstimate estimate_rs(const TrafficTrace& trace, const ScaleGrid& grid) {
    return estimate_rs(std::span<const double>(trace.values), grid);
}

HurstEstimate estimate_dfa(const TrafficTrace& trace, const ScaleGrid& grid, int order) {
    return estimate_dfa(std::span<const double>(trace.values), grid, order);
}

HurstEstimate estimate_aggvar(const TrafficTrace& trace, const ScaleGrid& grid) {
    return estimate_aggvar(std::span<const double>(trace.values), grid);
}

HurstEstimate estimate_hurst(const TrafficTrace& trace, HurstMethod method, const ScaleGrid& grid,
                             int order) {
    return estimate_hurst(std::span<const double>(trace.values), method, grid, order);
}

} // namespace selfsim
