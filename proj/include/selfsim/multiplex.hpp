#pragma once

#include "selfsim/hurst.hpp"
#include "selfsim/traffic_model.hpp"

#include <optional>
#include <span>
#include <vector>

namespace selfsim {

/// Population standard deviation over sample mean. The mean must be
/// positive, which always holds for model-origin traces.
double coefficient_of_variation(std::span<const double> values);
double coefficient_of_variation(const TrafficTrace& trace);

/// Pointwise sum of two or more equal-length traces; origin = Sum(count).
TrafficTrace sum_streams(std::span<const TrafficTrace> traces);

/// CV(self_similar) / CV(other). By convention the first argument is the
/// stream with the larger Hurst exponent.
double ratio_r1(const TrafficTrace& self_similar, const TrafficTrace& other);

struct R2Result {
    double value = 0.0;
    std::size_t max_index = 0; // index of the max-Hurst stream
    bool max_tied = false;     // maximum Hurst not unique; lowest index used
};

/// CV of the max-Hurst stream over the mean CV of the remaining streams.
/// `hursts` supplies the per-stream Hurst exponents used for selection.
R2Result ratio_r2(std::span<const TrafficTrace> traces, std::span<const double> hursts);

struct MuxOptions {
    HurstMethod method = HurstMethod::Dfa;
    ScaleGrid grid;
    int dfa_order = 1;
    /// Ground-truth Hurst exponents for max-stream selection; when absent
    /// the estimated values are used instead.
    std::optional<std::vector<double>> known_hursts;
};

struct MuxReport {
    std::vector<HurstEstimate> component_hursts;
    std::vector<double> component_cvs;
    double ratio = 0.0;     // R1 for two streams, R2 otherwise
    bool ratio_is_r2 = false;
    bool max_tied = false;
    HurstEstimate total_hurst;
    double total_cv = 0.0;
};

/// Estimate per-component H and CV, sum the streams, estimate the total
/// stream, and compute R1/R2.
MuxReport mux_report(std::span<const TrafficTrace> traces, const MuxOptions& options = {});

} // namespace selfsim
