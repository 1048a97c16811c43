#include "selfsim/multiplex.hpp"

#include <cmath>
#include <stdexcept>

namespace selfsim {

double coefficient_of_variation(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("cv: empty series");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    if (!(mean > 0.0)) throw std::domain_error("cv: sample mean must be positive");
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size());
    return std::sqrt(var) / mean;
}

double coefficient_of_variation(const TrafficTrace& trace) {
    return coefficient_of_variation(std::span<const double>(trace.values));
}

TrafficTrace sum_streams(std::span<const TrafficTrace> traces) {
    if (traces.size() < 2) throw std::invalid_argument("sum_streams: need at least 2 traces");
    const std::size_t length = traces.front().values.size();
    for (const auto& trace : traces) {
        if (trace.values.size() != length) {
            throw std::invalid_argument("sum_streams: length mismatch");
        }
    }
    TrafficTrace total;
    total.values.assign(length, 0.0);
    for (const auto& trace : traces) {
        for (std::size_t t = 0; t < length; ++t) total.values[t] += trace.values[t];
    }
    total.origin = TraceOrigin::sum(traces.size());
    return total;
}

double ratio_r1(const TrafficTrace& self_similar, const TrafficTrace& other) {
    const double cv_other = coefficient_of_variation(other);
    if (!(cv_other > 0.0)) throw std::domain_error("ratio_r1: denominator cv is zero");
    return coefficient_of_variation(self_similar) / cv_other;
}

R2Result ratio_r2(std::span<const TrafficTrace> traces, std::span<const double> hursts) {
    if (traces.size() < 2) throw std::invalid_argument("ratio_r2: need at least 2 traces");
    if (traces.size() != hursts.size()) {
        throw std::invalid_argument("ratio_r2: hursts must parallel traces");
    }

    R2Result result;
    for (std::size_t i = 1; i < hursts.size(); ++i) {
        if (hursts[i] > hursts[result.max_index]) {
            result.max_index = i;
        } else if (hursts[i] == hursts[result.max_index]) {
            result.max_tied = true;
        }
    }

    double cv_rest = 0.0;
    for (std::size_t i = 0; i < traces.size(); ++i) {
        if (i == result.max_index) continue;
        cv_rest += coefficient_of_variation(traces[i]);
    }
    cv_rest /= static_cast<double>(traces.size() - 1);
    if (!(cv_rest > 0.0)) throw std::domain_error("ratio_r2: denominator cv is zero");
    result.value = coefficient_of_variation(traces[result.max_index]) / cv_rest;
    return result;
}

MuxReport mux_report(std::span<const TrafficTrace> traces, const MuxOptions& options) {
    if (traces.size() < 2) throw std::invalid_argument("mux_report: need at least 2 traces");
    if (options.known_hursts && options.known_hursts->size() != traces.size()) {
        throw std::invalid_argument("mux_report: known_hursts must parallel traces");
    }

    MuxReport report;
    report.component_hursts.reserve(traces.size());
    report.component_cvs.reserve(traces.size());
    for (const auto& trace : traces) {
        report.component_hursts.push_back(
            estimate_hurst(trace, options.method, options.grid, options.dfa_order));
        report.component_cvs.push_back(coefficient_of_variation(trace));
    }

    std::vector<double> selection_hursts;
    if (options.known_hursts) {
        selection_hursts = *options.known_hursts;
    } else {
        for (const auto& estimate : report.component_hursts) {
            selection_hursts.push_back(estimate.hurst);
        }
    }

    const R2Result r2 = ratio_r2(traces, selection_hursts);
    report.max_tied = r2.max_tied;
    report.ratio_is_r2 = traces.size() > 2;
    report.ratio = r2.value; // for two streams R2 reduces to R1

    const TrafficTrace total = sum_streams(traces);
    report.total_hurst = estimate_hurst(total, options.method, options.grid, options.dfa_order);
    report.total_cv = coefficient_of_variation(total);
    return report;
}

} // namespace selfsim
