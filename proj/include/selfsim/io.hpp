#pragma once

#include "selfsim/experiments.hpp"
#include "selfsim/multiplex.hpp"
#include "selfsim/traffic_model.hpp"

#include <string>

namespace selfsim {

/// Single-column CSV with header `value`, one intensity per line at
/// 12 significant digits (round trip error below 1e-11 relative).
std::string export_trace(const TrafficTrace& trace);

/// Parse a trace CSV. Values must be finite and nonnegative; violations
/// raise ParseError carrying the offending line. The imported trace has
/// External origin.
TrafficTrace import_trace(const std::string& text);

/// CSV rows `ratio,mean_h_1,...,mean_h_n,mean_h_total,sd_h_total,reps`
/// at 6 significant digits.
std::string export_table_csv(const ExperimentTable& table);

/// Full JSON document: config echo plus every per-row field.
std::string export_table_json(const ExperimentTable& table);
ExperimentTable import_table_json(const std::string& text);

std::string export_config_json(const ExperimentConfig& config);
ExperimentConfig import_config_json(const std::string& text);

std::string export_estimate_json(const HurstEstimate& estimate);
std::string export_mux_report_json(const MuxReport& report);
std::string export_coefficients_json(const ModelCoefficients& coefficients);

} // namespace selfsim
