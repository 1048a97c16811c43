#include "selfsim/io.hpp"

#include "selfsim/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace selfsim {

namespace {

using nlohmann::json;

std::string format_double(double value, int significant_digits) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*g", significant_digits, value);
    return buffer;
}

// Strips one trailing carriage return so CRLF files parse cleanly.
std::string_view chomp(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

json estimate_to_json(const HurstEstimate& estimate) {
    return json{{"hurst", estimate.hurst},
                {"method", to_string(estimate.method)},
                {"slope", estimate.slope},
                {"intercept", estimate.intercept},
                {"r_squared", estimate.r_squared},
                {"scales_used", estimate.scales_used}};
}

json grid_to_json(const ScaleGrid& grid) {
    return json{{"min_scale", grid.min_scale},
                {"max_scale_fraction", grid.max_scale_fraction},
                {"points_per_decade", grid.points_per_decade}};
}

ScaleGrid grid_from_json(const json& j) {
    ScaleGrid grid;
    grid.min_scale = j.value("min_scale", grid.min_scale);
    grid.max_scale_fraction = j.value("max_scale_fraction", grid.max_scale_fraction);
    grid.points_per_decade = j.value("points_per_decade", grid.points_per_decade);
    return grid;
}

json config_to_json(const ExperimentConfig& config) {
    return json{{"scenario", to_string(config.scenario)},
                {"h_values", config.h_values},
                {"base_cv", config.base_cv},
                {"ratio_grid", config.ratio_grid},
                {"length", config.length},
                {"replications", config.replications},
                {"base_seed", config.base_seed},
                {"estimator", to_string(config.estimator)},
                {"ar_phi", config.ar_phi},
                {"grid", grid_to_json(config.grid)},
                {"dfa_order", config.dfa_order}};
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig config;
    config.scenario = scenario_from_string(j.at("scenario").get<std::string>());
    config.h_values = j.at("h_values").get<std::vector<double>>();
    config.ratio_grid = j.at("ratio_grid").get<std::vector<double>>();
    config.length = j.at("length").get<std::size_t>();
    config.replications = j.at("replications").get<int>();
    config.base_seed = j.at("base_seed").get<std::uint64_t>();
    config.base_cv = j.value("base_cv", config.base_cv);
    if (j.contains("estimator")) {
        config.estimator = hurst_method_from_string(j.at("estimator").get<std::string>());
    }
    config.ar_phi = j.value("ar_phi", config.ar_phi);
    if (j.contains("grid")) config.grid = grid_from_json(j.at("grid"));
    config.dfa_order = j.value("dfa_order", config.dfa_order);
    return config;
}

} // namespace

std::string export_trace(const TrafficTrace& trace) {
    std::string out = "value\n";
    for (double v : trace.values) {
        out += format_double(v, 12);
        out += '\n';
    }
    return out;
}

TrafficTrace import_trace(const std::string& text) {
    TrafficTrace trace;
    trace.origin = TraceOrigin::external();

    std::istringstream stream(text);
    std::string raw;
    std::size_t line_number = 0;
    while (std::getline(stream, raw)) {
        ++line_number;
        const std::string line{chomp(raw)};
        if (line_number == 1) {
            if (line != "value") throw ParseError("expected header 'value'", line_number);
            continue;
        }
        if (line.empty()) continue;
        std::size_t consumed = 0;
        double value;
        try {
            value = std::stod(line, &consumed);
        } catch (const std::exception&) {
            throw ParseError("not a number: '" + line + "'", line_number);
        }
        if (consumed != line.size()) {
            throw ParseError("trailing characters after number: '" + line + "'", line_number);
        }
        if (!std::isfinite(value)) throw ParseError("value is not finite", line_number);
        if (value < 0.0) throw ParseError("negative traffic value", line_number);
        trace.values.push_back(value);
    }
    if (trace.values.empty()) throw ParseError("no data rows", line_number == 0 ? 1 : line_number);
    return trace;
}

std::string export_table_csv(const ExperimentTable& table) {
    const std::size_t streams = table.config.h_values.size();
    std::string out = "ratio";
    for (std::size_t s = 0; s < streams; ++s) {
        out += ",mean_h_" + std::to_string(s + 1);
    }
    out += ",mean_h_total,sd_h_total,reps\n";
    for (const auto& row : table.rows) {
        out += format_double(row.ratio, 6);
        for (std::size_t s = 0; s < streams; ++s) {
            out += ',';
            out += format_double(row.mean_component_hurst[s], 6);
        }
        out += ',';
        out += format_double(row.mean_total_hurst, 6);
        out += ',';
        out += format_double(row.sd_total_hurst, 6);
        out += ',';
        out += std::to_string(row.replications);
        out += '\n';
    }
    return out;
}

std::string export_table_json(const ExperimentTable& table) {
    json rows = json::array();
    for (const auto& row : table.rows) {
        rows.push_back(json{{"ratio", row.ratio},
                            {"mean_component_hurst", row.mean_component_hurst},
                            {"mean_total_hurst", row.mean_total_hurst},
                            {"sd_total_hurst", row.sd_total_hurst},
                            {"replications", row.replications},
                            {"mean_component_cv", row.mean_component_cv},
                            {"mean_total_cv", row.mean_total_cv},
                            {"mean_achieved_ratio", row.mean_achieved_ratio},
                            {"failures", row.failures},
                            {"flagged", row.flagged}});
    }
    const json document{{"config", config_to_json(table.config)}, {"rows", rows}};
    return document.dump(2) + "\n";
}

ExperimentTable import_table_json(const std::string& text) {
    const json document = json::parse(text);
    ExperimentTable table;
    table.config = config_from_json(document.at("config"));
    for (const auto& j : document.at("rows")) {
        ExperimentRow row;
        row.ratio = j.at("ratio").get<double>();
        row.mean_component_hurst = j.at("mean_component_hurst").get<std::vector<double>>();
        row.mean_total_hurst = j.at("mean_total_hurst").get<double>();
        row.sd_total_hurst = j.at("sd_total_hurst").get<double>();
        row.replications = j.at("replications").get<int>();
        row.mean_component_cv = j.at("mean_component_cv").get<std::vector<double>>();
        row.mean_total_cv = j.at("mean_total_cv").get<double>();
        row.mean_achieved_ratio = j.at("mean_achieved_ratio").get<double>();
        row.failures = j.at("failures").get<int>();
        row.flagged = j.at("flagged").get<bool>();
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string export_config_json(const ExperimentConfig& config) {
    return config_to_json(config).dump(2) + "\n";
}

ExperimentConfig import_config_json(const std::string& text) {
    return config_from_json(json::parse(text));
}

std::string export_estimate_json(const HurstEstimate& estimate) {
    return estimate_to_json(estimate).dump(2) + "\n";
}

std::string export_mux_report_json(const MuxReport& report) {
    json components = json::array();
    for (const auto& estimate : report.component_hursts) {
        components.push_back(estimate_to_json(estimate));
    }
    const json document{{"component_hursts", components},
                        {"component_cvs", report.component_cvs},
                        {"ratio", report.ratio},
                        {"ratio_kind", report.ratio_is_r2 ? "r2" : "r1"},
                        {"max_tied", report.max_tied},
                        {"total_hurst", estimate_to_json(report.total_hurst)},
                        {"total_cv", report.total_cv}};
    return document.dump(2) + "\n";
}

std::string export_coefficients_json(const ModelCoefficients& coefficients) {
    const json document{{"b", coefficients.scale},
                        {"k", coefficients.shape},
                        {"target_mean", coefficients.target_mean},
                        {"target_cv", coefficients.target_cv}};
    return document.dump(2) + "\n";
}

} // namespace selfsim
