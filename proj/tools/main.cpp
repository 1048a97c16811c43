// Command-line front end: synthesize traffic traces, estimate Hurst
// exponents, multiplex streams, and run Monte Carlo experiment campaigns.

#include "selfsim/experiments.hpp"
#include "selfsim/hurst.hpp"
#include "selfsim/io.hpp"
#include "selfsim/multiplex.hpp"
#include "selfsim/synthesis.hpp"
#include "selfsim/traffic_model.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

struct GridOptions {
    std::size_t min_scale = 8;
    double max_scale_fraction = 0.25;
    int points_per_decade = 8;

    void attach(CLI::App* app) {
        app->add_option("--min-scale", min_scale, "smallest block/window size");
        app->add_option("--max-scale-fraction", max_scale_fraction,
                        "largest scale as a fraction of the series length");
        app->add_option("--points-per-decade", points_per_decade, "scales per decade");
    }

    selfsim::ScaleGrid grid() const { return {min_scale, max_scale_fraction, points_per_decade}; }
};

int run(int argc, char** argv) {
    CLI::App app{"self-similar traffic synthesis, Hurst estimation and multiplexing"};
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "synthesize a traffic trace CSV");
    std::string gen_kind = "fgn";
    double gen_hurst = 0.8, gen_phi = 0.5, gen_mean = 1.0, gen_cv = 1.2;
    std::size_t gen_length = 0;
    std::optional<std::uint64_t> gen_seed;
    std::string gen_output;
    generate->add_option("--kind", gen_kind, "forming process: fgn|white|ar1")
        ->check(CLI::IsMember({"fgn", "white", "ar1"}));
    generate->add_option("--hurst", gen_hurst, "Hurst exponent (fgn)");
    generate->add_option("--phi", gen_phi, "autoregression coefficient (ar1)");
    generate->add_option("--mean", gen_mean, "target mean intensity");
    generate->add_option("--cv", gen_cv, "target coefficient of variation");
    generate->add_option("--length", gen_length, "number of samples")->required();
    generate->add_option("--seed", gen_seed, "RNG seed (default: entropy, echoed to stderr)");
    generate->add_option("--output,-o", gen_output, "output file (default: stdout)");

    // estimate
    auto* estimate = app.add_subcommand("estimate", "estimate the Hurst exponent of a trace");
    std::string est_input, est_method = "dfa", est_output;
    int est_order = 1;
    GridOptions est_grid;
    estimate->add_option("input", est_input, "trace CSV file")->required();
    estimate->add_option("--method", est_method, "rs|dfa|aggvar")
        ->check(CLI::IsMember({"rs", "dfa", "aggvar"}));
    estimate->add_option("--order", est_order, "DFA detrend order");
    est_grid.attach(estimate);
    estimate->add_option("--output,-o", est_output, "output file (default: stdout)");

    // mux
    auto* mux = app.add_subcommand("mux", "multiplex traces and report H/CV diagnostics");
    std::vector<std::string> mux_inputs;
    std::string mux_method = "dfa", mux_output;
    std::vector<double> mux_hursts;
    int mux_order = 1;
    GridOptions mux_grid;
    mux->add_option("inputs", mux_inputs, "two or more trace CSV files")
        ->required()
        ->expected(2, -1);
    mux->add_option("--method", mux_method, "rs|dfa|aggvar")
        ->check(CLI::IsMember({"rs", "dfa", "aggvar"}));
    mux->add_option("--hurst", mux_hursts,
                    "known per-stream Hurst exponents for max-stream selection");
    mux->add_option("--order", mux_order, "DFA detrend order");
    mux_grid.attach(mux);
    mux->add_option("--output,-o", mux_output, "output file (default: stdout)");

    // experiment
    auto* experiment = app.add_subcommand("experiment", "run a Monte Carlo campaign");
    std::string exp_config_path, exp_scenario = "self_plus_white", exp_estimator = "dfa";
    std::string exp_output, exp_format = "csv";
    std::vector<double> exp_h, exp_ratios;
    double exp_cv = 1.2, exp_phi = 0.5;
    std::size_t exp_length = 1000;
    int exp_reps = 100, exp_order = 1;
    std::optional<std::uint64_t> exp_seed;
    GridOptions exp_grid;
    experiment->add_option("--config", exp_config_path, "experiment config JSON file");
    experiment->add_option("--scenario", exp_scenario,
                           "self_plus_white|self_plus_ar1|self_plus_self|multi_stream");
    experiment->add_option("--hurst", exp_h, "per-stream Hurst targets");
    experiment->add_option("--cv", exp_cv, "base coefficient of variation");
    experiment->add_option("--ratios", exp_ratios, "R1/R2 grid values");
    experiment->add_option("--length", exp_length, "trace length");
    experiment->add_option("--reps", exp_reps, "replications per grid point");
    experiment->add_option("--seed", exp_seed, "base seed (required for reproducibility)");
    experiment->add_option("--estimator", exp_estimator, "rs|dfa|aggvar")
        ->check(CLI::IsMember({"rs", "dfa", "aggvar"}));
    experiment->add_option("--phi", exp_phi, "AR(1) coefficient for self_plus_ar1");
    experiment->add_option("--order", exp_order, "DFA detrend order");
    exp_grid.attach(experiment);
    experiment->add_option("--output,-o", exp_output, "output file (default: stdout)");
    experiment->add_option("--format", exp_format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    // calibrate
    auto* calibrate_cmd = app.add_subcommand("calibrate", "lognormal model coefficients");
    double cal_mean = 0.0, cal_cv = 0.0;
    std::string cal_output;
    calibrate_cmd->add_option("--mean", cal_mean, "target mean")->required();
    calibrate_cmd->add_option("--cv", cal_cv, "target coefficient of variation")->required();
    calibrate_cmd->add_option("--output,-o", cal_output, "output file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    if (generate->parsed()) {
        std::uint64_t seed;
        if (gen_seed) {
            seed = *gen_seed;
        } else {
            std::random_device entropy;
            seed = (static_cast<std::uint64_t>(entropy()) << 32) ^ entropy();
            std::cerr << "seed: " << seed << "\n";
        }
        selfsim::GaussianSeries forming;
        if (gen_kind == "fgn") {
            forming = selfsim::generate_fgn({gen_hurst, gen_length, seed});
        } else if (gen_kind == "white") {
            forming = selfsim::generate_white(gen_length, seed);
        } else {
            forming = selfsim::generate_ar1({gen_phi, gen_length, seed});
        }
        const auto trace = selfsim::transform(forming, selfsim::calibrate(gen_mean, gen_cv));
        write_output(gen_output, selfsim::export_trace(trace));
        return 0;
    }

    if (estimate->parsed()) {
        const auto trace = selfsim::import_trace(read_file(est_input));
        const auto result = selfsim::estimate_hurst(
            trace, selfsim::hurst_method_from_string(est_method), est_grid.grid(), est_order);
        write_output(est_output, selfsim::export_estimate_json(result));
        return 0;
    }

    if (mux->parsed()) {
        std::vector<selfsim::TrafficTrace> traces;
        traces.reserve(mux_inputs.size());
        for (const auto& path : mux_inputs) {
            traces.push_back(selfsim::import_trace(read_file(path)));
        }
        selfsim::MuxOptions options;
        options.method = selfsim::hurst_method_from_string(mux_method);
        options.grid = mux_grid.grid();
        options.dfa_order = mux_order;
        if (!mux_hursts.empty()) options.known_hursts = mux_hursts;
        const auto report = selfsim::mux_report(traces, options);
        write_output(mux_output, selfsim::export_mux_report_json(report));
        return 0;
    }

    if (experiment->parsed()) {
        selfsim::ExperimentConfig config;
        if (!exp_config_path.empty()) {
            config = selfsim::import_config_json(read_file(exp_config_path));
            if (exp_seed) config.base_seed = *exp_seed;
        } else {
            if (!exp_seed) {
                throw std::runtime_error(
                    "experiment requires an explicit --seed (or a config file with base_seed)");
            }
            config.scenario = selfsim::scenario_from_string(exp_scenario);
            config.h_values = exp_h;
            config.base_cv = exp_cv;
            config.ratio_grid = exp_ratios;
            config.length = exp_length;
            config.replications = exp_reps;
            config.base_seed = *exp_seed;
            config.estimator = selfsim::hurst_method_from_string(exp_estimator);
            config.ar_phi = exp_phi;
            config.grid = exp_grid.grid();
            config.dfa_order = exp_order;
        }
        const auto table = selfsim::run_experiment(config);
        const std::string payload = exp_format == "json" ? selfsim::export_table_json(table)
                                                         : selfsim::export_table_csv(table);
        write_output(exp_output, payload);
        return 0;
    }

    // calibrate
    const auto coefficients = selfsim::calibrate(cal_mean, cal_cv);
    write_output(cal_output, selfsim::export_coefficients_json(coefficients));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    }
}
