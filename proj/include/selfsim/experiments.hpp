#pragma once

#include "selfsim/hurst.hpp"
#include "selfsim/multiplex.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace selfsim {

enum class Scenario { SelfPlusWhite, SelfPlusAr1, SelfPlusSelf, MultiStream };

std::string to_string(Scenario scenario);
Scenario scenario_from_string(const std::string& name);

/// Monte Carlo campaign description. Every replication derives all of its
/// randomness from base_seed + replication index, so execution order (and
/// any future parallel scheduling) cannot affect the results.
struct ExperimentConfig {
    Scenario scenario = Scenario::SelfPlusWhite;
    std::vector<double> h_values;       // per-stream Hurst targets
    double base_cv = 1.2;               // CV of the max-H stream
    std::vector<double> ratio_grid;     // R1 (pairwise) or R2 (multi) values
    std::size_t length = 1000;
    int replications = 100;
    std::uint64_t base_seed = 0;
    HurstMethod estimator = HurstMethod::Dfa;
    double ar_phi = 0.5;                // SelfPlusAr1 only
    ScaleGrid grid;                     // estimator scale grid
    int dfa_order = 1;
};

struct ExperimentRow {
    double ratio = 0.0;                       // nominal grid value
    std::vector<double> mean_component_hurst; // per stream
    double mean_total_hurst = 0.0;
    double sd_total_hurst = 0.0;              // sample sd over replications
    int replications = 0;                     // successful replications
    std::vector<double> mean_component_cv;    // achieved sample CVs
    double mean_total_cv = 0.0;
    double mean_achieved_ratio = 0.0;         // sample R1/R2, averaged
    int failures = 0;
    bool flagged = false;                     // more than 5% replications failed
};

struct ExperimentTable {
    ExperimentConfig config;
    std::vector<ExperimentRow> rows; // sorted by descending ratio
};

/// CV targets that realize a nominal ratio: the max-H stream keeps
/// base_cv, every other stream gets base_cv / ratio.
std::pair<double, double> realize_ratio(double base_cv, double ratio);

ExperimentTable run_pairwise(const ExperimentConfig& config);
ExperimentTable run_multi_stream(const ExperimentConfig& config);
ExperimentTable run_experiment(const ExperimentConfig& config);

} // namespace selfsim
