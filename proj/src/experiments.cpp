#include "selfsim/experiments.hpp"

#include "selfsim/rng.hpp"
#include "selfsim/synthesis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace selfsim {

std::string to_string(Scenario scenario) {
    switch (scenario) {
        case Scenario::SelfPlusWhite: return "self_plus_white";
        case Scenario::SelfPlusAr1: return "self_plus_ar1";
        case Scenario::SelfPlusSelf: return "self_plus_self";
        case Scenario::MultiStream: return "multi_stream";
    }
    return "unknown";
}

Scenario scenario_from_string(const std::string& name) {
    if (name == "self_plus_white") return Scenario::SelfPlusWhite;
    if (name == "self_plus_ar1") return Scenario::SelfPlusAr1;
    if (name == "self_plus_self") return Scenario::SelfPlusSelf;
    if (name == "multi_stream") return Scenario::MultiStream;
    throw std::invalid_argument("unknown scenario: " + name);
}

std::pair<double, double> realize_ratio(double base_cv, double ratio) {
    if (!(base_cv > 0.0)) throw std::domain_error("realize_ratio: base_cv must be positive");
    if (!(ratio > 0.0)) throw std::domain_error("realize_ratio: ratio must be positive");
    return {base_cv, base_cv / ratio};
}

namespace {

std::size_t max_hurst_index(const std::vector<double>& h_values) {
    std::size_t index = 0;
    for (std::size_t i = 1; i < h_values.size(); ++i) {
        if (h_values[i] > h_values[index]) index = i;
    }
    return index;
}

void validate(const ExperimentConfig& config) {
    const std::size_t streams = config.h_values.size();
    if (config.scenario == Scenario::MultiStream) {
        if (streams < 2) {
            throw std::invalid_argument("multi_stream: need at least 2 h_values");
        }
        const std::size_t max_index = max_hurst_index(config.h_values);
        for (std::size_t i = 0; i < streams; ++i) {
            if (i != max_index && config.h_values[i] == config.h_values[max_index]) {
                throw std::invalid_argument("multi_stream: maximum hurst must be unique");
            }
        }
    } else if (streams != 2) {
        throw std::invalid_argument("pairwise scenario: exactly 2 h_values required");
    }
    if ((config.scenario == Scenario::SelfPlusWhite || config.scenario == Scenario::SelfPlusAr1) &&
        max_hurst_index(config.h_values) != 0) {
        throw std::invalid_argument("mixed pairwise scenario: stream 0 must carry the maximum hurst");
    }
    if (config.scenario == Scenario::SelfPlusAr1 && !(std::abs(config.ar_phi) < 1.0)) {
        throw std::domain_error("ar_phi must satisfy |phi| < 1");
    }
    if (config.ratio_grid.empty()) throw std::invalid_argument("ratio_grid is empty");
    for (double r : config.ratio_grid) {
        if (!(r > 0.0 && r <= 2.0)) {
            throw std::invalid_argument("ratio_grid values must lie in (0,2]");
        }
    }
    if (config.replications < 1) throw std::invalid_argument("replications must be >= 1");
    if (!(config.base_cv > 0.0)) throw std::invalid_argument("base_cv must be positive");
    build_scales(config.grid, config.length); // rejects unusable length/grid pairs
}

GaussianSeries make_forming(const ExperimentConfig& config, std::size_t stream,
                            std::uint64_t seed) {
    // Streams other than the first are white/AR1 in the mixed scenarios;
    // their h_values entries are nominal (0.5) and used only for
    // max-stream selection and reporting.
    const bool self_similar = stream == 0 || config.scenario == Scenario::SelfPlusSelf ||
                              config.scenario == Scenario::MultiStream;
    if (self_similar) {
        return generate_fgn({config.h_values[stream], config.length, seed});
    }
    if (config.scenario == Scenario::SelfPlusWhite) {
        return generate_white(config.length, seed);
    }
    return generate_ar1({config.ar_phi, config.length, seed});
}

struct RepOutcome {
    bool ok = false;
    std::vector<double> component_hurst;
    std::vector<double> component_cv;
    double total_hurst = 0.0;
    double total_cv = 0.0;
    double achieved_ratio = 0.0;
};

RepOutcome run_replication(const ExperimentConfig& config, std::size_t row_index, int rep,
                           std::size_t max_index, double cv_max, double cv_other) {
    const std::size_t streams = config.h_values.size();
    const std::uint64_t rep_seed = config.base_seed + static_cast<std::uint64_t>(rep);
    const std::uint64_t row_seed = derive_seed(rep_seed, row_index);

    RepOutcome outcome;
    try {
        std::vector<TrafficTrace> traces;
        traces.reserve(streams);
        for (std::size_t s = 0; s < streams; ++s) {
            const GaussianSeries forming = make_forming(config, s, derive_seed(row_seed, s));
            const double cv_target = s == max_index ? cv_max : cv_other;
            traces.push_back(transform(forming, calibrate(1.0, cv_target)));
        }
        const TrafficTrace total = sum_streams(traces);

        outcome.component_hurst.resize(streams);
        outcome.component_cv.resize(streams);
        for (std::size_t s = 0; s < streams; ++s) {
            outcome.component_hurst[s] =
                estimate_hurst(traces[s], config.estimator, config.grid, config.dfa_order).hurst;
            outcome.component_cv[s] = coefficient_of_variation(traces[s]);
        }
        outcome.total_hurst =
            estimate_hurst(total, config.estimator, config.grid, config.dfa_order).hurst;
        outcome.total_cv = coefficient_of_variation(total);
        outcome.achieved_ratio = ratio_r2(traces, config.h_values).value;
        outcome.ok = true;
    } catch (const std::exception&) {
        outcome.ok = false;
    }
    return outcome;
}

ExperimentTable run(const ExperimentConfig& config) {
    validate(config);
    const std::size_t streams = config.h_values.size();
    const std::size_t max_index = max_hurst_index(config.h_values);

    std::vector<double> sorted_grid = config.ratio_grid;
    std::sort(sorted_grid.begin(), sorted_grid.end(), std::greater<>());

    ExperimentTable table;
    table.config = config;
    table.rows.reserve(sorted_grid.size());

    for (std::size_t row_index = 0; row_index < sorted_grid.size(); ++row_index) {
        const double ratio = sorted_grid[row_index];
        const auto [cv_max, cv_other] = realize_ratio(config.base_cv, ratio);

        // Replications run concurrently into per-index slots; every value
        // derives from base_seed + rep, and aggregation below walks the
        // slots in index order, so scheduling cannot affect the output.
        std::vector<RepOutcome> outcomes(static_cast<std::size_t>(config.replications));
        {
            std::atomic<int> cursor{0};
            const unsigned workers =
                std::max(1u, std::min(std::thread::hardware_concurrency(),
                                      static_cast<unsigned>(config.replications)));
            std::vector<std::jthread> pool;
            pool.reserve(workers);
            for (unsigned w = 0; w < workers; ++w) {
                pool.emplace_back([&] {
                    for (int rep = cursor.fetch_add(1); rep < config.replications;
                         rep = cursor.fetch_add(1)) {
                        outcomes[static_cast<std::size_t>(rep)] =
                            run_replication(config, row_index, rep, max_index, cv_max, cv_other);
                    }
                });
            }
        }

        ExperimentRow row;
        row.ratio = ratio;
        row.mean_component_hurst.assign(streams, 0.0);
        row.mean_component_cv.assign(streams, 0.0);
        std::vector<double> total_hursts;
        total_hursts.reserve(outcomes.size());
        for (const auto& outcome : outcomes) {
            if (!outcome.ok) {
                ++row.failures;
                continue;
            }
            for (std::size_t s = 0; s < streams; ++s) {
                row.mean_component_hurst[s] += outcome.component_hurst[s];
                row.mean_component_cv[s] += outcome.component_cv[s];
            }
            total_hursts.push_back(outcome.total_hurst);
            row.mean_total_cv += outcome.total_cv;
            row.mean_achieved_ratio += outcome.achieved_ratio;
        }

        row.replications = static_cast<int>(total_hursts.size());
        if (row.replications > 0) {
            const double n = static_cast<double>(row.replications);
            for (std::size_t s = 0; s < streams; ++s) {
                row.mean_component_hurst[s] /= n;
                row.mean_component_cv[s] /= n;
            }
            row.mean_total_cv /= n;
            row.mean_achieved_ratio /= n;
            double mean = 0.0;
            for (double h : total_hursts) mean += h;
            mean /= n;
            row.mean_total_hurst = mean;
            if (row.replications > 1) {
                double ss = 0.0;
                for (double h : total_hursts) ss += (h - mean) * (h - mean);
                row.sd_total_hurst = std::sqrt(ss / (n - 1.0));
            }
        }
        row.flagged = row.failures * 20 > config.replications; // > 5%
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace

ExperimentTable run_pairwise(const ExperimentConfig& config) {
    if (config.scenario == Scenario::MultiStream) {
        throw std::invalid_argument("run_pairwise: scenario must be pairwise");
    }
    return run(config);
}

ExperimentTable run_multi_stream(const ExperimentConfig& config) {
    if (config.scenario != Scenario::MultiStream) {
        throw std::invalid_argument("run_multi_stream: scenario must be multi_stream");
    }
    return run(config);
}

ExperimentTable run_experiment(const ExperimentConfig& config) {
    return run(config);
}

} // namespace selfsim
