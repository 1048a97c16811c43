#include "selfsim/experiments.hpp"

#include "selfsim/errors.hpp"
#include "selfsim/io.hpp"
#include "selfsim/synthesis.hpp"
#include "selfsim/traffic_model.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace selfsim;

namespace {

ExperimentConfig table_config(Scenario scenario, std::vector<double> h_values) {
    ExperimentConfig config;
    config.scenario = scenario;
    config.h_values = std::move(h_values);
    config.base_cv = 1.2;
    config.ratio_grid = {1.0, 0.85, 0.65, 0.5, 0.35};
    config.length = 1000;
    config.replications = 10;
    config.base_seed = 42;
    return config;
}

} // namespace

TEST_CASE("realize_ratio") {
    const auto [fixed1, other1] = realize_ratio(1.2, 1.0);
    CHECK(fixed1 == doctest::Approx(1.2));
    CHECK(other1 == doctest::Approx(1.2));

    const auto [fixed2, other2] = realize_ratio(1.2, 0.5);
    CHECK(fixed2 == doctest::Approx(1.2));
    CHECK(other2 == doctest::Approx(2.4));

    const auto [fixed3, other3] = realize_ratio(1.2, 0.35);
    CHECK(other3 == doctest::Approx(1.2 / 0.35).epsilon(1e-12));
    CHECK(fixed3 == doctest::Approx(1.2));

    CHECK_THROWS_AS(realize_ratio(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(realize_ratio(1.2, 0.0), std::domain_error);
}

TEST_CASE("config validation") {
    auto config = table_config(Scenario::SelfPlusWhite, {0.8, 0.5});

    SUBCASE("pairwise arity") {
        config.h_values = {0.8};
        CHECK_THROWS_AS(run_experiment(config), std::invalid_argument);
        config.h_values = {0.8, 0.5, 0.5};
        CHECK_THROWS_AS(run_experiment(config), std::invalid_argument);
    }

    SUBCASE("mixed pairwise scenarios need the max first") {
        config.h_values = {0.5, 0.8};
        CHECK_THROWS_AS(run_experiment(config), std::invalid_argument);
    }

    SUBCASE("ratio bounds") {
        config.ratio_grid = {2.5};
        CHECK_THROWS_AS(run_experiment(config), std::invalid_argument);
        config.ratio_grid = {};
        CHECK_THROWS_AS(run_experiment(config), std::invalid_argument);
    }

    SUBCASE("multi-stream max must be unique") {
        config.scenario = Scenario::MultiStream;
        config.h_values = {0.8, 0.8, 0.6};
        CHECK_THROWS_AS(run_experiment(config), std::invalid_argument);
    }

    SUBCASE("replications positive") {
        config.replications = 0;
        CHECK_THROWS_AS(run_experiment(config), std::invalid_argument);
    }

    SUBCASE("length must support the grid") {
        config.length = 40;
        CHECK_THROWS_AS(run_experiment(config), NonEstimableError);
    }

    SUBCASE("run_pairwise rejects multi_stream and vice versa") {
        CHECK_THROWS_AS(run_multi_stream(config), std::invalid_argument);
        config.scenario = Scenario::MultiStream;
        config.h_values = {0.8, 0.6, 0.6};
        CHECK_THROWS_AS(run_pairwise(config), std::invalid_argument);
    }
}

TEST_CASE("pairwise table structure") {
    const auto config = table_config(Scenario::SelfPlusWhite, {0.8, 0.5});
    const auto table = run_pairwise(config);
    REQUIRE(table.rows.size() == 5);
    // Rows sorted by descending ratio.
    CHECK(table.rows.front().ratio == doctest::Approx(1.0));
    CHECK(table.rows.back().ratio == doctest::Approx(0.35));
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        CHECK(table.rows[i].ratio < table.rows[i - 1].ratio);
    }
    for (const auto& row : table.rows) {
        CHECK(row.replications == 10);
        CHECK(row.failures == 0);
        CHECK_FALSE(row.flagged);
        CHECK(row.mean_component_hurst.size() == 2);
        CHECK(row.mean_component_cv.size() == 2);
        CHECK(row.sd_total_hurst > 0.0);
        // The max-H stream keeps the base cv; the other grows as 1/ratio.
        CHECK(row.mean_component_cv[0] == doctest::Approx(1.2).epsilon(0.25));
        CHECK(row.mean_total_hurst > 0.3);
        CHECK(row.mean_total_hurst < 1.1);
    }
    // Achieved ratio tracks the nominal one at mild ratios; heavy-tailed
    // cv sampling biases the extreme rows.
    CHECK(std::abs(table.rows[0].mean_achieved_ratio - 1.0) < 0.10);
    CHECK(std::abs(table.rows[1].mean_achieved_ratio - 0.85) / 0.85 < 0.10);
}

TEST_CASE("experiment runs are deterministic") {
    const auto config = table_config(Scenario::SelfPlusWhite, {0.8, 0.5});
    const auto first = run_experiment(config);
    const auto second = run_experiment(config);
    CHECK(export_table_json(first) == export_table_json(second));
    CHECK(export_table_csv(first) == export_table_csv(second));
}

TEST_CASE("multi-stream with two streams reduces to the pairwise run") {
    auto pairwise_config = table_config(Scenario::SelfPlusSelf, {0.8, 0.6});
    pairwise_config.ratio_grid = {1.0, 0.5};
    auto multi_config = pairwise_config;
    multi_config.scenario = Scenario::MultiStream;

    const auto pairwise_table = run_pairwise(pairwise_config);
    const auto multi_table = run_multi_stream(multi_config);
    REQUIRE(pairwise_table.rows.size() == multi_table.rows.size());
    for (std::size_t i = 0; i < pairwise_table.rows.size(); ++i) {
        CHECK(pairwise_table.rows[i].mean_total_hurst == multi_table.rows[i].mean_total_hurst);
        CHECK(pairwise_table.rows[i].mean_achieved_ratio == multi_table.rows[i].mean_achieved_ratio);
        CHECK(pairwise_table.rows[i].mean_component_cv == multi_table.rows[i].mean_component_cv);
    }
}

TEST_CASE("self-plus-self trend and floor") {
    auto config = table_config(Scenario::SelfPlusSelf, {0.8, 0.6});
    config.replications = 40;
    const auto table = run_pairwise(config);
    // Total-stream estimates stay above the smaller component exponent...
    for (const auto& row : table.rows) {
        CHECK(row.mean_total_hurst >= 0.6 - 0.05);
    }
    // ...and decay toward it as the other stream's cv grows.
    CHECK(table.rows.front().mean_total_hurst > table.rows.back().mean_total_hurst + 0.03);
}

TEST_CASE("multi-stream ratio handling") {
    ExperimentConfig config;
    config.scenario = Scenario::MultiStream;
    config.h_values = {0.8, 0.6, 0.6, 0.6};
    config.ratio_grid = {1.0, 0.5};
    config.length = 1000;
    config.replications = 5;
    config.base_seed = 7;
    const auto table = run_multi_stream(config);
    REQUIRE(table.rows.size() == 2);
    for (const auto& row : table.rows) {
        CHECK(row.mean_component_hurst.size() == 4);
        CHECK(row.replications == 5);
    }
    // Achieved R2 near nominal for the matched row.
    CHECK(std::abs(table.rows[0].mean_achieved_ratio - 1.0) < 0.15);
}

TEST_CASE("failed replications are recorded and flag the row") {
    // A vanishing cv makes every trace exactly constant, so estimation
    // fails in every replication.
    auto config = table_config(Scenario::SelfPlusWhite, {0.8, 0.5});
    config.base_cv = 1e-300;
    config.ratio_grid = {1.0};
    config.replications = 3;
    const auto table = run_experiment(config);
    REQUIRE(table.rows.size() == 1);
    CHECK(table.rows[0].failures == 3);
    CHECK(table.rows[0].replications == 0);
    CHECK(table.rows[0].flagged);
}

TEST_CASE("trace CSV export and import") {
    TrafficTrace trace;
    trace.values = {1.5, 2.25};
    trace.origin = TraceOrigin::external();
    CHECK(export_trace(trace) == "value\n1.5\n2.25\n");

    const auto imported = import_trace("value\n1.5\n2.25\n");
    CHECK(imported.values == std::vector<double>{1.5, 2.25});
    CHECK(imported.origin.kind == TraceOrigin::Kind::External);

    SUBCASE("model trace round trip below 1e-11 relative error") {
        const auto model = transform(generate_fgn({0.8, 500, 99}), calibrate(1.0, 1.2));
        const auto round = import_trace(export_trace(model));
        REQUIRE(round.values.size() == model.values.size());
        for (std::size_t i = 0; i < model.values.size(); ++i) {
            CHECK(std::abs(round.values[i] - model.values[i]) <= 1e-11 * std::abs(model.values[i]));
        }
    }

    SUBCASE("negative value rejected with its line number") {
        try {
            import_trace("value\n1.0\n-2.0\n");
            FAIL("expected ParseError");
        } catch (const ParseError& error) {
            CHECK(error.line() == 3);
        }
    }

    SUBCASE("garbage rejected with its line number") {
        try {
            import_trace("value\n1.0\n2.0abc\n");
            FAIL("expected ParseError");
        } catch (const ParseError& error) {
            CHECK(error.line() == 3);
        }
    }

    SUBCASE("missing header rejected") {
        CHECK_THROWS_AS(import_trace("1.0\n2.0\n"), ParseError);
    }

    SUBCASE("empty data rejected") {
        CHECK_THROWS_AS(import_trace("value\n"), ParseError);
    }
}

TEST_CASE("empty table exports as a bare header") {
    ExperimentTable table;
    table.config = table_config(Scenario::SelfPlusWhite, {0.8, 0.5});
    CHECK(export_table_csv(table) == "ratio,mean_h_1,mean_h_2,mean_h_total,sd_h_total,reps\n");
}

TEST_CASE("table CSV shape") {
    auto config = table_config(Scenario::SelfPlusWhite, {0.8, 0.5});
    config.replications = 2;
    const auto table = run_experiment(config);
    const auto csv = export_table_csv(table);
    CHECK(csv.rfind("ratio,mean_h_1,mean_h_2,mean_h_total,sd_h_total,reps\n", 0) == 0);
    // Header plus one line per grid point.
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
}

TEST_CASE("table JSON round trip") {
    auto config = table_config(Scenario::SelfPlusAr1, {0.8, 0.5});
    config.replications = 3;
    config.ratio_grid = {1.0, 0.65};
    const auto table = run_experiment(config);
    const auto exported = export_table_json(table);
    const auto imported = import_table_json(exported);
    CHECK(export_table_json(imported) == exported);
    REQUIRE(imported.rows.size() == table.rows.size());
    CHECK(imported.rows[0].mean_total_hurst == table.rows[0].mean_total_hurst);
    CHECK(imported.config.base_seed == table.config.base_seed);
    CHECK(imported.config.scenario == Scenario::SelfPlusAr1);
}

TEST_CASE("config JSON round trip") {
    ExperimentConfig config;
    config.scenario = Scenario::MultiStream;
    config.h_values = {0.8, 0.6, 0.6};
    config.base_cv = 0.9;
    config.ratio_grid = {1.0, 0.35};
    config.length = 4096;
    config.replications = 17;
    config.base_seed = 123456789;
    config.estimator = HurstMethod::Rs;
    config.ar_phi = 0.25;
    config.grid.min_scale = 16;
    config.grid.max_scale_fraction = 0.125;
    config.grid.points_per_decade = 6;
    config.dfa_order = 2;

    const auto round = import_config_json(export_config_json(config));
    CHECK(round.scenario == config.scenario);
    CHECK(round.h_values == config.h_values);
    CHECK(round.base_cv == config.base_cv);
    CHECK(round.ratio_grid == config.ratio_grid);
    CHECK(round.length == config.length);
    CHECK(round.replications == config.replications);
    CHECK(round.base_seed == config.base_seed);
    CHECK(round.estimator == config.estimator);
    CHECK(round.ar_phi == config.ar_phi);
    CHECK(round.grid.min_scale == config.grid.min_scale);
    CHECK(round.grid.max_scale_fraction == config.grid.max_scale_fraction);
    CHECK(round.grid.points_per_decade == config.grid.points_per_decade);
    CHECK(round.dfa_order == config.dfa_order);
}

TEST_CASE("scenario names round trip") {
    for (const auto scenario : {Scenario::SelfPlusWhite, Scenario::SelfPlusAr1,
                                Scenario::SelfPlusSelf, Scenario::MultiStream}) {
        CHECK(scenario_from_string(to_string(scenario)) == scenario);
    }
    CHECK_THROWS_AS(scenario_from_string("bogus"), std::invalid_argument);
}
