#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oppnet/config.hpp"
#include "oppnet/report.hpp"
#include "oppnet/sim.hpp"

namespace {

std::string scenario_label(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot write to " + path);
    return file;
}

void apply_env_seed(oppnet::ScenarioConfig& cfg) {
    if (const char* env = std::getenv("OPPNET_SEED")) {
        cfg.seed = static_cast<std::uint64_t>(std::stoull(env));
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Opportunistic-network routing simulator"};
    app.require_subcommand(1);

    // run
    std::string run_config, run_strategy, run_out, run_format = "table", run_timeseries;
    std::int64_t run_seed = -1;
    auto* run_cmd = app.add_subcommand("run", "Run a single scenario");
    run_cmd->add_option("config", run_config, "Scenario config file")->required();
    run_cmd->add_option("--seed", run_seed, "Override the scenario seed");
    run_cmd->add_option("--strategy", run_strategy, "Override the routing strategy");
    run_cmd->add_option("--out", run_out, "Write the report here instead of stdout");
    run_cmd->add_option("--format", run_format, "table, csv, or json")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    run_cmd->add_option("--timeseries", run_timeseries, "Write per-interval delivery CSV here");

    // compare
    std::vector<std::string> cmp_configs, cmp_strategies;
    std::vector<std::int64_t> cmp_seeds;
    std::string cmp_out, cmp_format = "table";
    auto* cmp_cmd = app.add_subcommand("compare", "Run a strategy/scenario/seed batch");
    cmp_cmd->add_option("--configs", cmp_configs, "Scenario config files")->required();
    cmp_cmd->add_option("--strategies", cmp_strategies, "Routing strategies to run")->required();
    cmp_cmd->add_option("--seeds", cmp_seeds, "Seeds to run (default: scenario seed)");
    cmp_cmd->add_option("--out", cmp_out, "Write the comparison here instead of stdout");
    cmp_cmd->add_option("--format", cmp_format, "table, csv, or json")
        ->check(CLI::IsMember({"table", "csv", "json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            oppnet::ScenarioConfig cfg = oppnet::parse_scenario(run_config);
            apply_env_seed(cfg);
            if (run_seed >= 0) cfg.seed = static_cast<std::uint64_t>(run_seed);
            if (!run_strategy.empty()) cfg.strategy = run_strategy;
            oppnet::validate_scenario(cfg);

            oppnet::Simulation sim(cfg);
            oppnet::StatsReport report = sim.run();

            std::ofstream file;
            std::ostream& out = open_out(file, run_out);
            if (run_format == "json") {
                out << oppnet::report_to_json(report).dump(2) << "\n";
            } else {
                std::string label = cfg.strategy + "@" + scenario_label(run_config);
                oppnet::emit_report({oppnet::ReportColumn::from(label, report)}, run_format, out);
            }
            if (!run_timeseries.empty()) {
                std::ofstream ts(run_timeseries);
                if (!ts) throw std::runtime_error("cannot write to " + run_timeseries);
                oppnet::emit_timeseries_csv(sim.timeseries(), ts);
            }
            return 0;
        }

        if (*cmp_cmd) {
            if (cmp_strategies.empty()) throw std::runtime_error("no strategies given");
            if (cmp_configs.empty()) throw std::runtime_error("no configs given");

            std::vector<oppnet::ReportColumn> columns;
            for (const auto& path : cmp_configs) {
                oppnet::ScenarioConfig base = oppnet::parse_scenario(path);
                apply_env_seed(base);
                std::vector<std::uint64_t> seeds;
                if (cmp_seeds.empty()) seeds.push_back(base.seed);
                for (std::int64_t s : cmp_seeds) seeds.push_back(static_cast<std::uint64_t>(s));

                for (const auto& strat : cmp_strategies) {
                    std::vector<oppnet::ReportColumn> per_seed;
                    for (std::uint64_t s : seeds) {
                        oppnet::ScenarioConfig cfg = base;
                        cfg.strategy = strat;
                        cfg.seed = s;
                        oppnet::validate_scenario(cfg);
                        std::string label =
                            strat + "@" + scenario_label(path) + "#" + std::to_string(s);
                        try {
                            per_seed.push_back(
                                oppnet::ReportColumn::from(label, oppnet::run_scenario(cfg)));
                        } catch (const std::exception& e) {
                            throw std::runtime_error("run failed for " + label + ": " + e.what());
                        }
                    }
                    if (seeds.size() > 1) {
                        columns.push_back(oppnet::average_columns(
                            strat + "@" + scenario_label(path) + "(avg)", per_seed));
                    }
                    columns.insert(columns.end(), per_seed.begin(), per_seed.end());
                }
            }
            std::ofstream file;
            std::ostream& out = open_out(file, cmp_out);
            oppnet::emit_report(columns, cmp_format, out);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
