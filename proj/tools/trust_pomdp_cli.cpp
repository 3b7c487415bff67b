// Command-line front end: solve, simulate, exp1, exp2.
//
// Exit codes: 0 success, 1 usage error, 2 configuration error, 3 runtime error.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "trust_pomdp/config.hpp"
#include "trust_pomdp/experiments.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Overrides {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> episodes;
};

void add_common_options(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config_path, "JSON run configuration (defaults used when omitted)");
    cmd->add_option("--out", o.out_dir, "Output directory");
    cmd->add_option("--seed", o.seed, "Seed for missions and Monte Carlo streams");
    cmd->add_option("--episodes", o.episodes, "Monte Carlo episodes per scenario")->check(CLI::PositiveNumber);
}

trust_pomdp::RunConfig resolve(const Overrides& o, trust_pomdp::ExperimentKind kind) {
    using namespace trust_pomdp;
    RunConfig config = o.config_path.empty() ? parse_config(nlohmann::json::object()) : load_config(o.config_path);
    config.experiment = kind;
    if (!o.out_dir.empty()) config.output_dir = o.out_dir;
    if (o.seed) {
        config.scenario.env.seed = *o.seed;
        config.scenario.master_seed = *o.seed;
    }
    if (o.episodes) config.scenario.n_episodes = *o.episodes;
    return parse_config(to_json(config));
}

void print_row(const trust_pomdp::AggregateRow& row) {
    std::printf("%-60s J_m = %9.2f (sd %7.2f, se %5.2f)  t_N = %.4f (sd %.4f, se %.5f)\n", row.label.c_str(),
                row.stats.mean_reward, row.stats.std_reward, row.stats.se_reward(), row.stats.mean_final_trust,
                row.stats.std_final_trust, row.stats.se_final_trust());
}

}  // namespace

int main(int argc, char** argv) {
    using namespace trust_pomdp;
    CLI::App app{"Trust-aware POMDP planning and simulation"};
    app.require_subcommand(1);

    Overrides overrides;
    auto* solve = app.add_subcommand("solve", "Solve the planning problem at one site and export its policy grid");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo simulation of the configured scenario");
    auto* exp1 = app.add_subcommand("exp1", "Policy grids for the four planner conditions at sites 1, 3, ..., N");
    auto* exp2 = app.add_subcommand("exp2", "Team performance and final trust over the full factorial sweep");
    std::optional<int> site;
    solve->add_option("--site", site, "Site to solve (1-based)")->check(CLI::PositiveNumber);
    for (auto* cmd : {solve, simulate, exp1, exp2}) add_common_options(cmd, overrides);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (solve->parsed()) {
            auto config = resolve(overrides, ExperimentKind::kSolve);
            if (site) {
                config.solve_site = *site;
                config = parse_config(to_json(config));
            }
            const auto written = run_solve(config);
            for (const auto& f : written.files) std::printf("wrote %s\n", f.string().c_str());
        } else if (simulate->parsed()) {
            const auto config = resolve(overrides, ExperimentKind::kSimulate);
            print_row(run_simulation(config));
            std::printf("wrote %s\n", (config.output_dir / "simulate").string().c_str());
        } else if (exp1->parsed()) {
            const auto config = resolve(overrides, ExperimentKind::kExperiment1);
            const auto written = run_experiment1(config);
            std::printf("wrote %zu grid files and %s\n", written.files.size(), written.manifest.string().c_str());
        } else if (exp2->parsed()) {
            const auto config = resolve(overrides, ExperimentKind::kExperiment2);
            run_experiment2(config, 0, [](const AggregateRow& row, std::size_t i, std::size_t n) {
                std::printf("[%2zu/%zu] ", i + 1, n);
                print_row(row);
                std::fflush(stdout);
            });
            std::printf("wrote %s\n", (config.output_dir / "exp2" / "results.csv").string().c_str());
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
