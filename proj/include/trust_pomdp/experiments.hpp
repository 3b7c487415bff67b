#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "trust_pomdp/config.hpp"
#include "trust_pomdp/csv_io.hpp"

namespace trust_pomdp {

/// Planner condition: assumed behavior model and reward function.
struct PlannerCondition {
    BehaviorModel model;
    bool trust_seeking;

    std::string label() const;
};

/// The four (model x reward) conditions, in a fixed order.
std::vector<PlannerCondition> planner_conditions();

/// Odd sites 1, 3, ..., up to n_sites.
std::vector<int> experiment1_sites(int n_sites);

/// The mission shared by every experiment-1 condition (fixed seed env.seed).
Mission<double> experiment1_mission(const RunConfig& config);

/// Policy solution at `site` of `mission` on the configured display grid.
PolicySolution<double> solve_site(const RunConfig& config, const Mission<double>& mission, int site,
                                  BehaviorModel model, bool trust_seeking);

struct WrittenFiles {
    std::vector<std::filesystem::path> files;
    std::filesystem::path manifest;
};

/// Writes exp1/<condition>_site<k>.csv for every condition and odd site,
/// plus exp1/mission.csv and exp1/manifest.csv.
WrittenFiles run_experiment1(const RunConfig& config);

/// Solves the configured scenario at `solve_site` and writes
/// solve/mission.csv and solve/policy_site<k>.csv.
WrittenFiles run_solve(const RunConfig& config);

struct Experiment2Cell {
    std::string label;
    ScenarioConfig scenario;
};

/// Full factorial: reward x assumed model x actual model x initial belief
/// x (kappa1, kappa2). Each cell's master seed folds in its index.
std::vector<Experiment2Cell> experiment2_cells(const RunConfig& config);

using ProgressFn = std::function<void(const AggregateRow&, std::size_t index, std::size_t total)>;

/// Runs every cell, writes exp2/cells/<index>.csv per cell and the merged
/// exp2/results.csv. Returns the rows in cell order.
std::vector<AggregateRow> run_experiment2(const RunConfig& config, unsigned workers = 0,
                                          const ProgressFn& progress = {});

/// Monte Carlo run of the configured scenario: simulate/aggregate.csv and
/// simulate/episodes.csv.
AggregateRow run_simulation(const RunConfig& config, unsigned workers = 0);

}  // namespace trust_pomdp
