#include "trust_pomdp/experiments.hpp"

#include <cstdio>

namespace trust_pomdp {

namespace fs = std::filesystem;

std::string PlannerCondition::label() const {
    return std::string(to_string(model)) + (trust_seeking ? "_trust_seeking" : "_task");
}

std::vector<PlannerCondition> planner_conditions() {
    return {{BehaviorModel::kReversePsychology, false},
            {BehaviorModel::kReversePsychology, true},
            {BehaviorModel::kDisuse, false},
            {BehaviorModel::kDisuse, true}};
}

std::vector<int> experiment1_sites(int n_sites) {
    std::vector<int> sites;
    for (int k = 1; k <= n_sites; k += 2) sites.push_back(k);
    return sites;
}

Mission<double> experiment1_mission(const RunConfig& config) {
    return generate_mission<double>(config.scenario.env);
}

PolicySolution<double> solve_site(const RunConfig& config, const Mission<double>& mission, int site,
                                  BehaviorModel model, bool trust_seeking) {
    const auto& sc = config.scenario;
    RewardSpec<double> reward = sc.reward_spec;
    reward.trust_seeking = trust_seeking;
    const auto problem = make_planning_problem(mission, site, model, reward, sc.trust_params, sc.discount);
    const auto lattice = BeliefLattice<double>::covering(config.grid.alpha_min, config.grid.alpha_max,
                                                         config.grid.beta_min, config.grid.beta_max, sc.trust_params);
    return backward_induction(problem, lattice);
}

WrittenFiles run_experiment1(const RunConfig& config) {
    const fs::path dir = config.output_dir / "exp1";
    const auto mission = experiment1_mission(config);
    write_mission(mission, dir / "mission.csv");

    WrittenFiles out;
    std::string manifest = "condition,assumed_model,reward,site,file\n";
    for (const auto& condition : planner_conditions()) {
        for (int site : experiment1_sites(config.scenario.env.n_sites)) {
            const auto solution = solve_site(config, mission, site, condition.model, condition.trust_seeking);
            const std::string name = condition.label() + "_site" + std::to_string(site) + ".csv";
            export_policy_grid(solution, dir / name);
            out.files.push_back(dir / name);
            manifest += condition.label() + ',' + std::string(to_string(condition.model)) + ',' +
                        (condition.trust_seeking ? "trust_seeking" : "task") + ',' + std::to_string(site) + ',' +
                        name + '\n';
        }
    }
    out.manifest = dir / "manifest.csv";
    write_text_file(out.manifest, manifest);
    return out;
}

WrittenFiles run_solve(const RunConfig& config) {
    const fs::path dir = config.output_dir / "solve";
    const auto mission = experiment1_mission(config);
    write_mission(mission, dir / "mission.csv");
    const auto& sc = config.scenario;
    const auto solution =
        solve_site(config, mission, config.solve_site, sc.assumed_model, sc.reward_spec.trust_seeking);
    WrittenFiles out;
    out.files.push_back(dir / ("policy_site" + std::to_string(config.solve_site) + ".csv"));
    export_policy_grid(solution, out.files.back());
    out.manifest = dir / "mission.csv";
    return out;
}

std::vector<Experiment2Cell> experiment2_cells(const RunConfig& config) {
    struct Init {
        double alpha;
        double beta;
    };
    struct Kappas {
        double k1;
        double k2;
    };
    const BehaviorModel models[] = {BehaviorModel::kReversePsychology, BehaviorModel::kDisuse};
    const Init inits[] = {{100, 50}, {50, 100}};
    const Kappas kappas[] = {{2, 2}, {2, 50}};

    std::vector<Experiment2Cell> cells;
    for (bool trust_seeking : {false, true}) {
        for (auto assumed : models) {
            for (auto actual : models) {
                for (const auto& init : inits) {
                    for (const auto& kappa : kappas) {
                        ScenarioConfig sc = config.scenario;
                        sc.reward_spec.trust_seeking = trust_seeking;
                        sc.assumed_model = assumed;
                        sc.actual_model = actual;
                        sc.trust_params.alpha_init = init.alpha;
                        sc.trust_params.beta_init = init.beta;
                        sc.env.kappa1 = kappa.k1;
                        sc.env.kappa2 = kappa.k2;
                        const auto index = static_cast<std::uint64_t>(cells.size());
                        sc.master_seed = StreamKey(config.scenario.master_seed).child(index).value();
                        char label[128];
                        std::snprintf(label, sizeof label, "%s/%s/%s/a%g_b%g/k%g_%g",
                                      trust_seeking ? "trust_seeking" : "task", std::string(to_string(assumed)).c_str(),
                                      std::string(to_string(actual)).c_str(), init.alpha, init.beta, kappa.k1,
                                      kappa.k2);
                        cells.push_back({label, sc});
                    }
                }
            }
        }
    }
    return cells;
}

std::vector<AggregateRow> run_experiment2(const RunConfig& config, unsigned workers, const ProgressFn& progress) {
    const fs::path dir = config.output_dir / "exp2";
    const auto cells = experiment2_cells(config);
    std::vector<AggregateRow> rows;
    rows.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        AggregateRow row{cells[c].label, cells[c].scenario, run_monte_carlo(cells[c].scenario, workers)};
        char name[32];
        std::snprintf(name, sizeof name, "cell_%02zu.csv", c);
        write_aggregate_rows({row}, dir / "cells" / name);
        rows.push_back(std::move(row));
        if (progress) progress(rows.back(), c, cells.size());
    }
    write_aggregate_rows(rows, dir / "results.csv");
    return rows;
}

AggregateRow run_simulation(const RunConfig& config, unsigned workers) {
    const fs::path dir = config.output_dir / "simulate";
    const auto logs = run_episodes(config.scenario, workers);
    AggregateRow row{"simulate", config.scenario, summarize(logs)};
    write_aggregate_rows({row}, dir / "aggregate.csv");
    write_episode_logs(logs, dir / "episodes.csv");
    return row;
}

}  // namespace trust_pomdp
