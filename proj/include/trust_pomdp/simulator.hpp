#pragma once

#include <cstdint>
#include <vector>

#include "trust_pomdp/behavior_models.hpp"
#include "trust_pomdp/mission_env.hpp"
#include "trust_pomdp/random.hpp"
#include "trust_pomdp/reward_model.hpp"
#include "trust_pomdp/trust_model.hpp"

namespace trust_pomdp {

/// One Monte Carlo condition: environment, trust dynamics, reward, and the
/// planner's assumed vs. the simulated human's actual behavior model.
struct ScenarioConfig {
    EnvConfig env;
    TrustParams<double> trust_params;
    RewardSpec<double> reward_spec;
    BehaviorModel assumed_model = BehaviorModel::kReversePsychology;
    BehaviorModel actual_model = BehaviorModel::kReversePsychology;
    double discount = 0.9;
    int n_episodes = 10000;
    std::uint64_t master_seed = 0;

    void validate() const;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

struct SiteRecord {
    int site;  // 1-based
    TrustBelief<double> belief_before;
    GearChoice robot_action;
    GearChoice human_action;
    bool threat_present;
    bool performance;
    double reward;
};

struct EpisodeLog {
    std::vector<SiteRecord> sites;
    double mission_total = 0.0;  // J_m, undiscounted
    TrustBelief<double> final_belief{1.0, 1.0};
    double final_trust = 0.5;    // mean of the post-mission belief
};

struct AggregateStats {
    int n_episodes = 0;
    double mean_reward = 0.0;
    double std_reward = 0.0;
    double mean_final_trust = 0.0;
    double std_final_trust = 0.0;

    double se_reward() const;
    double se_final_trust() const;
};

/// Runs the sense / re-plan / human acts / trust update loop over every site.
/// Human draws come from per-site substreams of `episode_key`.
EpisodeLog run_episode(const ScenarioConfig& config, const Mission<double>& mission, const StreamKey& episode_key);

/// Mission and human substreams of episode `index` under `master_seed`.
StreamKey episode_stream(std::uint64_t master_seed, std::uint64_t index);

/// Independent mission and episode per index; results do not depend on
/// `workers` (0 = TRUST_POMDP_WORKERS or hardware concurrency).
std::vector<EpisodeLog> run_episodes(const ScenarioConfig& config, unsigned workers = 0);

AggregateStats run_monte_carlo(const ScenarioConfig& config, unsigned workers = 0);

/// Sample mean and n-1 standard deviation; a single log has std 0.
AggregateStats summarize(const std::vector<EpisodeLog>& logs);

/// Worker count from TRUST_POMDP_WORKERS, falling back to hardware concurrency.
unsigned default_worker_count();

}  // namespace trust_pomdp
