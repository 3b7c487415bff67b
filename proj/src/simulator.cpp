#include "trust_pomdp/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "trust_pomdp/planner.hpp"

namespace trust_pomdp {

void ScenarioConfig::validate() const {
    env.validate();
    trust_params.validate();
    reward_spec.validate();
    if (!(discount > 0.0 && discount <= 1.0)) throw std::invalid_argument("ScenarioConfig: discount must lie in (0, 1]");
    if (n_episodes < 1) throw std::invalid_argument("ScenarioConfig: n_episodes must be at least 1");
}

double AggregateStats::se_reward() const { return n_episodes > 0 ? std_reward / std::sqrt(double(n_episodes)) : 0.0; }

double AggregateStats::se_final_trust() const {
    return n_episodes > 0 ? std_final_trust / std::sqrt(double(n_episodes)) : 0.0;
}

EpisodeLog run_episode(const ScenarioConfig& config, const Mission<double>& mission, const StreamKey& episode_key) {
    if (static_cast<int>(mission.size()) != config.env.n_sites) {
        throw std::invalid_argument("run_episode: mission has " + std::to_string(mission.size()) + " sites, expected " +
                                    std::to_string(config.env.n_sites));
    }
    EpisodeLog log;
    log.sites.reserve(mission.size());
    TrustBelief<double> belief = config.trust_params.initial_belief();

    for (int n = 1; n <= config.env.n_sites; ++n) {
        const auto& site = mission[static_cast<std::size_t>(n - 1)];
        const auto problem = make_planning_problem(mission, n, config.assumed_model, config.reward_spec,
                                                   config.trust_params, config.discount);
        const auto solution = backward_induction(problem, BeliefLattice<double>::single(belief));
        const GearChoice robot = optimal_action(solution, belief);

        const auto human_dist = human_action_distribution(config.actual_model, belief, robot, site.reported);
        auto rng = episode_key.child(static_cast<std::uint64_t>(n - 1)).child(StreamRole::kHuman).engine();
        const GearChoice human = sample_human_action(human_dist, rng.uniform());

        const double reward = realized_reward(human, site.threat_present, config.reward_spec);
        const bool performance = observe_performance(robot, site.threat_present);
        log.sites.push_back({n, belief, robot, human, site.threat_present, performance, reward});
        log.mission_total += reward;
        belief = update_belief(belief, performance, config.trust_params);
    }
    log.final_belief = belief;
    log.final_trust = trust_mean(belief);
    return log;
}

StreamKey episode_stream(std::uint64_t master_seed, std::uint64_t index) { return StreamKey(master_seed).child(index); }

unsigned default_worker_count() {
    if (const char* env = std::getenv("TRUST_POMDP_WORKERS")) {
        try {
            const int n = std::stoi(env);
            if (n > 0) return static_cast<unsigned>(n);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<EpisodeLog> run_episodes(const ScenarioConfig& config, unsigned workers) {
    config.validate();
    const auto n = static_cast<std::size_t>(config.n_episodes);
    std::vector<EpisodeLog> logs(n);
    if (workers == 0) workers = default_worker_count();
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t e = next++; e < n; e = next++) {
            try {
                const StreamKey key = episode_stream(config.master_seed, e);
                const auto mission = generate_mission<double>(config.env, key.child(StreamRole::kMission));
                logs[e] = run_episode(config, mission, key.child(StreamRole::kHuman));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = n;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
    return logs;
}

AggregateStats run_monte_carlo(const ScenarioConfig& config, unsigned workers) {
    return summarize(run_episodes(config, workers));
}

AggregateStats summarize(const std::vector<EpisodeLog>& logs) {
    if (logs.empty()) throw std::invalid_argument("summarize: no episode logs");
    const double n = static_cast<double>(logs.size());
    double sum_reward = 0.0;
    double sum_trust = 0.0;
    for (const auto& log : logs) {
        sum_reward += log.mission_total;
        sum_trust += log.final_trust;
    }
    AggregateStats stats;
    stats.n_episodes = static_cast<int>(logs.size());
    stats.mean_reward = sum_reward / n;
    stats.mean_final_trust = sum_trust / n;
    if (logs.size() > 1) {
        double ss_reward = 0.0;
        double ss_trust = 0.0;
        for (const auto& log : logs) {
            ss_reward += (log.mission_total - stats.mean_reward) * (log.mission_total - stats.mean_reward);
            ss_trust += (log.final_trust - stats.mean_final_trust) * (log.final_trust - stats.mean_final_trust);
        }
        stats.std_reward = std::sqrt(ss_reward / (n - 1.0));
        stats.std_final_trust = std::sqrt(ss_trust / (n - 1.0));
    }
    return stats;
}

}  // namespace trust_pomdp
