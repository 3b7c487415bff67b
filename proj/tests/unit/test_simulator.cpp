#include <doctest.h>

#include <cmath>

#include "trust_pomdp/simulator.hpp"

using namespace trust_pomdp;

namespace {

ScenarioConfig small_scenario(int episodes, std::uint64_t seed) {
    ScenarioConfig c;
    c.n_episodes = episodes;
    c.master_seed = seed;
    return c;
}

EpisodeLog log_with_total(double total, double trust) {
    EpisodeLog log;
    log.mission_total = total;
    log.final_trust = trust;
    return log;
}

bool same_log(const EpisodeLog& a, const EpisodeLog& b) {
    if (a.sites.size() != b.sites.size() || a.mission_total != b.mission_total || a.final_trust != b.final_trust ||
        !(a.final_belief == b.final_belief)) {
        return false;
    }
    for (std::size_t k = 0; k < a.sites.size(); ++k) {
        const auto& x = a.sites[k];
        const auto& y = b.sites[k];
        if (x.site != y.site || !(x.belief_before == y.belief_before) || x.robot_action != y.robot_action ||
            x.human_action != y.human_action || x.threat_present != y.threat_present ||
            x.performance != y.performance || x.reward != y.reward) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("single-site hand trace at full trust") {
    ScenarioConfig c;
    c.env.n_sites = 1;
    c.trust_params.alpha_init = 1e6;
    c.trust_params.beta_init = 1;
    for (auto model : {BehaviorModel::kReversePsychology, BehaviorModel::kDisuse}) {
        c.assumed_model = c.actual_model = model;
        const Mission<double> mission{{0.97, true, 0.6, 1.0 - kProbabilityClamp}};
        const auto log = run_episode(c, mission, StreamKey(5));
        REQUIRE(log.sites.size() == 1);
        CHECK(log.sites[0].robot_action == GearChoice::kWear);
        CHECK(log.sites[0].human_action == GearChoice::kWear);
        CHECK(log.sites[0].performance);
        CHECK(log.mission_total == doctest::Approx(-61));
        CHECK(log.final_belief == TrustBelief<double>(1e6 + 10, 1));
    }
}

TEST_CASE("mission length must match the environment") {
    ScenarioConfig c;
    c.env.n_sites = 2;
    const Mission<double> mission{{0.5, true, 0.5, 0.5}};
    CHECK_THROWS_AS(run_episode(c, mission, StreamKey(1)), std::invalid_argument);
}

TEST_CASE("episodes replay bit-identically") {
    const auto c = small_scenario(1, 3);
    const auto mission = generate_mission<double>(c.env, StreamKey(8));
    const auto a = run_episode(c, mission, StreamKey(42));
    const auto b = run_episode(c, mission, StreamKey(42));
    CHECK(same_log(a, b));
}

TEST_CASE("episode logs obey the trust dynamics and the reward ledger") {
    for (auto assumed : {BehaviorModel::kReversePsychology, BehaviorModel::kDisuse}) {
        for (auto actual : {BehaviorModel::kReversePsychology, BehaviorModel::kDisuse}) {
            for (bool seeking : {false, true}) {
                auto c = small_scenario(40, 17);
                c.assumed_model = assumed;
                c.actual_model = actual;
                c.reward_spec.trust_seeking = seeking;
                for (const auto& log : run_episodes(c, 1)) {
                    REQUIRE(log.sites.size() == 15);
                    double total = 0.0;
                    TrustBelief<double> b = c.trust_params.initial_belief();
                    for (const auto& r : log.sites) {
                        CHECK(r.belief_before == b);
                        CHECK(r.performance == observe_performance(r.robot_action, r.threat_present));
                        CHECK(r.reward == realized_reward(r.human_action, r.threat_present, c.reward_spec));
                        total += r.reward;
                        b = update_belief(b, r.performance, c.trust_params);
                    }
                    CHECK(log.final_belief == b);
                    CHECK(log.mission_total == total);
                    CHECK(log.mission_total >= 15 * -110.0);
                    CHECK(log.mission_total <= 15 * -6.0);
                    CHECK(log.final_trust > 0.0);
                    CHECK(log.final_trust < 1.0);
                    const double i = (b.alpha() - 100.0) / 10.0;
                    const double j = (b.beta() - 50.0) / 20.0;
                    CHECK(i == std::round(i));
                    CHECK(j == std::round(j));
                    CHECK(i + j == 15.0);
                }
            }
        }
    }
}

TEST_CASE("a fully trusting human does what the robot recommends") {
    auto c = small_scenario(50, 4);
    c.trust_params.alpha_init = 1e12;
    c.trust_params.beta_init = 1;
    for (auto model : {BehaviorModel::kReversePsychology, BehaviorModel::kDisuse}) {
        c.assumed_model = c.actual_model = model;
        for (const auto& log : run_episodes(c, 1)) {
            for (const auto& r : log.sites) CHECK(r.human_action == r.robot_action);
        }
    }
}

TEST_CASE("Monte Carlo results do not depend on the worker count") {
    auto c = small_scenario(60, 123);
    c.reward_spec.trust_seeking = true;
    const auto one = run_episodes(c, 1);
    const auto four = run_episodes(c, 4);
    REQUIRE(one.size() == four.size());
    for (std::size_t e = 0; e < one.size(); ++e) CHECK(same_log(one[e], four[e]));
    const auto s1 = run_monte_carlo(c, 1);
    const auto s3 = run_monte_carlo(c, 3);
    CHECK(s1.mean_reward == s3.mean_reward);
    CHECK(s1.std_reward == s3.std_reward);
    CHECK(s1.mean_final_trust == s3.mean_final_trust);
}

TEST_CASE("summarize") {
    const auto two = summarize({log_with_total(-10, 0.4), log_with_total(-20, 0.6)});
    CHECK(two.n_episodes == 2);
    CHECK(two.mean_reward == doctest::Approx(-15));
    CHECK(two.std_reward == doctest::Approx(7.0710678118654755));
    CHECK(two.mean_final_trust == doctest::Approx(0.5));
    CHECK(two.se_reward() == doctest::Approx(5.0));

    const auto same = summarize(std::vector<EpisodeLog>(4, log_with_total(-33, 0.7)));
    CHECK(same.std_reward == 0.0);
    CHECK(same.std_final_trust == 0.0);

    const auto single = summarize({log_with_total(-12.5, 0.25)});
    CHECK(single.mean_reward == -12.5);
    CHECK(single.std_reward == 0.0);
    CHECK(single.std_final_trust == 0.0);

    CHECK_THROWS_AS(summarize({}), std::invalid_argument);
}

TEST_CASE("a one-episode Monte Carlo run equals that episode") {
    const auto c = small_scenario(1, 55);
    const auto logs = run_episodes(c, 1);
    const auto stats = run_monte_carlo(c, 1);
    CHECK(stats.n_episodes == 1);
    CHECK(stats.mean_reward == logs[0].mission_total);
    CHECK(stats.mean_final_trust == logs[0].final_trust);
    CHECK(stats.std_reward == 0.0);
}

TEST_CASE("invalid scenarios are rejected") {
    auto c = small_scenario(0, 1);
    CHECK_THROWS_AS(run_monte_carlo(c, 1), std::invalid_argument);
    c = small_scenario(5, 1);
    c.discount = 1.5;
    CHECK_THROWS_AS(run_monte_carlo(c, 1), std::invalid_argument);
}
