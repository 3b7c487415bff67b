#include <doctest.h>

#include <cmath>
#include <random>

#include "trust_pomdp/reward_model.hpp"

using namespace trust_pomdp;

namespace {
constexpr auto kRP = BehaviorModel::kReversePsychology;
constexpr auto kDisuse = BehaviorModel::kDisuse;
const RewardSpec<double> kTask{};

RewardSpec<double> trust_seeking() {
    RewardSpec<double> spec;
    spec.trust_seeking = true;
    return spec;
}
}  // namespace

TEST_CASE("cell utility is the negative weighted cost") {
    CHECK(cell_utility(CostPair{1, 300}, kTask) == doctest::Approx(-61));
    CHECK(cell_utility(CostPair{100, 50}, kTask) == doctest::Approx(-110));
    RewardSpec<double> heavy;
    heavy.health_weight = 7;
    heavy.time_weight = 3;
    CHECK(cell_utility(CostPair{0, 0}, heavy) == 0.0);
}

TEST_CASE("realized reward per cell") {
    CHECK(realized_reward(GearChoice::kWear, true, kTask) == doctest::Approx(-61));
    CHECK(realized_reward(GearChoice::kSkip, false, kTask) == doctest::Approx(-6));
    CHECK(realized_reward(GearChoice::kWear, false, kTask) == doctest::Approx(-50));
    CHECK(realized_reward(GearChoice::kSkip, true, kTask) == doctest::Approx(-110));
}

TEST_CASE("expected task reward by four-cell enumeration") {
    // (2/3 * 0.8)(-61) + (2/3 * 0.2)(-50) + (1/3 * 0.8)(-110) + (1/3 * 0.2)(-6)
    CHECK(expected_task_reward(TrustBelief<double>(100, 50), kRP, GearChoice::kWear, 0.8, 0.5, kTask) ==
          doctest::Approx(-68.93333333333334).epsilon(1e-12));

    const TrustBelief<double> neutral(30, 30);
    CHECK(expected_task_reward(neutral, kRP, GearChoice::kSkip, 0.8, 0.5, kTask) ==
          doctest::Approx(expected_task_reward(neutral, kRP, GearChoice::kWear, 0.8, 0.5, kTask)).epsilon(1e-14));

    const double certain = 1.0 - kProbabilityClamp;
    for (auto model : {kRP, kDisuse}) {
        CHECK(std::abs(expected_task_reward(TrustBelief<double>(1e6, 1), model, GearChoice::kWear, certain, 0.5,
                                            kTask) +
                       61.0) <= 1e-3);
    }
}

TEST_CASE("threat probability must be inside (0, 1)") {
    CHECK_THROWS_AS(expected_task_reward(TrustBelief<double>(1, 1), kRP, GearChoice::kWear, 1.0, 0.5, kTask),
                    std::invalid_argument);
    CHECK_THROWS_AS(expected_task_reward(TrustBelief<double>(1, 1), kDisuse, GearChoice::kWear, 0.5, 0.0, kTask),
                    std::invalid_argument);
}

TEST_CASE("trust bonus") {
    const auto spec = trust_seeking();
    CHECK(spec.bonus_weight(1) == doctest::Approx(30.203253503851634).epsilon(1e-12));
    CHECK(expected_trust_bonus(1, GearChoice::kWear, 1.0 - kProbabilityClamp, spec) ==
          doctest::Approx(30.2033).epsilon(1e-5));
    CHECK(expected_trust_bonus(1, GearChoice::kSkip, 0.5, spec) == doctest::Approx(15.101626751925817));
    for (int k : {1, 5, 15}) CHECK(expected_trust_bonus(k, GearChoice::kWear, 0.7, kTask) == 0.0);
    CHECK_THROWS_AS(expected_trust_bonus(0, GearChoice::kWear, 0.7, spec), std::invalid_argument);
}

TEST_CASE("bonus schedule decreases") {
    const auto spec = trust_seeking();
    for (int k = 1; k < 40; ++k) CHECK(spec.bonus_weight(k + 1) < spec.bonus_weight(k));
    CHECK(spec.bonus_weight(15) < 0.05);
}

TEST_CASE("expected reward properties over random inputs") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> shape(0.01, 1000.0);
    std::uniform_real_distribution<double> prob(1e-6, 1.0 - 1e-6);
    const double lo = -110.0, hi = -6.0;
    for (int n = 0; n < 2000; ++n) {
        const TrustBelief<double> b(shape(rng), shape(rng));
        const double r = prob(rng);
        const double p1 = prob(rng), p2 = prob(rng), t = prob(rng);
        for (auto model : {kRP, kDisuse}) {
            for (auto rec : {GearChoice::kSkip, GearChoice::kWear}) {
                const double v1 = expected_task_reward(b, model, rec, p1, r, kTask);
                CHECK(v1 >= lo - 1e-9);
                CHECK(v1 <= hi + 1e-9);
                // Affine in the threat probability.
                const double v2 = expected_task_reward(b, model, rec, p2, r, kTask);
                const double pm = t * p1 + (1 - t) * p2;
                CHECK(expected_task_reward(b, model, rec, pm, r, kTask) ==
                      doctest::Approx(t * v1 + (1 - t) * v2).epsilon(1e-10));
            }
        }
        const TrustBelief<double> mirrored(b.beta(), b.alpha());
        for (auto rec : {GearChoice::kSkip, GearChoice::kWear}) {
            CHECK(std::abs(expected_task_reward(b, kRP, rec, p1, r, kTask) -
                           expected_task_reward(mirrored, kRP, opposite(rec), p1, r, kTask)) <= 1e-12 * 110);
        }
    }
}
