#pragma once

#include <cmath>
#include <stdexcept>

#include "trust_pomdp/behavior_models.hpp"
#include "trust_pomdp/mission_env.hpp"
#include "trust_pomdp/trust_model.hpp"

namespace trust_pomdp {

/// Task reward weights, cost table, and the trust-seeking bonus schedule
/// lambda(k) = bonus_scale / (1 + exp(bonus_rate * k)).
template <typename Scalar = double>
struct RewardSpec {
    CostTable cost_table = CostTable::reconnaissance();
    Scalar health_weight = Scalar(1);
    Scalar time_weight = Scalar(0.2);
    Scalar bonus_scale = Scalar(80);
    Scalar bonus_rate = Scalar(0.5);
    bool trust_seeking = false;

    void validate() const {
        if (!(health_weight >= Scalar(0))) throw std::invalid_argument("RewardSpec: health_weight must be >= 0");
        if (!(time_weight >= Scalar(0))) throw std::invalid_argument("RewardSpec: time_weight must be >= 0");
    }

    Scalar bonus_weight(int site_index) const {
        return bonus_scale / (Scalar(1) + std::exp(bonus_rate * Scalar(site_index)));
    }

    friend bool operator==(const RewardSpec&, const RewardSpec&) = default;
};

template <typename Scalar>
Scalar cell_utility(const CostPair& cost, const RewardSpec<Scalar>& spec) {
    return -spec.health_weight * Scalar(cost.health) - spec.time_weight * Scalar(cost.time);
}

template <typename Scalar>
Scalar realized_reward(GearChoice human, bool threat_present, const RewardSpec<Scalar>& spec) {
    return cell_utility(realized_cost(human, threat_present, spec.cost_table), spec);
}

/// Expected task reward of one site, with the human's action and the threat
/// treated as independent.
template <typename Scalar>
Scalar expected_task_reward(const TrustBelief<Scalar>& belief, BehaviorModel model, GearChoice recommendation,
                            Scalar threat_prob, Scalar reported_threat, const RewardSpec<Scalar>& spec) {
    if (!(threat_prob > Scalar(0) && threat_prob < Scalar(1))) {
        throw std::invalid_argument("expected_task_reward: threat probability must lie in (0, 1)");
    }
    const auto human = human_action_distribution(model, belief, recommendation, reported_threat);
    Scalar total = Scalar(0);
    for (GearChoice a : {GearChoice::kSkip, GearChoice::kWear}) {
        const auto& table = spec.cost_table;
        total += human.prob(a) * (threat_prob * cell_utility(table.at(a, true), spec) +
                                  (Scalar(1) - threat_prob) * cell_utility(table.at(a, false), spec));
    }
    return total;
}

/// Probability that the recommendation will agree with the threat's presence.
template <typename Scalar>
Scalar agreement_probability(GearChoice recommendation, Scalar threat_prob) {
    return recommendation == GearChoice::kWear ? threat_prob : Scalar(1) - threat_prob;
}

/// lambda(k) times the expected indicator of a trust-gaining action.
template <typename Scalar>
Scalar expected_trust_bonus(int site_index, GearChoice recommendation, Scalar threat_prob,
                            const RewardSpec<Scalar>& spec) {
    if (site_index < 1) throw std::invalid_argument("expected_trust_bonus: site index starts at 1");
    if (!spec.trust_seeking) return Scalar(0);
    return spec.bonus_weight(site_index) * agreement_probability(recommendation, threat_prob);
}

}  // namespace trust_pomdp
