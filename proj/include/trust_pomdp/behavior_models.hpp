#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "trust_pomdp/trust_model.hpp"

namespace trust_pomdp {

/// Wear or skip the protective gear. Used both for the robot's
/// recommendation and for the human's actual choice.
enum class GearChoice : std::uint8_t { kSkip = 0, kWear = 1 };

constexpr GearChoice opposite(GearChoice c) {
    return c == GearChoice::kWear ? GearChoice::kSkip : GearChoice::kWear;
}

constexpr int to_bit(GearChoice c) { return static_cast<int>(c); }

constexpr GearChoice gear_from_bit(int bit) { return bit != 0 ? GearChoice::kWear : GearChoice::kSkip; }

/// How a human behaves when not following the robot.
enum class BehaviorModel : std::uint8_t {
    kReversePsychology,  ///< does the opposite of the recommendation
    kDisuse,             ///< ignores the robot, acts on the reported threat level
};

constexpr std::string_view to_string(BehaviorModel m) {
    return m == BehaviorModel::kReversePsychology ? "reverse_psychology" : "disuse";
}

inline BehaviorModel behavior_model_from_string(std::string_view s) {
    if (s == "reverse_psychology") return BehaviorModel::kReversePsychology;
    if (s == "disuse") return BehaviorModel::kDisuse;
    throw std::invalid_argument("unknown behavior model '" + std::string(s) + "'");
}

template <typename Scalar = double>
struct ActionDistribution {
    Scalar p_wear;
    Scalar p_skip;

    static ActionDistribution from_wear(Scalar p_wear) { return {p_wear, Scalar(1) - p_wear}; }

    Scalar prob(GearChoice c) const { return c == GearChoice::kWear ? p_wear : p_skip; }
};

/// p(a_h | recommendation, trust, reported threat) under the given model.
template <typename Scalar, typename FollowMap = IdentityFollow>
ActionDistribution<Scalar> human_action_distribution(BehaviorModel model, const TrustBelief<Scalar>& belief,
                                                     GearChoice recommendation, Scalar reported_threat,
                                                     FollowMap phi = {}) {
    if (!(reported_threat > Scalar(0) && reported_threat < Scalar(1))) {
        throw std::invalid_argument("human_action_distribution: reported threat must lie in (0, 1)");
    }
    const Scalar follow = follow_probability(belief, phi);
    const Scalar wear_if_followed = recommendation == GearChoice::kWear ? Scalar(1) : Scalar(0);
    Scalar p_wear;
    if (model == BehaviorModel::kReversePsychology) {
        p_wear = follow * wear_if_followed + (Scalar(1) - follow) * (Scalar(1) - wear_if_followed);
    } else {
        p_wear = follow * wear_if_followed + (Scalar(1) - follow) * reported_threat;
    }
    return ActionDistribution<Scalar>::from_wear(p_wear);
}

/// Threshold sampling: wear iff draw < p_wear, with draw uniform on [0, 1).
template <typename Scalar>
GearChoice sample_human_action(const ActionDistribution<Scalar>& dist, Scalar uniform_draw) {
    return uniform_draw < dist.p_wear ? GearChoice::kWear : GearChoice::kSkip;
}

}  // namespace trust_pomdp
