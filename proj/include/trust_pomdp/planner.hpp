#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "trust_pomdp/behavior_models.hpp"
#include "trust_pomdp/mission_env.hpp"
#include "trust_pomdp/reward_model.hpp"
#include "trust_pomdp/trust_model.hpp"

namespace trust_pomdp {

/// One re-solve of the mission from `current_site` to the last site.
///
/// Step 0 is the current site, whose threat estimate is the robot's own
/// sensing. Later steps have not been scanned yet, so their reported
/// intelligence stands in for both the threat probability and the human's
/// self-judgement.
template <typename Scalar = double>
struct PlanningProblem {
    int current_site = 1;  // 1-based global site index
    int horizon = 1;
    Scalar sensed_current = Scalar(0.5);
    Scalar reported_current = Scalar(0.5);
    std::vector<Scalar> reported_future;
    BehaviorModel assumed_model = BehaviorModel::kReversePsychology;
    RewardSpec<Scalar> reward;
    TrustParams<Scalar> trust;
    Scalar discount = Scalar(0.9);

    void validate() const {
        if (horizon < 1) throw std::invalid_argument("PlanningProblem: horizon must be at least 1");
        if (current_site < 1) throw std::invalid_argument("PlanningProblem: current_site starts at 1");
        if (static_cast<std::size_t>(horizon) != 1 + reported_future.size()) {
            throw std::invalid_argument("PlanningProblem: horizon must equal 1 + number of future reports");
        }
        if (!(discount > Scalar(0) && discount <= Scalar(1))) {
            throw std::invalid_argument("PlanningProblem: discount must lie in (0, 1]");
        }
        auto open_unit = [](Scalar p) { return p > Scalar(0) && p < Scalar(1); };
        if (!open_unit(sensed_current) || !open_unit(reported_current) ||
            !std::all_of(reported_future.begin(), reported_future.end(), open_unit)) {
            throw std::invalid_argument("PlanningProblem: threat estimates must lie in (0, 1)");
        }
        trust.validate();
        reward.validate();
    }

    bool is_terminal(int step) const { return step == horizon - 1; }
    int site_of(int step) const { return current_site + step; }

    Scalar threat_estimate(int step) const {
        return step == 0 ? sensed_current : reported_future.at(static_cast<std::size_t>(step - 1));
    }
    Scalar reported_estimate(int step) const {
        return step == 0 ? reported_current : reported_future.at(static_cast<std::size_t>(step - 1));
    }
};

/// Problem faced at `site` (1-based) of a generated mission.
template <typename Scalar>
PlanningProblem<Scalar> make_planning_problem(const Mission<Scalar>& mission, int site, BehaviorModel assumed,
                                              const RewardSpec<Scalar>& reward, const TrustParams<Scalar>& trust,
                                              Scalar discount) {
    const int n = static_cast<int>(mission.size());
    if (site < 1 || site > n) {
        throw std::invalid_argument("make_planning_problem: site " + std::to_string(site) +
                                    " outside mission of " + std::to_string(n) + " sites (horizon would be " +
                                    std::to_string(n - site + 1) + ")");
    }
    PlanningProblem<Scalar> problem;
    problem.current_site = site;
    problem.horizon = n - site + 1;
    problem.sensed_current = mission[static_cast<std::size_t>(site - 1)].sensed;
    problem.reported_current = mission[static_cast<std::size_t>(site - 1)].reported;
    for (int k = site; k < n; ++k) problem.reported_future.push_back(mission[static_cast<std::size_t>(k)].reported);
    problem.assumed_model = assumed;
    problem.reward = reward;
    problem.trust = trust;
    problem.discount = discount;
    return problem;
}

template <typename Scalar>
struct Transition {
    TrustBelief<Scalar> belief;
    Scalar probability;
};

/// Success branch first, failure branch second.
template <typename Scalar>
std::array<Transition<Scalar>, 2> transition_probabilities(const TrustBelief<Scalar>& belief,
                                                           GearChoice recommendation, Scalar threat_prob,
                                                           const TrustParams<Scalar>& params) {
    const Scalar p_success = agreement_probability(recommendation, threat_prob);
    return {{{update_belief(belief, true, params), p_success},
             {update_belief(belief, false, params), Scalar(1) - p_success}}};
}

/// Expected immediate reward of `recommendation` at `step`, including the
/// trust-seeking bonus when enabled.
template <typename Scalar>
Scalar immediate_reward(const PlanningProblem<Scalar>& problem, int step, const TrustBelief<Scalar>& belief,
                        GearChoice recommendation) {
    const Scalar threat = problem.threat_estimate(step);
    return expected_task_reward(belief, problem.assumed_model, recommendation, threat,
                                problem.reported_estimate(step), problem.reward) +
           expected_trust_bonus(problem.site_of(step), recommendation, threat, problem.reward);
}

/// Bellman backup of one action. `next_value` maps a successor belief to
/// its value at step + 1 (std::optional; an empty result is a contract
/// violation). Ignored at the terminal step.
template <typename Scalar, typename NextValue>
Scalar q_value(const PlanningProblem<Scalar>& problem, int step, const TrustBelief<Scalar>& belief,
               GearChoice recommendation, const NextValue& next_value) {
    Scalar q = immediate_reward(problem, step, belief, recommendation);
    if (problem.is_terminal(step)) return q;
    Scalar continuation = Scalar(0);
    for (const auto& branch :
         transition_probabilities(belief, recommendation, problem.threat_estimate(step), problem.trust)) {
        const std::optional<Scalar> v = next_value(branch.belief);
        if (!v) {
            throw std::logic_error("q_value: no value for successor belief (" + std::to_string(branch.belief.alpha()) +
                                   ", " + std::to_string(branch.belief.beta()) + ") at step " +
                                   std::to_string(step + 1));
        }
        continuation += branch.probability * *v;
    }
    return q + problem.discount * continuation;
}

template <typename Scalar>
Scalar q_value(const PlanningProblem<Scalar>& problem, int step, const TrustBelief<Scalar>& belief,
               GearChoice recommendation) {
    return q_value(problem, step, belief, recommendation,
                   [](const TrustBelief<Scalar>&) -> std::optional<Scalar> { return std::nullopt; });
}

/// Relative tolerance under which two q-values count as tied.
inline constexpr double kTieTolerance = 1e-12;

template <typename Scalar>
bool q_tied(Scalar q_skip, Scalar q_wear) {
    const Scalar scale = std::max({Scalar(1), std::abs(q_skip), std::abs(q_wear)});
    return std::abs(q_wear - q_skip) <= Scalar(kTieTolerance) * scale;
}

/// Argmax over the two recommendations; ties go to the threat-aligned one.
template <typename Scalar>
GearChoice best_action(Scalar q_skip, Scalar q_wear, Scalar threat_estimate) {
    if (q_tied(q_skip, q_wear)) return threat_estimate >= Scalar(0.5) ? GearChoice::kWear : GearChoice::kSkip;
    return q_wear > q_skip ? GearChoice::kWear : GearChoice::kSkip;
}

/// Rectangular anchor grid (alpha0 + i * w_success, beta0 + j * w_failure),
/// i < n_alpha, j < n_beta, for the first step of a solution.
template <typename Scalar = double>
struct BeliefLattice {
    Scalar alpha0;
    Scalar beta0;
    Eigen::Index n_alpha = 1;
    Eigen::Index n_beta = 1;

    static BeliefLattice single(const TrustBelief<Scalar>& b) { return {b.alpha(), b.beta(), 1, 1}; }

    /// Grid covering [alpha_min, alpha_max] x [beta_min, beta_max] at the
    /// lattice spacing of `trust`.
    static BeliefLattice covering(Scalar alpha_min, Scalar alpha_max, Scalar beta_min, Scalar beta_max,
                                  const TrustParams<Scalar>& trust) {
        if (!(alpha_min > Scalar(0) && beta_min > Scalar(0) && alpha_max >= alpha_min && beta_max >= beta_min)) {
            throw std::invalid_argument("BeliefLattice: extents must be positive and ordered");
        }
        const auto count = [](Scalar lo, Scalar hi, Scalar step) {
            return static_cast<Eigen::Index>(std::floor((hi - lo) / step + Scalar(1e-9))) + 1;
        };
        return {alpha_min, beta_min, count(alpha_min, alpha_max, trust.w_success),
                count(beta_min, beta_max, trust.w_failure)};
    }

    void validate() const {
        if (!(alpha0 > Scalar(0) && beta0 > Scalar(0)) || n_alpha < 1 || n_beta < 1) {
            throw std::invalid_argument("BeliefLattice: origin must be positive and extents at least 1");
        }
    }
};

/// Value and action function of one step, indexed (alpha index, beta index).
template <typename Scalar = double>
struct StepGrid {
    using Grid = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using ActionGrid = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

    Grid q_skip;
    Grid q_wear;
    Grid value;
    ActionGrid action;  // 1 = recommend wearing

    Eigen::Index n_alpha() const { return value.rows(); }
    Eigen::Index n_beta() const { return value.cols(); }
};

/// Value and action functions V_k, A_k over the belief lattice for every
/// remaining step of one re-solve. Step s's grid extends the anchor grid by
/// s lattice units along each axis.
template <typename Scalar = double>
class PolicySolution {
public:
    PolicySolution(BeliefLattice<Scalar> lattice, TrustParams<Scalar> trust, int first_site,
                   std::vector<StepGrid<Scalar>> steps)
        : lattice_(lattice), trust_(trust), first_site_(first_site), steps_(std::move(steps)) {}

    const BeliefLattice<Scalar>& lattice() const { return lattice_; }
    int first_site() const { return first_site_; }
    int n_steps() const { return static_cast<int>(steps_.size()); }
    const StepGrid<Scalar>& step(int s) const { return steps_.at(static_cast<std::size_t>(s)); }

    TrustBelief<Scalar> belief_at(Eigen::Index i, Eigen::Index j) const {
        return {lattice_.alpha0 + Scalar(i) * trust_.w_success, lattice_.beta0 + Scalar(j) * trust_.w_failure};
    }

    /// Grid index of `belief` at step `s`, if it is a lattice point there.
    std::optional<std::pair<Eigen::Index, Eigen::Index>> locate(int s, const TrustBelief<Scalar>& belief) const {
        if (s < 0 || s >= n_steps()) return std::nullopt;
        const auto i = lattice_index(belief.alpha(), lattice_.alpha0, trust_.w_success);
        const auto j = lattice_index(belief.beta(), lattice_.beta0, trust_.w_failure);
        const auto& g = step(s);
        if (!i || !j || *i >= g.n_alpha() || *j >= g.n_beta()) return std::nullopt;
        return std::pair{*i, *j};
    }

    std::optional<Scalar> value(int s, const TrustBelief<Scalar>& belief) const {
        const auto ij = locate(s, belief);
        if (!ij) return std::nullopt;
        return step(s).value(ij->first, ij->second);
    }

private:
    static std::optional<Eigen::Index> lattice_index(Scalar x, Scalar origin, Scalar spacing) {
        const Scalar t = (x - origin) / spacing;
        const Scalar r = std::round(t);
        if (r < Scalar(0) || std::abs(t - r) > Scalar(1e-9) * std::max(Scalar(1), std::abs(t))) return std::nullopt;
        return static_cast<Eigen::Index>(r);
    }

    BeliefLattice<Scalar> lattice_;
    TrustParams<Scalar> trust_;
    int first_site_;
    std::vector<StepGrid<Scalar>> steps_;
};

namespace detail {

/// Expected one-site reward of both recommendations over a grid of trust
/// means, as array expressions. Mirrors immediate_reward point by point.
template <typename Scalar>
std::pair<Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>, Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>>
immediate_reward_grid(const PlanningProblem<Scalar>& problem, int step,
                      const Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>& follow) {
    const auto& spec = problem.reward;
    const Scalar threat = problem.threat_estimate(step);
    const auto mean_utility = [&](GearChoice human) {
        return threat * cell_utility(spec.cost_table.at(human, true), spec) +
               (Scalar(1) - threat) * cell_utility(spec.cost_table.at(human, false), spec);
    };
    const Scalar u_wear = mean_utility(GearChoice::kWear);
    const Scalar u_skip = mean_utility(GearChoice::kSkip);

    // Probability of wearing when the recommendation is ignored.
    const Scalar fallback_wear_on_skip =
        problem.assumed_model == BehaviorModel::kReversePsychology ? Scalar(1) : problem.reported_estimate(step);
    const Scalar fallback_wear_on_wear =
        problem.assumed_model == BehaviorModel::kReversePsychology ? Scalar(0) : problem.reported_estimate(step);

    const auto p_wear_on_wear = (follow + (Scalar(1) - follow) * fallback_wear_on_wear).eval();
    const auto p_wear_on_skip = ((Scalar(1) - follow) * fallback_wear_on_skip).eval();

    const int site = problem.site_of(step);
    auto r_skip = (p_wear_on_skip * u_wear + (Scalar(1) - p_wear_on_skip) * u_skip +
                   expected_trust_bonus(site, GearChoice::kSkip, threat, spec))
                      .eval();
    auto r_wear = (p_wear_on_wear * u_wear + (Scalar(1) - p_wear_on_wear) * u_skip +
                   expected_trust_bonus(site, GearChoice::kWear, threat, spec))
                      .eval();
    return {std::move(r_skip), std::move(r_wear)};
}

}  // namespace detail

/// Finite-horizon backward induction over the belief lattice. Fills every
/// step from the last site backward, storing both q-values, their max, and
/// the argmax (ties broken toward the threat-aligned recommendation).
template <typename Scalar>
PolicySolution<Scalar> backward_induction(const PlanningProblem<Scalar>& problem,
                                          const BeliefLattice<Scalar>& lattice) {
    using Array = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    problem.validate();
    lattice.validate();

    const int horizon = problem.horizon;
    const Scalar ws = problem.trust.w_success;
    const Scalar wf = problem.trust.w_failure;
    std::vector<StepGrid<Scalar>> steps(static_cast<std::size_t>(horizon));

    for (int s = horizon - 1; s >= 0; --s) {
        const Eigen::Index na = lattice.n_alpha + s;
        const Eigen::Index nb = lattice.n_beta + s;
        const auto alpha =
            (lattice.alpha0 + ws * Eigen::Array<Scalar, Eigen::Dynamic, 1>::LinSpaced(na, Scalar(0), Scalar(na - 1)))
                .eval();
        const auto beta =
            (lattice.beta0 + wf * Eigen::Array<Scalar, 1, Eigen::Dynamic>::LinSpaced(nb, Scalar(0), Scalar(nb - 1)))
                .eval();
        const Array alpha_grid = alpha.replicate(1, nb);
        const Array follow = alpha_grid / (alpha_grid + beta.replicate(na, 1));

        auto [q_skip, q_wear] = detail::immediate_reward_grid(problem, s, follow);

        if (!problem.is_terminal(s)) {
            const auto& next = steps[static_cast<std::size_t>(s + 1)].value.array();
            const auto v_success = next.block(1, 0, na, nb);
            const auto v_failure = next.block(0, 1, na, nb);
            const Scalar threat = problem.threat_estimate(s);
            const Scalar gamma = problem.discount;
            q_wear += gamma * (threat * v_success + (Scalar(1) - threat) * v_failure);
            q_skip += gamma * ((Scalar(1) - threat) * v_success + threat * v_failure);
        }

        auto& grid = steps[static_cast<std::size_t>(s)];
        grid.q_skip = q_skip.matrix();
        grid.q_wear = q_wear.matrix();
        grid.value = q_skip.max(q_wear).matrix();
        grid.action.resize(na, nb);
        const Scalar threat = problem.threat_estimate(s);
        for (Eigen::Index j = 0; j < nb; ++j) {
            for (Eigen::Index i = 0; i < na; ++i) {
                grid.action(i, j) = static_cast<std::uint8_t>(to_bit(best_action(q_skip(i, j), q_wear(i, j), threat)));
            }
        }
    }
    return PolicySolution<Scalar>(lattice, problem.trust, problem.current_site, std::move(steps));
}

/// Stored argmax at a first-step lattice point.
template <typename Scalar>
GearChoice optimal_action(const PolicySolution<Scalar>& solution, const TrustBelief<Scalar>& belief) {
    const auto ij = solution.locate(0, belief);
    if (!ij) {
        throw std::out_of_range("optimal_action: belief (" + std::to_string(belief.alpha()) + ", " +
                                std::to_string(belief.beta()) + ") is not a lattice point of the solution");
    }
    return gear_from_bit(solution.step(0).action(ij->first, ij->second));
}

}  // namespace trust_pomdp
