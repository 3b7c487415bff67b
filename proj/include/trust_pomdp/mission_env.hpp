#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "trust_pomdp/behavior_models.hpp"
#include "trust_pomdp/random.hpp"

namespace trust_pomdp {

/// Estimates and latent danger levels are kept inside [eps, 1 - eps].
inline constexpr double kProbabilityClamp = 1e-6;

template <typename Scalar>
Scalar clamp_probability(Scalar p) {
    return std::clamp(p, Scalar(kProbabilityClamp), Scalar(1.0 - kProbabilityClamp));
}

template <typename Scalar = double>
struct SiteTruth {
    Scalar danger;        // d
    bool threat_present;  // eta
    Scalar reported;      // d~, mission-start intelligence
    Scalar sensed;        // d^, robot's on-site estimate

    friend bool operator==(const SiteTruth&, const SiteTruth&) = default;
};

template <typename Scalar = double>
using Mission = std::vector<SiteTruth<Scalar>>;

struct EnvConfig {
    int n_sites = 15;
    double kappa1 = 3.0;
    double kappa2 = 50.0;
    std::uint64_t seed = 0;

    /// kappa2 == kappa1 is allowed so that equal-accuracy sweeps are expressible.
    void validate() const {
        if (n_sites < 1) throw std::invalid_argument("EnvConfig: n_sites must be at least 1");
        if (!(kappa1 >= 1.0)) throw std::invalid_argument("EnvConfig: kappa1 must be >= 1");
        if (!(kappa2 >= kappa1)) throw std::invalid_argument("EnvConfig: kappa2 must be >= kappa1");
    }

    friend bool operator==(const EnvConfig&, const EnvConfig&) = default;
};

/// Health loss and time cost of one site.
struct CostPair {
    double health = 0.0;
    double time = 0.0;

    friend bool operator==(const CostPair&, const CostPair&) = default;
};

/// (human action, threat) -> (health loss, time cost).
class CostTable {
public:
    CostTable() = default;
    CostTable(CostPair wear_threat, CostPair wear_no_threat, CostPair skip_threat, CostPair skip_no_threat) {
        at(GearChoice::kWear, true) = wear_threat;
        at(GearChoice::kWear, false) = wear_no_threat;
        at(GearChoice::kSkip, true) = skip_threat;
        at(GearChoice::kSkip, false) = skip_no_threat;
    }

    /// Default reconnaissance costs.
    static CostTable reconnaissance() { return CostTable({1, 300}, {0, 250}, {100, 50}, {0, 30}); }

    const CostPair& at(GearChoice human, bool threat) const { return cells_[index(human, threat)]; }
    CostPair& at(GearChoice human, bool threat) { return cells_[index(human, threat)]; }

    CostTable scaled(double factor) const {
        CostTable out = *this;
        for (auto& c : out.cells_) c = {c.health * factor, c.time * factor};
        return out;
    }

    friend bool operator==(const CostTable&, const CostTable&) = default;

private:
    static std::size_t index(GearChoice human, bool threat) {
        return static_cast<std::size_t>(to_bit(human)) * 2 + (threat ? 1 : 0);
    }
    std::array<CostPair, 4> cells_{};
};

namespace detail {
template <typename Scalar>
Scalar sample_beta(SplitMix64& rng, Scalar a, Scalar b) {
    std::gamma_distribution<Scalar> ga(a, Scalar(1));
    std::gamma_distribution<Scalar> gb(b, Scalar(1));
    const Scalar x = ga(rng);
    const Scalar y = gb(rng);
    const Scalar sum = x + y;
    if (!(sum > Scalar(0))) return a >= b ? Scalar(1) : Scalar(0);
    return x / sum;
}

template <typename Scalar>
Scalar sample_estimate(const StreamKey& key, Scalar danger, Scalar kappa) {
    auto rng = key.engine();
    const Scalar d = clamp_probability(danger);
    return clamp_probability(sample_beta(rng, kappa * d, kappa * (Scalar(1) - d)));
}
}  // namespace detail

/// Draws N independent sites: d ~ U[0,1], eta ~ Bern(d),
/// d~ ~ Beta(k1 d, k1 (1-d)), d^ ~ Beta(k2 d, k2 (1-d)).
/// Every variate comes from its own (site, role) substream of `key`.
template <typename Scalar = double>
Mission<Scalar> generate_mission(const EnvConfig& config, const StreamKey& key) {
    config.validate();
    Mission<Scalar> sites;
    sites.reserve(static_cast<std::size_t>(config.n_sites));
    for (int k = 0; k < config.n_sites; ++k) {
        const StreamKey site = key.child(static_cast<std::uint64_t>(k));
        const Scalar danger = static_cast<Scalar>(site.child(StreamRole::kDanger).engine().uniform());
        const bool threat = site.child(StreamRole::kThreat).engine().uniform() < static_cast<double>(danger);
        const Scalar reported =
            detail::sample_estimate(site.child(StreamRole::kReported), danger, static_cast<Scalar>(config.kappa1));
        const Scalar sensed =
            detail::sample_estimate(site.child(StreamRole::kSensed), danger, static_cast<Scalar>(config.kappa2));
        sites.push_back({danger, threat, reported, sensed});
    }
    return sites;
}

template <typename Scalar = double>
Mission<Scalar> generate_mission(const EnvConfig& config) {
    return generate_mission<Scalar>(config, StreamKey(config.seed));
}

/// Performance is 1 iff the recommendation agrees with the threat's presence.
constexpr bool observe_performance(GearChoice recommendation, bool threat_present) {
    return (recommendation == GearChoice::kWear) == threat_present;
}

inline CostPair realized_cost(GearChoice human, bool threat_present,
                              const CostTable& table = CostTable::reconnaissance()) {
    return table.at(human, threat_present);
}

}  // namespace trust_pomdp
