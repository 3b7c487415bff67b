#pragma once

#include <stdexcept>
#include <string>

namespace trust_pomdp {

/// Beta-distributed trust summarized by its experience pair (alpha, beta).
/// This pair is also the planner's belief state.
template <typename Scalar = double>
class TrustBelief {
public:
    TrustBelief(Scalar alpha, Scalar beta) : alpha_(alpha), beta_(beta) {
        if (!(alpha > Scalar(0)) || !(beta > Scalar(0))) {
            throw std::invalid_argument("TrustBelief: alpha and beta must be positive");
        }
    }

    Scalar alpha() const { return alpha_; }
    Scalar beta() const { return beta_; }

    friend bool operator==(const TrustBelief&, const TrustBelief&) = default;

private:
    Scalar alpha_;
    Scalar beta_;
};

/// Experience gains and the initial belief of the trust dynamics.
template <typename Scalar = double>
struct TrustParams {
    Scalar w_success = Scalar(10);
    Scalar w_failure = Scalar(20);
    Scalar alpha_init = Scalar(100);
    Scalar beta_init = Scalar(50);

    void validate() const {
        auto check = [](Scalar v, const char* name) {
            if (!(v > Scalar(0))) {
                throw std::invalid_argument(std::string("TrustParams: ") + name + " must be positive");
            }
        };
        check(w_success, "w_success");
        check(w_failure, "w_failure");
        check(alpha_init, "alpha_init");
        check(beta_init, "beta_init");
    }

    TrustBelief<Scalar> initial_belief() const { return {alpha_init, beta_init}; }

    friend bool operator==(const TrustParams&, const TrustParams&) = default;
};

/// Success adds w_success to alpha, failure adds w_failure to beta.
template <typename Scalar>
TrustBelief<Scalar> update_belief(const TrustBelief<Scalar>& belief, bool success,
                                  const TrustParams<Scalar>& params) {
    return success ? TrustBelief<Scalar>(belief.alpha() + params.w_success, belief.beta())
                   : TrustBelief<Scalar>(belief.alpha(), belief.beta() + params.w_failure);
}

template <typename Scalar>
Scalar trust_mean(const TrustBelief<Scalar>& belief) {
    return belief.alpha() / (belief.alpha() + belief.beta());
}

/// Maps trust to the probability of following a recommendation. Any
/// non-decreasing map on [0, 1] is admissible; the identity is the default.
struct IdentityFollow {
    template <typename Scalar>
    Scalar operator()(Scalar trust) const { return trust; }
};

template <typename Scalar, typename FollowMap = IdentityFollow>
Scalar follow_probability(const TrustBelief<Scalar>& belief, FollowMap phi = {}) {
    return phi(trust_mean(belief));
}

}  // namespace trust_pomdp
