#include <doctest.h>

#include <cmath>
#include <random>

#include "trust_pomdp/trust_model.hpp"

using namespace trust_pomdp;

namespace {
const TrustParams<double> kGains{10.0, 20.0, 100.0, 50.0};
}

TEST_CASE("update_belief adds the success or failure gain") {
    const TrustBelief<double> b(100, 50);
    CHECK(update_belief(b, true, kGains) == TrustBelief<double>(110, 50));
    CHECK(update_belief(b, false, kGains) == TrustBelief<double>(100, 70));
    CHECK(b == TrustBelief<double>(100, 50));
    CHECK(update_belief(TrustBelief<double>(1, 1), true, kGains) == TrustBelief<double>(11, 1));
}

TEST_CASE("non-positive gains and shapes are rejected") {
    TrustParams<double> zero_success{0.0, 20.0, 1.0, 1.0};
    CHECK_THROWS_AS(zero_success.validate(), std::invalid_argument);
    TrustParams<double> bad_beta{10.0, 20.0, 100.0, 0.0};
    CHECK_THROWS_AS(bad_beta.validate(), std::invalid_argument);
    CHECK_THROWS_AS(TrustBelief<double>(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(TrustBelief<double>(1.0, -2.0), std::invalid_argument);
}

TEST_CASE("trust mean and follow probability") {
    CHECK(trust_mean(TrustBelief<double>(100, 50)) == doctest::Approx(0.6667).epsilon(1e-4));
    CHECK(trust_mean(TrustBelief<double>(50, 100)) == doctest::Approx(0.3333).epsilon(1e-4));
    CHECK(follow_probability(TrustBelief<double>(100, 50)) == doctest::Approx(2.0 / 3.0));
    CHECK(follow_probability(TrustBelief<double>(50, 100)) == doctest::Approx(1.0 / 3.0));
    CHECK(follow_probability(TrustBelief<double>(1, 1)) == 0.5);
    for (double x : {1e-3, 1.0, 7.5, 1e6}) CHECK(trust_mean(TrustBelief<double>(x, x)) == 0.5);
}

TEST_CASE("follow probability accepts another non-decreasing map") {
    const auto squash = [](double t) { return t * t; };
    CHECK(follow_probability(TrustBelief<double>(100, 50), squash) == doctest::Approx(4.0 / 9.0));
}

TEST_CASE("success raises trust, failure lowers it") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> shape(0.01, 1000.0);
    std::uniform_real_distribution<double> gain(0.01, 50.0);
    for (int n = 0; n < 1000; ++n) {
        const TrustBelief<double> b(shape(rng), shape(rng));
        const TrustParams<double> p{gain(rng), gain(rng), 1.0, 1.0};
        CHECK(trust_mean(update_belief(b, true, p)) > trust_mean(b));
        CHECK(trust_mean(update_belief(b, false, p)) < trust_mean(b));
    }
}

TEST_CASE("any update sequence stays on the experience lattice") {
    std::mt19937_64 rng(5);
    std::bernoulli_distribution coin(0.4);
    for (int trial = 0; trial < 200; ++trial) {
        TrustBelief<double> b = kGains.initial_belief();
        const int k = 1 + trial % 20;
        for (int s = 0; s < k; ++s) b = update_belief(b, coin(rng), kGains);
        const double i = (b.alpha() - kGains.alpha_init) / kGains.w_success;
        const double j = (b.beta() - kGains.beta_init) / kGains.w_failure;
        CHECK(i == std::round(i));
        CHECK(j == std::round(j));
        CHECK(i >= 0);
        CHECK(j >= 0);
        CHECK(i + j == doctest::Approx(k));
    }
}

TEST_CASE("a failure outweighs a success when w_failure > w_success") {
    const TrustBelief<double> start(100, 50);
    const auto after = update_belief(update_belief(start, true, kGains), false, kGains);
    CHECK(after == TrustBelief<double>(110, 70));
    CHECK(trust_mean(after) == doctest::Approx(0.6111).epsilon(1e-4));
    CHECK(trust_mean(after) < trust_mean(start));
}

TEST_CASE("follow probability is scale invariant") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.1, 500.0);
    for (int n = 0; n < 500; ++n) {
        const double a = u(rng), b = u(rng), c = u(rng);
        CHECK(follow_probability(TrustBelief<double>(c * a, c * b)) ==
              doctest::Approx(follow_probability(TrustBelief<double>(a, b))).epsilon(1e-12));
    }
}

TEST_CASE("float scalar instantiation") {
    const TrustBelief<float> b(3.0f, 1.0f);
    CHECK(trust_mean(b) == doctest::Approx(0.75f));
}
