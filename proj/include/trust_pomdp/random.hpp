#pragma once

#include <cstdint>
#include <limits>

namespace trust_pomdp {

namespace detail {
constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
}  // namespace detail

/// SplitMix64 generator. Small state, so one instance per substream is cheap.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        state_ += detail::kGoldenGamma;
        return detail::mix64(state_);
    }

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// Variate roles that get their own substream.
enum class StreamRole : std::uint64_t {
    kMission = 1,
    kHuman = 2,
    kDanger = 3,
    kThreat = 4,
    kReported = 5,
    kSensed = 6,
};

/// Hierarchical stream key: (seed, episode, site, role) paths map to
/// independent generators, so draws never depend on execution order.
class StreamKey {
public:
    explicit constexpr StreamKey(std::uint64_t seed) : key_(detail::mix64(seed ^ 0x5DEECE66DULL)) {}

    constexpr StreamKey child(std::uint64_t index) const {
        return StreamKey(Raw{}, detail::mix64(key_ + detail::kGoldenGamma * (index + 1)));
    }
    constexpr StreamKey child(StreamRole role) const { return child(static_cast<std::uint64_t>(role) << 32); }

    constexpr std::uint64_t value() const { return key_; }
    SplitMix64 engine() const { return SplitMix64(key_); }

private:
    struct Raw {};
    constexpr StreamKey(Raw, std::uint64_t key) : key_(key) {}
    std::uint64_t key_;
};

}  // namespace trust_pomdp
