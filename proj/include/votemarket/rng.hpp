#pragma once

#include <cstdint>

namespace votemarket {

/// SplitMix64: tiny counter-style generator used for the simulator's
/// replication substreams. State advances by a fixed odd increment, so a
/// stream positioned at `seed + k * increment` is the root stream fast-forwarded
/// by k draws — which makes non-overlapping per-replication substreams trivial.
class SplitMix64 {
public:
    static constexpr std::uint64_t kIncrement = 0x9E3779B97F4A7C15ULL;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += kIncrement;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform draw in [0, 1), 53 random bits.
    double next_unit() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

/// Each replication owns a disjoint window of the root stream. Draw order
/// inside a replication is fixed, so results do not depend on which thread
/// (or in what order) replications are evaluated.
inline constexpr std::uint64_t kDrawsPerReplication = 8;

inline SplitMix64 replication_substream(std::uint64_t root_seed, std::uint64_t replication) {
    return SplitMix64(root_seed +
                      SplitMix64::kIncrement * (replication * kDrawsPerReplication));
}

}  // namespace votemarket
