#pragma once

#include "frfboot/errors.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace frfboot {

/// Independent random stream identified by (seed, stream id). Streams with
/// different ids are seeded through std::seed_seq, so replication b of a
/// bootstrap draws the same numbers no matter which thread runs it.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32),
                          0x46524642u};
        engine_.seed(seq);
    }

    std::mt19937_64& engine() noexcept { return engine_; }

    /// Uniform integer in [0, n).
    std::size_t below(std::size_t n) {
        std::uniform_int_distribution<std::size_t> dist(0, n - 1);
        return dist(engine_);
    }

private:
    std::mt19937_64 engine_;
};

/// n draws with replacement from {0, ..., n-1}.
inline void resample_indices(std::size_t n, RngStream& rng, std::vector<std::size_t>& out) {
    if (n == 0)
        throw ValidationError("cannot resample an empty set");
    out.resize(n);
    for (auto& i : out)
        i = rng.below(n);
}

inline std::vector<std::size_t> resample_indices(std::size_t n, RngStream& rng) {
    std::vector<std::size_t> out;
    resample_indices(n, rng, out);
    return out;
}

/// SplitMix64 of (seed, index): independent child seeds for nested experiments.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Fresh 64-bit seed from the system entropy source.
inline std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
}

} // namespace frfboot
