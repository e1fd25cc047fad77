#pragma once

#include <cstdint>
#include <random>

namespace bnc {

/// Deterministic random stream. Wraps mt19937_64 and converts to doubles by
/// hand so that results are identical across standard library implementations
/// (std::uniform_real_distribution is not pinned by the standard).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n), n >= 1. Rejection sampling, unbiased.
    int below(int n) {
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return static_cast<int>(x % bound);
    }

  private:
    std::mt19937_64 gen_;
};

/// splitmix64 finalizer; used to derive independent stream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed for the stream of one (scheme, block) cell of an experiment.
inline std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t scheme_tag,
                                        std::uint64_t block) {
    return mix64(mix64(master ^ mix64(scheme_tag + 1)) ^ block);
}

}  // namespace bnc
