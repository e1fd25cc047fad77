#pragma once

#include <cstdint>
#include <optional>

#include "bnc/interleaver.hpp"
#include "bnc/types.hpp"

namespace bnc {

struct AnnealParams {
    double initial_temp = 5000.0;
    double cooling_factor = 0.95;
    double stop_temp = 1e-4;
    std::uint64_t seed = 1;
};

/// Simulated annealing over transmission sequences. Energy is the negated
/// dispersion; a neighbor swaps two slots holding distinct batches; worse
/// moves are accepted with the Boltzmann probability exp(-dE/temp). One
/// proposal per temperature level, cooled geometrically until stop_temp.
/// Returns the best state visited. A sequence with fewer than two distinct
/// batches is returned unchanged.
TransmissionSequence simulated_annealing(const TransmissionSequence& seq0,
                                         const DispersionObjective& obj,
                                         const AnnealParams& params);

/// Number of distinct sequences for an allocation (the multinomial
/// coefficient), or nullopt if it overflows 64 bits.
std::optional<std::uint64_t> sequence_count(const BlockAllocation& alloc);

struct OptimumResult {
    TransmissionSequence seq;
    double value = 0.0;
};

/// Ground-truth optimum by enumerating every distinct sequence, skipping
/// relabelings of equal-count batches (the first packet of the lower-indexed
/// batch must come first). Throws SearchSpaceExceededError when the sequence
/// count exceeds cap.
OptimumResult exhaustive_optimum(const BlockAllocation& alloc, const DispersionObjective& obj,
                                 std::uint64_t cap = 10'000'000);

}  // namespace bnc
