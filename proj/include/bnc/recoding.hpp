#pragma once

#include <vector>

#include "bnc/expected_rank.hpp"
#include "bnc/ge_channel.hpp"
#include "bnc/interleaver.hpp"
#include "bnc/types.hpp"

namespace bnc {

/// Uniform grid {1, depth+1, ..., (t-1)*depth+1}; empty for t = 0.
TimeSet uniform_times(double depth, int t);

/// Average same-batch packet separation (x_t - x_1)/(t - 1); 1 when the set
/// has fewer than two entries.
double pseudo_depth(const TimeSet& times);

/// Depth actually usable with the model: fractional depths require a real
/// fractional matrix power, which does not exist when 1-p-q < 0. In that case
/// the depth is rounded to the nearest positive integer, ties toward smaller.
double effective_depth(const GEModel& model, double depth);

/// Splits a budget of T packets over the batches to maximize the mean
/// expected rank, each batch evaluated on a uniform grid with its own depth.
/// Marginal gains are concave per batch, so granting one packet at a time to
/// the largest gain is optimal. Equal gains go to the lowest batch index.
BlockAllocation greedy_allocate(const BatchRanks& ranks, const std::vector<double>& depths, int T,
                                const GEModel& model);

struct RecodingPlan {
    BlockAllocation alloc;
    TransmissionSequence seq;
    double objective = 0.0;  // mean expected rank over the block's batches
};

/// Alternates packet allocation and interleaver construction: allocate with
/// the current depths (all 1 initially), build a sequence (approximation plus
/// fine-tuning), re-derive each batch's depth from its realized positions, and
/// repeat. Returns the best (allocation, sequence) pair over all rounds by the
/// exactly evaluated objective.
RecodingPlan joint_optimize(const BatchRanks& ranks, int T, const GEModel& model,
                            const DispersionObjective& obj, int iterations = 2);

/// Mean expected rank of a concrete (ranks, sequence) pair, evaluated on each
/// batch's realized slot positions.
double evaluate_plan(const BatchRanks& ranks, const TransmissionSequence& seq,
                     const GEModel& model);

}  // namespace bnc
