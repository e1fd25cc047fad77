#include "bnc/recoding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bnc {

TimeSet uniform_times(double depth, int t) {
    if (!(depth >= 1.0)) throw std::invalid_argument("uniform_times: depth must be >= 1");
    if (t < 0) throw std::invalid_argument("uniform_times: count must be nonnegative");
    TimeSet times;
    times.reserve(t);
    for (int i = 0; i < t; ++i) times.push_back(1.0 + i * depth);
    return times;
}

double pseudo_depth(const TimeSet& times) {
    require_valid_time_set(times);
    const auto t = times.size();
    if (t < 2) return 1.0;
    return (times.back() - times.front()) / static_cast<double>(t - 1);
}

double effective_depth(const GEModel& model, double depth) {
    if (!(depth >= 1.0)) throw std::invalid_argument("effective_depth: depth must be >= 1");
    if (model.eigenvalue() >= 0.0 || depth == std::floor(depth)) return depth;
    // Nearest positive integer, ties toward smaller.
    const double rounded = std::ceil(depth - 0.5);
    return std::max(1.0, rounded);
}

BlockAllocation greedy_allocate(const BatchRanks& ranks, const std::vector<double>& depths, int T,
                                const GEModel& model) {
    require_valid_ranks(ranks);
    const int L = ranks.size();
    if (static_cast<int>(depths.size()) != L) {
        throw std::invalid_argument("greedy_allocate: one depth per batch required");
    }
    if (T < 1) throw std::invalid_argument("greedy_allocate: budget must be >= 1");

    std::vector<std::vector<double>> curves(L);
    for (int k = 0; k < L; ++k) {
        curves[k] = expected_rank_curve(ranks.r[k], effective_depth(model, depths[k]), T, model);
    }

    BlockAllocation alloc;
    alloc.t.assign(L, 0);
    for (int granted = 0; granted < T; ++granted) {
        int best = 0;
        double best_gain = -1.0;
        for (int k = 0; k < L; ++k) {
            const int tk = alloc.t[k];
            const double gain = curves[k][tk + 1] - curves[k][tk];
            if (gain > best_gain) {
                best_gain = gain;
                best = k;
            }
        }
        ++alloc.t[best];
    }
    return alloc;
}

double evaluate_plan(const BatchRanks& ranks, const TransmissionSequence& seq,
                     const GEModel& model) {
    const int L = ranks.size();
    double total = 0.0;
    for (int k = 0; k < L; ++k) {
        const auto slots = seq.positions(k + 1);
        TimeSet times(slots.begin(), slots.end());
        total += expected_rank(ranks.r[k], times, model);
    }
    return total / L;
}

RecodingPlan joint_optimize(const BatchRanks& ranks, int T, const GEModel& model,
                            const DispersionObjective& obj, int iterations) {
    require_valid_ranks(ranks);
    if (T < 1) throw std::invalid_argument("joint_optimize: budget must be >= 1");
    if (iterations < 1) throw std::invalid_argument("joint_optimize: iterations must be >= 1");
    const int L = ranks.size();

    std::vector<double> depths(L, 1.0);
    RecodingPlan best;
    best.objective = -1.0;
    for (int round = 0; round < iterations; ++round) {
        BlockAllocation alloc = greedy_allocate(ranks, depths, T, model);
        TransmissionSequence seq = fine_tune(approximate_sequence(alloc), obj);
        const double value = evaluate_plan(ranks, seq, model);
        if (value > best.objective) {
            best = RecodingPlan{std::move(alloc), seq, value};
        }
        if (round + 1 < iterations) {
            for (int k = 0; k < L; ++k) {
                const auto slots = seq.positions(k + 1);
                depths[k] = pseudo_depth(TimeSet(slots.begin(), slots.end()));
            }
        }
    }
    return best;
}

}  // namespace bnc
