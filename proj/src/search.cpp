#include "bnc/search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bnc/errors.hpp"
#include "bnc/rng.hpp"

namespace bnc {

TransmissionSequence simulated_annealing(const TransmissionSequence& seq0,
                                         const DispersionObjective& obj,
                                         const AnnealParams& params) {
    if (!(params.initial_temp > 0.0) || !(params.stop_temp > 0.0) ||
        params.stop_temp >= params.initial_temp) {
        throw std::invalid_argument("simulated_annealing: need 0 < stop_temp < initial_temp");
    }
    if (!(params.cooling_factor > 0.0 && params.cooling_factor < 1.0)) {
        throw std::invalid_argument("simulated_annealing: cooling factor must lie in (0, 1)");
    }

    const int T = seq0.size();
    const bool degenerate =
        T < 2 || std::all_of(seq0.slots.begin(), seq0.slots.end(),
                             [&](int v) { return v == seq0.slots.front(); });
    if (degenerate) return seq0;

    Rng rng(params.seed);
    TransmissionSequence current = seq0;
    double current_energy = -dispersion(current, obj);
    TransmissionSequence best = current;
    double best_energy = current_energy;

    for (double temp = params.initial_temp; temp > params.stop_temp;
         temp *= params.cooling_factor) {
        int i, j;
        do {
            i = rng.below(T);
            j = rng.below(T);
        } while (current.slots[i] == current.slots[j]);

        std::swap(current.slots[i], current.slots[j]);
        const double candidate_energy = -dispersion(current, obj);
        const double delta = candidate_energy - current_energy;
        if (delta < 0.0 || rng.uniform() < std::exp(-delta / temp)) {
            current_energy = candidate_energy;
            if (current_energy < best_energy) {
                best_energy = current_energy;
                best = current;
            }
        } else {
            std::swap(current.slots[i], current.slots[j]);  // reject
        }
    }
    return best;
}

std::optional<std::uint64_t> sequence_count(const BlockAllocation& alloc) {
    // Product of binomials C(n, t_k) over the running total n; every partial
    // product is itself a multinomial, so overflow checks suffice stepwise.
    std::uint64_t total = 1;
    std::uint64_t n = 0;
    for (const int tk : alloc.t) {
        for (int i = 1; i <= tk; ++i) {
            ++n;
            // total *= n / i with exact intermediate: multiply first, the
            // product of i consecutive ratios stays integral.
            if (total > UINT64_MAX / n) return std::nullopt;
            total = total * n / static_cast<std::uint64_t>(i);
        }
    }
    return total;
}

OptimumResult exhaustive_optimum(const BlockAllocation& alloc, const DispersionObjective& obj,
                                 std::uint64_t cap) {
    require_valid_allocation(alloc);
    const int T = alloc.total();
    if (T < 1) throw std::invalid_argument("exhaustive_optimum: empty allocation");
    const auto count = sequence_count(alloc);
    if (!count || *count > cap) {
        throw SearchSpaceExceededError("exhaustive_optimum: sequence count exceeds cap");
    }

    const int L = alloc.size();
    // Labels of equal-count batches are interchangeable; only the ordering of
    // their first packets is enumerated (lowest label first).
    std::vector<std::pair<int, int>> symmetric_pairs;
    for (int a = 0; a < L; ++a) {
        for (int b = a + 1; b < L; ++b) {
            if (alloc.t[a] > 0 && alloc.t[a] == alloc.t[b]) symmetric_pairs.emplace_back(a + 1, b + 1);
        }
    }

    std::vector<int> labels;
    labels.reserve(T);
    for (int k = 0; k < L; ++k) labels.insert(labels.end(), alloc.t[k], k + 1);

    std::vector<int> first_slot(L + 1, 0);
    std::vector<std::vector<int>> positions(L);
    for (int k = 0; k < L; ++k) positions[k].reserve(alloc.t[k]);
    const bool all_pairs = obj.scope() == PairScope::AllPairs;

    TransmissionSequence best_seq;
    double best_value = 0.0;
    bool have_best = false;
    do {
        bool canonical = true;
        if (!symmetric_pairs.empty()) {
            std::fill(first_slot.begin(), first_slot.end(), 0);
            for (int i = 0; i < T; ++i) {
                if (first_slot[labels[i]] == 0) first_slot[labels[i]] = i + 1;
            }
            for (const auto& [a, b] : symmetric_pairs) {
                if (first_slot[a] > first_slot[b]) {
                    canonical = false;
                    break;
                }
            }
        }
        if (!canonical) continue;

        double value = 0.0;
        if (all_pairs) {
            for (auto& pos : positions) pos.clear();
            for (int i = 0; i < T; ++i) positions[labels[i] - 1].push_back(i + 1);
            for (const auto& pos : positions) {
                const int t = static_cast<int>(pos.size());
                for (int i = 0; i < t - 1; ++i) {
                    for (int j = i + 1; j < t; ++j) {
                        value += obj.kernel(static_cast<double>(pos[j] - pos[i]));
                    }
                }
            }
        } else {
            std::fill(first_slot.begin(), first_slot.end(), 0);  // reuse as last-seen slot
            for (int i = 0; i < T; ++i) {
                const int label = labels[i];
                if (first_slot[label] != 0) {
                    value += obj.kernel(static_cast<double>(i + 1 - first_slot[label]));
                }
                first_slot[label] = i + 1;
            }
        }
        if (!have_best || value > best_value) {
            best_value = value;
            best_seq.slots = labels;
            have_best = true;
        }
    } while (std::next_permutation(labels.begin(), labels.end()));

    return OptimumResult{std::move(best_seq), best_value};
}

}  // namespace bnc
