#include <algorithm>
#include <cmath>
#include <numeric>

#include "bnc/recoding.hpp"
#include "bnc/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bnc;

namespace {

const GEModel kTable45(0.1, 0.1, 0.1, 0.8);
const GEModel kHot(4.0 / 5, 4.0 / 9, 0.1, 0.8);  // 1-p-q < 0

double composition_value(const std::vector<int>& t, const BatchRanks& ranks,
                         const std::vector<double>& depths, const GEModel& model) {
    double total = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        const double depth = effective_depth(model, depths[k]);
        total += expected_rank(ranks.r[k], uniform_times(depth, t[k]), model);
    }
    return total;
}

}  // namespace

TEST_CASE("uniform time grids") {
    CHECK(uniform_times(4.0, 3) == TimeSet{1.0, 5.0, 9.0});
    CHECK(uniform_times(2.5, 2) == TimeSet{1.0, 3.5});
    CHECK(uniform_times(7.0, 0).empty());
    CHECK_THROWS_AS(uniform_times(0.5, 3), std::invalid_argument);
}

TEST_CASE("pseudo interleaver depth") {
    CHECK(pseudo_depth({1.0, 5.0, 9.0}) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(pseudo_depth({3.0}) == 1.0);
    CHECK(pseudo_depth({}) == 1.0);
    const TimeSet robin{1.0, 6.0, 11.0, 16.0};
    CHECK(pseudo_depth(robin) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("effective depth applies the integer fallback only when needed") {
    CHECK(effective_depth(kTable45, 2.5) == 2.5);
    CHECK(effective_depth(kHot, 3.0) == 3.0);
    CHECK(effective_depth(kHot, 2.5) == 2.0);  // tie rounds toward smaller
    CHECK(effective_depth(kHot, 2.7) == 3.0);
    CHECK(effective_depth(kHot, 1.2) == 1.0);
}

TEST_CASE("greedy allocation") {
    SUBCASE("single batch takes the whole budget") {
        const BatchRanks ranks{{3}, 4};
        const auto alloc = greedy_allocate(ranks, {1.0}, 9, kTable45);
        CHECK(alloc.t == std::vector<int>{9});
    }
    SUBCASE("zero-rank batches get nothing") {
        const BatchRanks ranks{{3, 0}, 4};
        const auto alloc = greedy_allocate(ranks, {1.0, 1.0}, 8, kTable45);
        CHECK(alloc.t == std::vector<int>{8, 0});
    }
    SUBCASE("symmetric batches split an even budget evenly") {
        const BatchRanks ranks{{3, 3}, 4};
        const auto alloc = greedy_allocate(ranks, {2.0, 2.0}, 10, kTable45);
        CHECK(alloc.t == std::vector<int>{5, 5});
    }
    SUBCASE("matches exhaustive composition search") {
        const GEModel models[] = {kTable45, kHot};
        struct Case {
            std::vector<int> ranks;
            std::vector<double> depths;
            int T;
        };
        const Case cases[] = {
            {{4, 2}, {1.0, 1.0}, 9},
            {{4, 1, 3}, {1.0, 2.0, 1.5}, 12},
            {{2, 2, 2}, {3.0, 3.0, 3.0}, 11},
            {{4, 4, 0}, {2.5, 1.0, 1.0}, 12},
        };
        for (const auto& model : models) {
            for (const auto& c : cases) {
                const BatchRanks ranks{c.ranks, 4};
                const auto alloc = greedy_allocate(ranks, c.depths, c.T, model);
                CHECK(alloc.total() == c.T);
                const double greedy_value = composition_value(alloc.t, ranks, c.depths, model);
                double best_value = -1.0;
                oracle::for_each_composition(c.T, static_cast<int>(c.ranks.size()),
                                             [&](const std::vector<int>& t) {
                                                 best_value = std::max(
                                                     best_value,
                                                     composition_value(t, ranks, c.depths, model));
                                             });
                CHECK(std::abs(greedy_value - best_value) < 1e-12);
            }
        }
    }
    SUBCASE("granting order follows batch permutations") {
        const std::vector<int> ranks{4, 2, 3};
        const std::vector<double> depths{1.0, 2.0, 3.0};
        const auto base = greedy_allocate(BatchRanks{ranks, 4}, depths, 10, kTable45);
        const std::vector<int> perm{2, 0, 1};  // new index -> old index
        std::vector<int> ranks_p(3);
        std::vector<double> depths_p(3);
        for (int k = 0; k < 3; ++k) {
            ranks_p[k] = ranks[perm[k]];
            depths_p[k] = depths[perm[k]];
        }
        const auto permuted = greedy_allocate(BatchRanks{ranks_p, 4}, depths_p, 10, kTable45);
        for (int k = 0; k < 3; ++k) CHECK(permuted.t[k] == base.t[perm[k]]);
    }
}

TEST_CASE("joint optimization") {
    SUBCASE("single batch emits a constant sequence") {
        const auto plan = joint_optimize(BatchRanks{{4}, 4}, 6, kTable45,
                                         DispersionObjective::neg_power(PairScope::Neighb, 1));
        CHECK(plan.alloc.t == std::vector<int>{6});
        CHECK(plan.seq.to_string() == "111111");
    }
    SUBCASE("equal ranks at full budget dominate the round-robin baseline") {
        const int M = 4, L = 4;
        const BatchRanks ranks{std::vector<int>(L, M), M};
        const auto obj = DispersionObjective::neg_power(PairScope::Neighb, 1);
        const auto plan = joint_optimize(ranks, M * L, kTable45, obj);
        CHECK(plan.alloc.t == std::vector<int>(L, M));
        const double baseline = evaluate_plan(ranks, block_sequence(L, M), kTable45);
        CHECK(plan.objective >= baseline - 1e-12);
    }
    SUBCASE("beats the baseline plan for uneven ranks") {
        Rng rng(5);
        const int M = 4, L = 4, T = 16;
        const auto obj = DispersionObjective::neg_power(PairScope::Neighb, 1);
        for (int trial = 0; trial < 10; ++trial) {
            BatchRanks ranks{std::vector<int>(L), M};
            for (auto& r : ranks.r) r = rng.below(M + 1);
            if (std::accumulate(ranks.r.begin(), ranks.r.end(), 0) == 0) ranks.r[0] = M;
            const auto plan = joint_optimize(ranks, T, kTable45, obj);
            CHECK(plan.alloc.total() == T);
            const double baseline = evaluate_plan(ranks, block_sequence(L, T / L), kTable45);
            CHECK(plan.objective >= baseline - 1e-12);
        }
    }
    SUBCASE("handles the negative-eigenvalue fallback") {
        const BatchRanks ranks{{4, 3, 1, 0}, 4};
        const auto plan = joint_optimize(BatchRanks{ranks}, 16, kHot,
                                         DispersionObjective::neg_power(PairScope::Neighb, 1));
        CHECK(plan.alloc.total() == 16);
        CHECK(plan.seq.size() == 16);
    }
    SUBCASE("objective is evaluated on realized positions") {
        const BatchRanks ranks{{4, 2}, 4};
        const auto obj = DispersionObjective::neg_power(PairScope::Neighb, 1);
        const auto plan = joint_optimize(ranks, 8, kTable45, obj);
        CHECK(plan.objective ==
              doctest::Approx(evaluate_plan(ranks, plan.seq, kTable45)).epsilon(1e-13));
    }
}
