#include <cmath>

#include "bnc/interleaver.hpp"
#include "bnc/search.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bnc;

namespace {
BlockAllocation alloc_of(std::vector<int> t) { return BlockAllocation{std::move(t)}; }
}  // namespace

TEST_CASE("sequence counting") {
    CHECK(sequence_count(alloc_of({2, 1})) == 3);
    CHECK(sequence_count(alloc_of({5, 3, 3, 5})) == 40360320);
    CHECK(sequence_count(alloc_of({1, 1, 1, 1})) == 24);
    CHECK(sequence_count(alloc_of({4})) == 1);
    // 64 packets over 8 batches overflows 64 bits.
    CHECK(!sequence_count(alloc_of(std::vector<int>(8, 8))).has_value());
}

TEST_CASE("exhaustive optimum") {
    SUBCASE("maximal separation on a tiny block") {
        for (const auto& obj : standard_objectives()) {
            const auto result = exhaustive_optimum(alloc_of({2, 1}), obj, 100);
            CHECK(result.seq.positions(1) == std::vector<int>{1, 3});
            CHECK(result.value == doctest::Approx(obj.kernel(2.0)).epsilon(1e-12));
        }
    }
    SUBCASE("dominates every construction the library produces") {
        const auto alloc = alloc_of({3, 2, 2});
        for (const auto& obj : standard_objectives()) {
            const auto result = exhaustive_optimum(alloc, obj, 1000000);
            CHECK(result.seq.counts(3) == alloc.t);
            const double approx = dispersion(approximate_sequence(alloc), obj);
            const double tuned = dispersion(fine_tune(approximate_sequence(alloc), obj), obj);
            const double worst = dispersion(worst_sequence(alloc), obj);
            CHECK(worst <= result.value + 1e-12);
            CHECK(approx <= result.value + 1e-12);
            CHECK(tuned <= result.value + 1e-12);
            CHECK(worst <= approx + 1e-12);
            CHECK(approx <= tuned + 1e-12);
        }
    }
    SUBCASE("reference block values") {
        const auto alloc = alloc_of({5, 3, 3, 5});
        const auto pe1 = exhaustive_optimum(
            alloc, DispersionObjective::neg_power(PairScope::AllPairs, 1), 50'000'000);
        CHECK(std::abs(pe1.value - (-4.814)) < 5e-4);
        const auto ln = exhaustive_optimum(alloc, DispersionObjective::log_kernel(PairScope::Neighb),
                                           50'000'000);
        CHECK(std::abs(ln.value - 16.296) < 5e-4);
    }
    SUBCASE("cap enforcement") {
        CHECK_THROWS_AS(
            exhaustive_optimum(alloc_of({6, 5, 4, 3, 3, 2, 2, 2}),
                               DispersionObjective::neg_power(PairScope::AllPairs, 1)),
            SearchSpaceExceededError);
        CHECK_THROWS_AS(exhaustive_optimum(alloc_of({5, 3, 3, 5}),
                                           DispersionObjective::neg_power(PairScope::AllPairs, 1)),
                        SearchSpaceExceededError);  // default cap is too small for 4.0e7
    }
}

TEST_CASE("simulated annealing") {
    const auto alloc = alloc_of({6, 5, 4, 3, 3, 2, 2, 2});
    const auto obj = DispersionObjective::neg_power(PairScope::AllPairs, 1);

    SUBCASE("never loses the warm start") {
        const auto start = fine_tune(approximate_sequence(alloc), obj);
        AnnealParams params;
        params.seed = 3;
        const auto result = simulated_annealing(start, obj, params);
        CHECK(dispersion(result, obj) >= dispersion(start, obj) - 1e-12);
        CHECK(result.counts(8) == alloc.t);
    }
    SUBCASE("improves a cold start") {
        const auto start = worst_sequence(alloc);
        AnnealParams params;
        params.seed = 1;
        const auto result = simulated_annealing(start, obj, params);
        CHECK(dispersion(result, obj) > dispersion(start, obj));
        CHECK(result.counts(8) == alloc.t);
    }
    SUBCASE("deterministic per seed") {
        const auto start = worst_sequence(alloc);
        AnnealParams params;
        params.seed = 42;
        const auto a = simulated_annealing(start, obj, params);
        const auto b = simulated_annealing(start, obj, params);
        CHECK(a == b);
        params.seed = 43;
        const auto c = simulated_annealing(start, obj, params);
        CHECK(dispersion(c, obj) > dispersion(start, obj));
    }
    SUBCASE("single cooling step still returns the start or better") {
        const auto start = approximate_sequence(alloc);
        AnnealParams params;
        params.initial_temp = 1.0;
        params.stop_temp = 0.5;
        params.cooling_factor = 0.01;
        const auto result = simulated_annealing(start, obj, params);
        CHECK(dispersion(result, obj) >= dispersion(start, obj) - 1e-12);
    }
    SUBCASE("degenerate sequences are returned unchanged") {
        const auto single = worst_sequence(alloc_of({4}));
        AnnealParams params;
        CHECK(simulated_annealing(single, obj, params) == single);
    }
    SUBCASE("rejects bad parameters") {
        AnnealParams params;
        params.stop_temp = params.initial_temp;
        CHECK_THROWS_AS(simulated_annealing(worst_sequence(alloc), obj, params),
                        std::invalid_argument);
    }
}
