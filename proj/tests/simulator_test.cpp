#include <cmath>
#include <numeric>

#include "bnc/expected_rank.hpp"
#include "bnc/simulator.hpp"
#include "doctest.h"

using namespace bnc;

namespace {
const GEModel kTable45(0.1, 0.1, 0.1, 0.8);
const DispersionObjective kDefaultObjective;
}  // namespace

TEST_CASE("scheme names round trip") {
    for (const Scheme scheme : all_schemes()) {
        CHECK(parse_scheme(scheme_name(scheme)) == scheme);
    }
    CHECK(!parse_scheme("AR-XX").has_value());
}

TEST_CASE("block hop extremes") {
    const BatchRanks full{{4, 4, 4, 4}, 4};
    SUBCASE("lossless channel caps at the allocation") {
        const GEModel lossless(0.1, 0.1, 0.0, 0.0);
        for (const Scheme scheme : all_schemes()) {
            Rng rng(1);
            const auto next = simulate_block_hop(scheme, full, lossless, kDefaultObjective, 16, rng);
            for (int k = 0; k < 4; ++k) CHECK(next.r[k] <= 4);
            CHECK(std::accumulate(next.r.begin(), next.r.end(), 0) == 16);
        }
        // Reduced-rank input: every received packet is useful up to the rank.
        const BatchRanks mixed{{4, 2, 0, 1}, 4};
        Rng rng(2);
        const auto next =
            simulate_block_hop(Scheme::AR_IBI, mixed, lossless, kDefaultObjective, 16, rng);
        for (int k = 0; k < 4; ++k) CHECK(next.r[k] == mixed.r[k]);
    }
    SUBCASE("fully lossy channel zeroes the ranks") {
        const GEModel opaque(0.1, 0.1, 1.0, 1.0);
        for (const Scheme scheme : all_schemes()) {
            Rng rng(1);
            const auto next = simulate_block_hop(scheme, full, opaque, kDefaultObjective, 16, rng);
            CHECK(next.r == std::vector<int>{0, 0, 0, 0});
        }
    }
    SUBCASE("ranks never increase") {
        const BatchRanks mixed{{4, 3, 1, 2}, 4};
        for (const Scheme scheme : all_schemes()) {
            Rng rng(77);
            for (int trial = 0; trial < 200; ++trial) {
                const auto next =
                    simulate_block_hop(scheme, mixed, kTable45, kDefaultObjective, 16, rng);
                for (int k = 0; k < 4; ++k) {
                    CHECK(next.r[k] <= mixed.r[k]);
                    CHECK(next.r[k] >= 0);
                }
            }
        }
    }
    SUBCASE("round-robin scheme needs a divisible budget") {
        Rng rng(1);
        CHECK_THROWS_AS(simulate_block_hop(Scheme::BR_BI, full, kTable45, kDefaultObjective, 15, rng),
                        ConfigError);
    }
}

TEST_CASE("single-batch hop matches the analytic expected rank") {
    // One batch, four slots: the Monte-Carlo mean must approach the DP value.
    const BatchRanks ranks{{4}, 4};
    const double analytic = expected_rank(4, {1.0, 2.0, 3.0, 4.0}, kTable45);
    Rng rng(2024);
    double total = 0.0;
    const int trials = 100000;
    for (int i = 0; i < trials; ++i) {
        total += simulate_block_hop(Scheme::AR_IBI, ranks, kTable45, kDefaultObjective, 4, rng).r[0];
    }
    CHECK(std::abs(total / trials - analytic) < 0.01);
}

TEST_CASE("experiment report") {
    ExperimentConfig config(kTable45);
    config.batch_size = 4;
    config.block_size = 4;
    config.hops = 3;
    config.blocks = 600;
    config.seed = 11;
    config.threads = 2;

    SUBCASE("zero hops mean unit throughput") {
        ExperimentConfig flat = config;
        flat.hops = 0;
        const auto report = run_experiment(flat);
        for (const auto& rows : report.stats) {
            REQUIRE(rows.size() == 1);
            CHECK(rows[0].mean_throughput == 1.0);
            CHECK(rows[0].group_variance == 0.0);
        }
    }
    SUBCASE("throughput is within bounds and nonincreasing per scheme") {
        const auto report = run_experiment(config);
        for (const auto& rows : report.stats) {
            for (std::size_t hop = 0; hop < rows.size(); ++hop) {
                CHECK(rows[hop].mean_throughput >= 0.0);
                CHECK(rows[hop].mean_throughput <= 1.0);
                if (hop > 0) CHECK(rows[hop].mean_throughput <= rows[hop - 1].mean_throughput);
            }
        }
    }
    SUBCASE("deterministic and thread-count independent") {
        const auto a = run_experiment(config);
        const auto b = run_experiment(config);
        ExperimentConfig serial = config;
        serial.threads = 1;
        const auto c = run_experiment(serial);
        for (std::size_t s = 0; s < a.stats.size(); ++s) {
            for (std::size_t hop = 0; hop < a.stats[s].size(); ++hop) {
                CHECK(a.stats[s][hop].mean_throughput == b.stats[s][hop].mean_throughput);
                CHECK(a.stats[s][hop].mean_throughput == c.stats[s][hop].mean_throughput);
                CHECK(a.stats[s][hop].group_variance == c.stats[s][hop].group_variance);
            }
        }
        ExperimentConfig reseeded = config;
        reseeded.seed = 12;
        const auto d = run_experiment(reseeded);
        CHECK(d.stats[0][1].mean_throughput != a.stats[0][1].mean_throughput);
    }
    SUBCASE("scheme ordering at desk scale") {
        ExperimentConfig ordered = config;
        ordered.blocks = 2000;
        ordered.hops = 3;
        const auto report = run_experiment(ordered);
        // schemes default order: BR-BI, AR-SI, AR-IBI
        for (int hop = 1; hop <= ordered.hops; ++hop) {
            const double br = report.stats[0][hop].mean_throughput;
            const double si = report.stats[1][hop].mean_throughput;
            const double ibi = report.stats[2][hop].mean_throughput;
            CHECK(br <= ibi + 0.01);
            CHECK(ibi <= si + 0.01);
        }
    }
    SUBCASE("interleaver objectives barely move the throughput") {
        ExperimentConfig a = config;
        a.blocks = 1500;
        a.schemes = {Scheme::AR_IBI};
        a.objective = DispersionObjective::neg_power(PairScope::Neighb, 1);
        ExperimentConfig b = a;
        b.objective = DispersionObjective::log_kernel(PairScope::AllPairs);
        const auto ra = run_experiment(a);
        const auto rb = run_experiment(b);
        CHECK(std::abs(ra.stats[0][3].mean_throughput - rb.stats[0][3].mean_throughput) < 0.01);
    }
    SUBCASE("cached planning matches the standalone hop operation") {
        ExperimentConfig tiny = config;
        tiny.blocks = 4;
        tiny.hops = 2;
        tiny.schemes = {Scheme::AR_IBI};
        const auto report = run_experiment(tiny);
        for (int hop = 1; hop <= tiny.hops; ++hop) {
            double total = 0.0;
            for (long long block = 0; block < tiny.blocks; ++block) {
                Rng rng(derive_stream_seed(tiny.seed, static_cast<std::uint64_t>(Scheme::AR_IBI),
                                           block));
                BatchRanks ranks{std::vector<int>(tiny.block_size, tiny.batch_size),
                                 tiny.batch_size};
                for (int h = 1; h <= hop; ++h) {
                    ranks = simulate_block_hop(Scheme::AR_IBI, ranks, tiny.channel, tiny.objective,
                                               tiny.packets(), rng, tiny.iterations);
                }
                total += std::accumulate(ranks.r.begin(), ranks.r.end(), 0.0) /
                         (tiny.block_size * tiny.batch_size);
            }
            CHECK(report.stats[0][hop].mean_throughput ==
                  doctest::Approx(total / tiny.blocks).epsilon(1e-15));
        }
    }
    SUBCASE("invalid configurations are rejected") {
        ExperimentConfig bad = config;
        bad.schemes.clear();
        CHECK_THROWS_AS(run_experiment(bad), ConfigError);
        ExperimentConfig odd = config;
        odd.packets_per_block = 15;  // BR-BI needs L | T
        CHECK_THROWS_AS(run_experiment(odd), ConfigError);
    }
}
