#include "bnc/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <thread>

#include "bnc/errors.hpp"

namespace bnc {

std::string scheme_name(Scheme scheme) {
    switch (scheme) {
        case Scheme::BR_BI: return "BR-BI";
        case Scheme::AR_SI: return "AR-SI";
        case Scheme::AR_IBI: return "AR-IBI";
    }
    return "?";
}

std::optional<Scheme> parse_scheme(const std::string& name) {
    if (name == "BR-BI") return Scheme::BR_BI;
    if (name == "AR-SI") return Scheme::AR_SI;
    if (name == "AR-IBI") return Scheme::AR_IBI;
    return std::nullopt;
}

std::vector<Scheme> all_schemes() {
    return {Scheme::BR_BI, Scheme::AR_SI, Scheme::AR_IBI};
}

namespace {

struct IbiPlan {
    BlockAllocation alloc;
    TransmissionSequence seq;
};

// Stable descending order on ranks; plans are computed in sorted space so
// that they can be shared between blocks with the same rank multiset, then
// mapped back through this permutation.
std::vector<int> rank_order(const BatchRanks& ranks) {
    std::vector<int> order(ranks.r.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return ranks.r[a] > ranks.r[b]; });
    return order;
}

// Per-scheme planner with optional memoization keyed by the sorted ranks.
class Planner {
  public:
    Planner(const GEModel& model, int T, DispersionObjective obj, int iterations, bool cache)
        : model_(model), packets_(T), obj_(obj), iterations_(iterations), cache_enabled_(cache) {}

    // AR-IBI: joint allocation + intrablock interleaver, original batch order.
    IbiPlan plan_intrablock(const BatchRanks& ranks) {
        const auto order = rank_order(ranks);
        BatchRanks sorted{std::vector<int>(ranks.r.size()), ranks.batch_size};
        for (std::size_t j = 0; j < order.size(); ++j) sorted.r[j] = ranks.r[order[j]];

        IbiPlan sorted_plan;
        if (cache_enabled_) {
            {
                std::lock_guard<std::mutex> lock(mutex_);
                const auto it = ibi_cache_.find(sorted.r);
                if (it != ibi_cache_.end()) sorted_plan = it->second;
            }
            if (sorted_plan.seq.size() == 0) {
                sorted_plan = compute_intrablock(sorted);
                std::lock_guard<std::mutex> lock(mutex_);
                ibi_cache_.emplace(sorted.r, sorted_plan);
            }
        } else {
            sorted_plan = compute_intrablock(sorted);
        }

        IbiPlan plan;
        plan.alloc.t.assign(ranks.r.size(), 0);
        for (std::size_t j = 0; j < order.size(); ++j) {
            plan.alloc.t[order[j]] = sorted_plan.alloc.t[j];
        }
        plan.seq.slots.resize(sorted_plan.seq.size());
        for (int i = 0; i < sorted_plan.seq.size(); ++i) {
            plan.seq.slots[i] = order[sorted_plan.seq.slots[i] - 1] + 1;
        }
        return plan;
    }

    // AR-SI: allocation against depth-L uniform grids, original batch order.
    BlockAllocation plan_stream(const BatchRanks& ranks) {
        const auto order = rank_order(ranks);
        BatchRanks sorted{std::vector<int>(ranks.r.size()), ranks.batch_size};
        for (std::size_t j = 0; j < order.size(); ++j) sorted.r[j] = ranks.r[order[j]];

        std::vector<int> sorted_alloc;
        if (cache_enabled_) {
            {
                std::lock_guard<std::mutex> lock(mutex_);
                const auto it = si_cache_.find(sorted.r);
                if (it != si_cache_.end()) sorted_alloc = it->second;
            }
            if (sorted_alloc.empty()) {
                sorted_alloc = compute_stream(sorted);
                std::lock_guard<std::mutex> lock(mutex_);
                si_cache_.emplace(sorted.r, sorted_alloc);
            }
        } else {
            sorted_alloc = compute_stream(sorted);
        }

        BlockAllocation alloc;
        alloc.t.assign(ranks.r.size(), 0);
        for (std::size_t j = 0; j < order.size(); ++j) alloc.t[order[j]] = sorted_alloc[j];
        return alloc;
    }

  private:
    IbiPlan compute_intrablock(const BatchRanks& sorted) const {
        RecodingPlan plan = joint_optimize(sorted, packets_, model_, obj_, iterations_);
        return IbiPlan{std::move(plan.alloc), std::move(plan.seq)};
    }

    std::vector<int> compute_stream(const BatchRanks& sorted) const {
        const std::vector<double> depths(sorted.r.size(),
                                         static_cast<double>(sorted.r.size()));
        return greedy_allocate(sorted, depths, packets_, model_).t;
    }

    GEModel model_;
    int packets_;
    DispersionObjective obj_;
    int iterations_;
    bool cache_enabled_;
    std::mutex mutex_;
    std::map<std::vector<int>, IbiPlan> ibi_cache_;
    std::map<std::vector<int>, std::vector<int>> si_cache_;
};

std::vector<int> received_per_batch(const GEModel& model, const TransmissionSequence& seq,
                                    int num_batches, Rng& rng) {
    std::vector<std::int64_t> slots(seq.size());
    std::iota(slots.begin(), slots.end(), 1);
    const auto lost = sample_losses(model, slots, rng);
    std::vector<int> received(num_batches, 0);
    for (int i = 0; i < seq.size(); ++i) {
        if (!lost[i]) ++received[seq.slots[i] - 1];
    }
    return received;
}

BatchRanks hop_core(Planner& planner, Scheme scheme, const BatchRanks& ranks, const GEModel& model,
                    int T, Rng& rng) {
    require_valid_ranks(ranks);
    const int L = ranks.size();
    BatchRanks next{std::vector<int>(L, 0), ranks.batch_size};

    switch (scheme) {
        case Scheme::BR_BI: {
            if (T % L != 0) {
                throw ConfigError("BR-BI requires the block size to divide the packet budget");
            }
            const auto seq = block_sequence(L, T / L);
            const auto received = received_per_batch(model, seq, L, rng);
            for (int k = 0; k < L; ++k) next.r[k] = std::min(received[k], ranks.r[k]);
            return next;
        }
        case Scheme::AR_IBI: {
            const IbiPlan plan = planner.plan_intrablock(ranks);
            const auto received = received_per_batch(model, plan.seq, L, rng);
            for (int k = 0; k < L; ++k) next.r[k] = std::min(received[k], ranks.r[k]);
            return next;
        }
        case Scheme::AR_SI: {
            const BlockAllocation alloc = planner.plan_stream(ranks);
            // Each batch rides its own stream: an independent chain observed
            // every L slots.
            for (int k = 0; k < L; ++k) {
                std::vector<std::int64_t> slots(alloc.t[k]);
                for (int i = 0; i < alloc.t[k]; ++i) slots[i] = 1 + static_cast<std::int64_t>(i) * L;
                const auto lost = sample_losses(model, slots, rng);
                const int received = static_cast<int>(std::count(lost.begin(), lost.end(), 0));
                next.r[k] = std::min(received, ranks.r[k]);
            }
            return next;
        }
    }
    throw ConfigError("unknown scheme");
}

}  // namespace

BatchRanks simulate_block_hop(Scheme scheme, const BatchRanks& ranks, const GEModel& model,
                              const DispersionObjective& obj, int T, Rng& rng, int iterations) {
    Planner planner(model, T, obj, iterations, /*cache=*/false);
    return hop_core(planner, scheme, ranks, model, T, rng);
}

ThroughputReport run_experiment(const ExperimentConfig& config) {
    if (config.batch_size < 1 || config.block_size < 1 || config.hops < 0 || config.blocks < 1) {
        throw ConfigError("run_experiment: sizes, hops and blocks must be positive");
    }
    if (config.schemes.empty()) throw ConfigError("run_experiment: no scheme selected");
    const int T = config.packets();
    if (T < 1) throw ConfigError("run_experiment: packet budget must be >= 1");
    for (const Scheme scheme : config.schemes) {
        if (scheme == Scheme::BR_BI && T % config.block_size != 0) {
            throw ConfigError("BR-BI requires the block size to divide the packet budget");
        }
    }

    const int num_schemes = static_cast<int>(config.schemes.size());
    const int hops = config.hops;
    const long long blocks = config.blocks;
    constexpr long long kGroup = 100;
    const long long num_chunks = (blocks + kGroup - 1) / kGroup;
    const long long full_groups = blocks / kGroup;

    std::vector<std::unique_ptr<Planner>> planners;
    planners.reserve(num_schemes);
    for (int s = 0; s < num_schemes; ++s) {
        planners.push_back(std::make_unique<Planner>(config.channel, T, config.objective,
                                                     config.iterations, true));
    }

    // chunk_sums[scheme][hop][chunk]: sum of per-block normalized throughput.
    std::vector<std::vector<std::vector<double>>> chunk_sums(
        num_schemes, std::vector<std::vector<double>>(
                         hops + 1, std::vector<double>(num_chunks, 0.0)));

    std::atomic<long long> next_chunk{0};
    auto worker = [&]() {
        for (;;) {
            const long long chunk = next_chunk.fetch_add(1);
            if (chunk >= num_chunks) break;
            const long long begin = chunk * kGroup;
            const long long end = std::min(blocks, begin + kGroup);
            for (long long block = begin; block < end; ++block) {
                for (int s = 0; s < num_schemes; ++s) {
                    const Scheme scheme = config.schemes[s];
                    Rng rng(derive_stream_seed(config.seed,
                                               static_cast<std::uint64_t>(scheme), block));
                    BatchRanks ranks{std::vector<int>(config.block_size, config.batch_size),
                                     config.batch_size};
                    chunk_sums[s][0][chunk] += 1.0;
                    for (int hop = 1; hop <= hops; ++hop) {
                        ranks = hop_core(*planners[s], scheme, ranks, config.channel, T, rng);
                        const double mean_rank =
                            std::accumulate(ranks.r.begin(), ranks.r.end(), 0.0) /
                            config.block_size;
                        chunk_sums[s][hop][chunk] += mean_rank / config.batch_size;
                    }
                }
            }
        }
    };

    int num_threads = config.threads > 0
                          ? config.threads
                          : static_cast<int>(std::thread::hardware_concurrency());
    if (num_threads < 1) num_threads = 1;
    num_threads = static_cast<int>(std::min<long long>(num_threads, num_chunks));
    if (num_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(num_threads);
        for (int i = 0; i < num_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    ThroughputReport report;
    report.schemes = config.schemes;
    report.blocks = blocks;
    report.seed = config.seed;
    report.stats.assign(num_schemes, std::vector<HopStats>(hops + 1));
    for (int s = 0; s < num_schemes; ++s) {
        for (int hop = 0; hop <= hops; ++hop) {
            const auto& sums = chunk_sums[s][hop];
            double total = 0.0;
            for (const double v : sums) total += v;
            const double mean = total / static_cast<double>(blocks);

            double variance = 0.0;
            if (full_groups >= 2) {
                double group_mean_total = 0.0;
                for (long long g = 0; g < full_groups; ++g) {
                    group_mean_total += sums[g] / static_cast<double>(kGroup);
                }
                const double center = group_mean_total / static_cast<double>(full_groups);
                double ss = 0.0;
                for (long long g = 0; g < full_groups; ++g) {
                    const double d = sums[g] / static_cast<double>(kGroup) - center;
                    ss += d * d;
                }
                variance = ss / static_cast<double>(full_groups - 1);
            }
            report.stats[s][hop] = HopStats{mean, variance};
        }
    }
    return report;
}

}  // namespace bnc
