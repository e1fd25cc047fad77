#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bnc/ge_channel.hpp"
#include "bnc/interleaver.hpp"
#include "bnc/recoding.hpp"
#include "bnc/rng.hpp"
#include "bnc/types.hpp"

namespace bnc {

enum class Scheme { BR_BI = 0, AR_SI = 1, AR_IBI = 2 };

std::string scheme_name(Scheme scheme);
std::optional<Scheme> parse_scheme(const std::string& name);
std::vector<Scheme> all_schemes();

struct ExperimentConfig {
    int batch_size = 4;        // M
    int block_size = 4;        // L
    int packets_per_block = 0; // T; 0 means M*L
    int hops = 8;
    long long blocks = 100000;
    GEModel channel;
    std::vector<Scheme> schemes = all_schemes();
    DispersionObjective objective;  // AR-IBI interleaver objective
    int iterations = 2;             // AR-IBI allocate/interleave rounds
    std::uint64_t seed = 1;
    int threads = 0;  // 0 = hardware concurrency
    std::string out_path = "-";

    explicit ExperimentConfig(const GEModel& model) : channel(model) {}

    int packets() const { return packets_per_block > 0 ? packets_per_block : batch_size * block_size; }
};

struct HopStats {
    double mean_throughput = 0.0;
    double group_variance = 0.0;
};

struct ThroughputReport {
    std::vector<Scheme> schemes;
    long long blocks = 0;
    std::uint64_t seed = 0;
    // stats[scheme index][hop], hop 0 = source (throughput exactly 1).
    std::vector<std::vector<HopStats>> stats;
};

/// Transports one block across one link: picks the scheme's allocation and
/// transmission sequence for the given ranks, samples the channel, and
/// returns the next node's ranks, min(received, rank) per batch.
/// BR-BI needs the block size to divide the budget and pairs the even split
/// with the round-robin interleaver. AR-SI allocates against depth-L grids
/// and samples an independent chain per batch stepped L units between its
/// packets (the stream interleaver idealization). AR-IBI runs the joint
/// allocate/interleave optimization and sends over one chain.
BatchRanks simulate_block_hop(Scheme scheme, const BatchRanks& ranks, const GEModel& model,
                              const DispersionObjective& obj, int T, Rng& rng, int iterations = 2);

/// Monte-Carlo line-network experiment: fresh rank-M batches per block, an
/// independent channel realization per (scheme, block, hop), normalized
/// throughput (mean rank / M) accumulated per hop. The group variance is the
/// sample variance over means of consecutive 100-block groups. Deterministic
/// for a fixed config and seed, independent of the thread count.
ThroughputReport run_experiment(const ExperimentConfig& config);

}  // namespace bnc
