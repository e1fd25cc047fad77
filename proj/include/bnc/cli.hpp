#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bnc/ge_channel.hpp"
#include "bnc/simulator.hpp"

namespace bnc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInfeasible = 2;

/// Parses a decimal number or an exact rational "a/b".
double parse_number(const std::string& text);

/// Resolves a Table-style channel preset such as "table1:eps45_abel2" or
/// "table1:eps35_abel900_299" ('/' in the abel token is accepted as '_').
std::optional<GEModel> channel_preset(const std::string& name);
std::vector<std::string> channel_preset_names();

/// Reads a flat key-value experiment config ('#' comments, 'key = value').
/// The channel comes from exactly one of: preset, (p, q, g, b), or
/// (epsilon, abel, g, b). Throws ConfigError on any problem.
ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

/// CSV with header scheme,hop,mean_throughput,group_variance,blocks,seed and
/// one row per (scheme, hop), hops ascending from 0. Bytes are deterministic.
std::string report_to_csv(const ThroughputReport& report);

struct SimulateOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<long long> blocks;
    std::optional<std::string> out;
    std::optional<int> threads;
};

struct DispersionOptions {
    std::vector<int> t;
    std::vector<std::string> objectives;  // empty = all eight
    std::uint64_t cap = 10'000'000;
    std::uint64_t seed = 1;
};

struct FitOptions {
    std::string epsilon;
    std::string abel;
    std::string g;
    std::string b;
};

int cmd_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err);
int cmd_dispersion(const DispersionOptions& options, std::ostream& out, std::ostream& err);
int cmd_fit(const FitOptions& options, std::ostream& out, std::ostream& err);

}  // namespace bnc::cli
