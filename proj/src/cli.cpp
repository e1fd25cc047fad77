#include "bnc/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "bnc/errors.hpp"
#include "bnc/recoding.hpp"
#include "bnc/search.hpp"

namespace bnc::cli {

namespace {

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) parts.push_back(trim(item));
    return parts;
}

long long parse_int(const std::string& text, const std::string& key) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid integer for '" + key + "': " + text);
    }
}

}  // namespace

double parse_number(const std::string& text) {
    const std::string value = trim(text);
    const auto slash = value.find('/');
    try {
        if (slash != std::string::npos) {
            std::size_t used_num = 0, used_den = 0;
            const double num = std::stod(value.substr(0, slash), &used_num);
            const std::string den_text = value.substr(slash + 1);
            const double den = std::stod(den_text, &used_den);
            if (used_num != slash || used_den != den_text.size() || den == 0.0) {
                throw std::invalid_argument(value);
            }
            return num / den;
        }
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid number: " + value);
    }
}

namespace {

struct Preset {
    double p_num, p_den, q_num, q_den;
};

// g = 0.1, b = 0.8 across the whole table.
const std::map<std::string, Preset>& preset_table() {
    static const std::map<std::string, Preset> table = {
        {"eps35_abel2", {4, 21, 12, 35}},
        {"eps45_abel2", {20, 49, 20, 49}},
        {"eps55_abel2", {4, 5, 4, 9}},
        {"eps35_abel2.5", {5, 63, 1, 7}},
        {"eps45_abel2.5", {11, 49, 11, 49}},
        {"eps55_abel2.5", {17, 35, 17, 63}},
        {"eps35_abel900_299", {23, 5670, 23, 3150}},
        {"eps45_abel900_299", {1, 10, 1, 10}},
        {"eps55_abel900_299", {859, 3150, 859, 5670}},
    };
    return table;
}

}  // namespace

std::optional<GEModel> channel_preset(const std::string& name) {
    std::string key = name;
    if (key.rfind("table1:", 0) == 0) key = key.substr(7);
    std::replace(key.begin(), key.end(), '/', '_');
    const auto it = preset_table().find(key);
    if (it == preset_table().end()) return std::nullopt;
    const Preset& cell = it->second;
    return GEModel(cell.p_num / cell.p_den, cell.q_num / cell.q_den, 0.1, 0.8);
}

std::vector<std::string> channel_preset_names() {
    std::vector<std::string> names;
    for (const auto& [key, cell] : preset_table()) names.push_back("table1:" + key);
    return names;
}

ExperimentConfig parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key or value");
        }
        if (!kv.emplace(key, value).second) {
            throw ConfigError("duplicate config key '" + key + "'");
        }
    }

    auto take = [&](const std::string& key) -> std::optional<std::string> {
        const auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string value = it->second;
        kv.erase(it);
        return value;
    };

    // Channel: exactly one of preset, (p, q), (epsilon, abel); g and b
    // accompany the non-preset forms.
    const auto preset_name = take("preset");
    const auto p_text = take("p");
    const auto q_text = take("q");
    const auto eps_text = take("epsilon");
    const auto abel_text = take("abel");
    const auto g_text = take("g");
    const auto b_text = take("b");

    const int channel_specs =
        (preset_name ? 1 : 0) + (p_text || q_text ? 1 : 0) + (eps_text || abel_text ? 1 : 0);
    if (channel_specs != 1) {
        throw ConfigError("specify the channel as exactly one of: preset, p/q/g/b, epsilon/abel/g/b");
    }

    std::optional<GEModel> model;
    if (preset_name) {
        model = channel_preset(*preset_name);
        if (!model) throw ConfigError("unknown preset '" + *preset_name + "'");
    } else {
        if (!g_text || !b_text) throw ConfigError("channel needs g and b");
        const double g = parse_number(*g_text);
        const double b = parse_number(*b_text);
        try {
            if (p_text) {
                if (!q_text) throw ConfigError("channel needs both p and q");
                model = GEModel(parse_number(*p_text), parse_number(*q_text), g, b);
            } else {
                if (!eps_text || !abel_text) throw ConfigError("channel needs both epsilon and abel");
                model = fit_from_stats(parse_number(*eps_text), parse_number(*abel_text), g, b);
            }
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("invalid channel: ") + e.what());
        }
    }

    ExperimentConfig config(*model);
    if (const auto v = take("M")) config.batch_size = static_cast<int>(parse_int(*v, "M"));
    if (const auto v = take("L")) config.block_size = static_cast<int>(parse_int(*v, "L"));
    if (const auto v = take("T")) config.packets_per_block = static_cast<int>(parse_int(*v, "T"));
    if (const auto v = take("hops")) config.hops = static_cast<int>(parse_int(*v, "hops"));
    if (const auto v = take("blocks")) config.blocks = parse_int(*v, "blocks");
    if (const auto v = take("iterations")) config.iterations = static_cast<int>(parse_int(*v, "iterations"));
    if (const auto v = take("seed")) config.seed = static_cast<std::uint64_t>(parse_int(*v, "seed"));
    if (const auto v = take("threads")) config.threads = static_cast<int>(parse_int(*v, "threads"));
    if (const auto v = take("out")) config.out_path = *v;
    if (const auto v = take("objective")) {
        const auto obj = DispersionObjective::parse(*v);
        if (!obj) throw ConfigError("unknown objective '" + *v + "'");
        config.objective = *obj;
    }
    if (const auto v = take("schemes")) {
        config.schemes.clear();
        for (const auto& name : split(*v, ',')) {
            const auto scheme = parse_scheme(name);
            if (!scheme) throw ConfigError("unknown scheme '" + name + "'");
            if (std::find(config.schemes.begin(), config.schemes.end(), *scheme) !=
                config.schemes.end()) {
                throw ConfigError("scheme '" + name + "' listed twice");
            }
            config.schemes.push_back(*scheme);
        }
        if (config.schemes.empty()) throw ConfigError("schemes list is empty");
    }
    if (!kv.empty()) {
        throw ConfigError("unknown config key '" + kv.begin()->first + "'");
    }
    if (config.batch_size < 1 || config.block_size < 1 || config.hops < 0 || config.blocks < 1 ||
        config.iterations < 1) {
        throw ConfigError("M, L, blocks, iterations must be >= 1 and hops >= 0");
    }
    return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

std::string report_to_csv(const ThroughputReport& report) {
    std::string csv = "scheme,hop,mean_throughput,group_variance,blocks,seed\n";
    char row[160];
    for (std::size_t s = 0; s < report.schemes.size(); ++s) {
        const std::string name = scheme_name(report.schemes[s]);
        for (std::size_t hop = 0; hop < report.stats[s].size(); ++hop) {
            const HopStats& stats = report.stats[s][hop];
            std::snprintf(row, sizeof(row), "%s,%zu,%.6f,%.6e,%lld,%llu\n", name.c_str(), hop,
                          stats.mean_throughput, stats.group_variance,
                          static_cast<long long>(report.blocks),
                          static_cast<unsigned long long>(report.seed));
            csv += row;
        }
    }
    return csv;
}

int cmd_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err) {
    try {
        ExperimentConfig config = parse_config_file(options.config_path);
        if (options.seed) config.seed = *options.seed;
        if (options.blocks) config.blocks = *options.blocks;
        if (options.out) config.out_path = *options.out;
        if (options.threads) config.threads = *options.threads;
        if (config.blocks < 1) throw ConfigError("blocks must be >= 1");

        const ThroughputReport report = run_experiment(config);
        const std::string csv = report_to_csv(report);
        if (config.out_path == "-" || config.out_path.empty()) {
            out << csv;
        } else {
            std::ofstream file(config.out_path, std::ios::binary);
            if (!file) throw ConfigError("cannot open output file '" + config.out_path + "'");
            file << csv;
        }
        return kExitOk;
    } catch (const InfeasibleStatsError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const DegenerateModelError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_dispersion(const DispersionOptions& options, std::ostream& out, std::ostream& err) {
    try {
        if (options.t.empty()) throw ConfigError("need at least one packet count");
        BlockAllocation alloc{options.t};
        require_valid_allocation(alloc);
        if (alloc.total() < 1) throw ConfigError("the packet counts sum to zero");

        std::vector<DispersionObjective> objectives;
        if (options.objectives.empty()) {
            objectives = standard_objectives();
        } else {
            for (const auto& name : options.objectives) {
                const auto obj = DispersionObjective::parse(name);
                if (!obj) throw ConfigError("unknown objective '" + name + "'");
                objectives.push_back(*obj);
            }
        }

        const TransmissionSequence approx = approximate_sequence(alloc);
        const TransmissionSequence worst = worst_sequence(alloc);

        char row[256];
        std::snprintf(row, sizeof(row), "%-16s %10s %10s %10s %10s %10s\n", "objective", "alg1",
                      "alg2", "sa", "worst", "optimum");
        out << row;
        for (const auto& obj : objectives) {
            const TransmissionSequence tuned = fine_tune(approx, obj);
            AnnealParams params;
            params.seed = options.seed;
            const TransmissionSequence annealed = simulated_annealing(tuned, obj, params);

            std::string optimum = "n/a";
            try {
                const OptimumResult result = exhaustive_optimum(alloc, obj, options.cap);
                char value[32];
                std::snprintf(value, sizeof(value), "%10.3f", result.value);
                optimum = value;
            } catch (const SearchSpaceExceededError&) {
            }
            std::snprintf(row, sizeof(row), "%-16s %10.3f %10.3f %10.3f %10.3f %10s\n",
                          obj.name().c_str(), dispersion(approx, obj), dispersion(tuned, obj),
                          dispersion(annealed, obj), dispersion(worst, obj), optimum.c_str());
            out << row;
        }
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_fit(const FitOptions& options, std::ostream& out, std::ostream& err) {
    try {
        const double epsilon = parse_number(options.epsilon);
        const double abel_value = parse_number(options.abel);
        const double g = parse_number(options.g);
        const double b = parse_number(options.b);
        const GEModel model = fit_from_stats(epsilon, abel_value, g, b);
        char line[128];
        std::snprintf(line, sizeof(line), "p = %.12g\nq = %.12g\n", model.p, model.q);
        out << line;
        return kExitOk;
    } catch (const InfeasibleStatsError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const DegenerateModelError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace bnc::cli
