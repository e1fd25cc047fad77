#include "bnc/types.hpp"

#include <stdexcept>

namespace bnc {

bool is_valid_time_set(const TimeSet& times) {
    double prev = 0.0;
    for (const double x : times) {
        if (!(x >= 1.0) || !(x > prev)) return false;
        prev = x;
    }
    return true;
}

void require_valid_time_set(const TimeSet& times) {
    if (!is_valid_time_set(times)) {
        throw std::invalid_argument("time set must be strictly increasing with entries >= 1");
    }
}

void require_valid_allocation(const BlockAllocation& alloc) {
    for (const int v : alloc.t) {
        if (v < 0) throw std::invalid_argument("allocation entries must be nonnegative");
    }
}

void require_valid_ranks(const BatchRanks& ranks) {
    if (ranks.batch_size < 1) throw std::invalid_argument("batch size must be >= 1");
    for (const int v : ranks.r) {
        if (v < 0 || v > ranks.batch_size) {
            throw std::invalid_argument("ranks must lie in [0, batch size]");
        }
    }
}

}  // namespace bnc
