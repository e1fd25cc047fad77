#pragma once

#include <numeric>
#include <vector>

namespace bnc {

/// Strictly increasing transmission times, all >= 1. May be empty. Entries are
/// real: uniform grids with fractional spacing are legal time sets.
using TimeSet = std::vector<double>;

bool is_valid_time_set(const TimeSet& times);
void require_valid_time_set(const TimeSet& times);

/// Per-batch recoded packet counts for one block. The budget T is the sum.
struct BlockAllocation {
    std::vector<int> t;

    int total() const { return std::accumulate(t.begin(), t.end(), 0); }
    int size() const { return static_cast<int>(t.size()); }
};

/// Ranks of the batches of one block at a node, each in [0, batch_size].
struct BatchRanks {
    std::vector<int> r;
    int batch_size = 0;  // M

    int size() const { return static_cast<int>(r.size()); }
};

void require_valid_allocation(const BlockAllocation& alloc);
void require_valid_ranks(const BatchRanks& ranks);

}  // namespace bnc
