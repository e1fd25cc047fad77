#pragma once

#include <vector>

#include "bnc/ge_channel.hpp"
#include "bnc/types.hpp"

namespace bnc {

/// Distribution of the number of packets received out of |times| packets sent
/// at the given times over the channel. Entry i is Pr(X = i). Joint-state
/// dynamic program; the chain starts from the stationary distribution, so the
/// result is invariant under shifting all times by a constant.
std::vector<double> reception_distribution(const GEModel& model, const TimeSet& times);

/// min(i, r): rank of i received packets of an r-rank batch under the
/// large-field approximation.
double rank_fn(long long i, long long r);

/// Expected next-hop rank of an r-rank batch whose packets are sent at the
/// given times: sum_i Pr(X = i) * min(i, r).
double expected_rank(int r, const TimeSet& times, const GEModel& model);

/// E(r, S_depth(t)) for every t = 0..t_max in one pass over the uniform grid
/// {1, depth+1, 2*depth+1, ...}. curve[t] is nondecreasing and concave in t.
std::vector<double> expected_rank_curve(int r, double depth, int t_max, const GEModel& model);

}  // namespace bnc
