#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "bnc/errors.hpp"
#include "bnc/rng.hpp"

namespace bnc {

enum class ChainState { Good = 0, Bad = 1 };

/// Two-state hidden Markov packet-loss channel. p is the Good->Bad transition
/// probability, q the Bad->Good one; g and b are the per-state loss
/// probabilities. 0 < p, q < 1 keeps the chain ergodic.
struct GEModel {
    double p;
    double q;
    double g;
    double b;

    GEModel(double p, double q, double g, double b);

    /// 1 - p - q, the second eigenvalue of the transition matrix.
    double eigenvalue() const { return 1.0 - p - q; }
};

/// 2x2 row-stochastic matrix over the (Good, Bad) state order.
struct TransitionMatrix {
    std::array<std::array<double, 2>, 2> a{};

    double operator()(int row, int col) const { return a[row][col]; }

    static TransitionMatrix identity();
    bool is_row_stochastic(double tol = 1e-12) const;

    friend TransitionMatrix operator*(const TransitionMatrix& x, const TransitionMatrix& y);
};

/// The one-step transition matrix ((1-p, p), (q, 1-q)).
TransitionMatrix transition_matrix(const GEModel& model);

/// Stationary distribution (pi_G, pi_B) = (q/(p+q), p/(p+q)).
std::pair<double, double> stationary(const GEModel& model);

/// Long-run packet loss rate (gq + bp)/(p+q).
double loss_rate(const GEModel& model);

/// Probability that a burst starts in the Good resp. Bad state; sums to 1.
/// Throws DegenerateModelError when no burst can start (g = b = 0).
std::pair<double, double> burst_start_probabilities(const GEModel& model);

/// Mean number of consecutive losses in a burst. >= 1 whenever defined.
/// Throws DegenerateModelError when bursts never terminate (e.g. g = b = 1)
/// or never start.
double abel(const GEModel& model);

/// Tail probabilities Pr(burst length >= i) for i = 1..max_len. The first
/// entry is 1; i * (tail[i-1] - tail[i]) summed over i recovers abel() as
/// max_len grows.
std::vector<double> burst_length_distribution(const GEModel& model, int max_len);

/// Recovers (p, q) from the loss rate, the mean burst length and the
/// per-state loss probabilities by solving the quadratic in p and setting
/// q = p(b - eps)/(eps - g). The result round-trips through loss_rate and
/// abel within 1e-9 or the fit is rejected.
/// Throws DegenerateModelError when eps equals g or b, InfeasibleStatsError
/// when no root gives p, q in (0, 1).
GEModel fit_from_stats(double epsilon, double abel_value, double g, double b);

/// P^x in closed form via the eigendecomposition. Defined for every real
/// x >= 0 when 1-p-q >= 0 and for integral x otherwise; throws
/// NegativeEigenvalueError for fractional x with 1-p-q < 0.
TransitionMatrix matrix_power(const GEModel& model, double x);

/// Simulates the chain over unit time steps and reports a loss flag per
/// listed slot (1 = lost). Slots must be strictly increasing positive
/// integers; gaps between slots advance the chain one step per skipped slot.
/// The initial state is drawn from the stationary distribution.
std::vector<std::uint8_t> sample_losses(const GEModel& model, const std::vector<std::int64_t>& slots,
                                        Rng& rng);

}  // namespace bnc
