#include "bnc/ge_channel.hpp"

#include <cmath>
#include <limits>
#include <optional>

namespace bnc {

GEModel::GEModel(double p, double q, double g, double b) : p(p), q(q), g(g), b(b) {
    if (!(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0)) {
        throw std::invalid_argument("GEModel: transition probabilities must lie strictly in (0, 1)");
    }
    if (!(g >= 0.0 && g <= 1.0 && b >= 0.0 && b <= 1.0)) {
        throw std::invalid_argument("GEModel: loss probabilities must lie in [0, 1]");
    }
}

TransitionMatrix TransitionMatrix::identity() {
    TransitionMatrix m;
    m.a = {{{1.0, 0.0}, {0.0, 1.0}}};
    return m;
}

bool TransitionMatrix::is_row_stochastic(double tol) const {
    for (int i = 0; i < 2; ++i) {
        double row = 0.0;
        for (int j = 0; j < 2; ++j) {
            if (a[i][j] < -tol || a[i][j] > 1.0 + tol) return false;
            row += a[i][j];
        }
        if (std::abs(row - 1.0) > tol) return false;
    }
    return true;
}

TransitionMatrix operator*(const TransitionMatrix& x, const TransitionMatrix& y) {
    TransitionMatrix z;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            z.a[i][j] = x.a[i][0] * y.a[0][j] + x.a[i][1] * y.a[1][j];
        }
    }
    return z;
}

TransitionMatrix transition_matrix(const GEModel& m) {
    TransitionMatrix p;
    p.a = {{{1.0 - m.p, m.p}, {m.q, 1.0 - m.q}}};
    return p;
}

std::pair<double, double> stationary(const GEModel& m) {
    const double s = m.p + m.q;
    return {m.q / s, m.p / s};
}

double loss_rate(const GEModel& m) {
    return (m.g * m.q + m.b * m.p) / (m.p + m.q);
}

std::pair<double, double> burst_start_probabilities(const GEModel& m) {
    // Mass of "previous packet received, this one lost in state S"; the common
    // 1/(p+q) factor cancels in the normalization.
    const double start_good = m.q * m.g * ((1.0 - m.g) - m.p * (m.b - m.g));
    const double start_bad = m.p * m.b * ((1.0 - m.b) + m.q * (m.b - m.g));
    const double total = start_good + start_bad;
    if (!(total > 0.0)) {
        throw DegenerateModelError("burst statistics undefined: no burst can start");
    }
    return {start_good / total, start_bad / total};
}

namespace {

// Expected remaining burst length conditioned on the current loss happening in
// each state: (I - K) e = 1 with K the lose-one-more-packet kernel.
std::pair<double, double> burst_continuation_lengths(const GEModel& m) {
    const double k00 = (1.0 - m.p) * m.g;
    const double k01 = m.p * m.b;
    const double k10 = m.q * m.g;
    const double k11 = (1.0 - m.q) * m.b;
    const double a00 = 1.0 - k00, a01 = -k01;
    const double a10 = -k10, a11 = 1.0 - k11;
    const double det = a00 * a11 - a01 * a10;
    if (std::abs(det) < 1e-14) {
        throw DegenerateModelError("burst statistics undefined: continuation system is singular");
    }
    const double e_good = (a11 - a01) / det;
    const double e_bad = (a00 - a10) / det;
    return {e_good, e_bad};
}

}  // namespace

double abel(const GEModel& m) {
    const auto [start_good, start_bad] = burst_start_probabilities(m);
    const auto [e_good, e_bad] = burst_continuation_lengths(m);
    return start_good * e_good + start_bad * e_bad;
}

std::vector<double> burst_length_distribution(const GEModel& m, int max_len) {
    if (max_len < 1) throw std::invalid_argument("burst_length_distribution: max_len must be >= 1");
    auto [mass_good, mass_bad] = burst_start_probabilities(m);
    std::vector<double> tail(max_len);
    for (int i = 0; i < max_len; ++i) {
        tail[i] = mass_good + mass_bad;
        const double next_good = (1.0 - m.p) * m.g * mass_good + m.q * m.g * mass_bad;
        const double next_bad = m.p * m.b * mass_good + (1.0 - m.q) * m.b * mass_bad;
        mass_good = next_good;
        mass_bad = next_bad;
    }
    return tail;
}

GEModel fit_from_stats(double epsilon, double abel_value, double g, double b) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0 && g >= 0.0 && g <= 1.0 && b >= 0.0 && b <= 1.0)) {
        throw std::invalid_argument("fit_from_stats: probabilities must lie in [0, 1]");
    }
    if (!(abel_value >= 1.0)) {
        throw std::invalid_argument("fit_from_stats: mean burst length must be >= 1");
    }
    if (epsilon == g || epsilon == b) {
        throw DegenerateModelError("fit_from_stats: loss rate coincides with a per-state rate");
    }

    // Quadratic A p^2 + B p + C = 0 obtained by eliminating q from the burst
    // length expression with q = p (b - eps)/(eps - g).
    const double bg = b - g;
    const double be = b - epsilon;
    const double eg = epsilon - g;
    const double w = (1.0 - b) * (1.0 - g) - (1.0 - epsilon);
    const double u = g * (1.0 - g) * be + b * (1.0 - b) * eg;
    const double A = abel_value * be * bg * bg * bg * w;
    const double B =
        abel_value * bg * (w * u - be * eg * (1.0 - b) * (1.0 - g) * bg) - epsilon * bg * bg * w;
    const double C = eg * (1.0 - b) * (1.0 - g) * (epsilon * bg - abel_value * u);

    double roots[2];
    int num_roots = 0;
    if (std::abs(A) < 1e-300) {
        if (std::abs(B) < 1e-300) {
            throw InfeasibleStatsError("fit_from_stats: statistics impose no constraint on p");
        }
        roots[num_roots++] = -C / B;
    } else {
        const double disc = B * B - 4.0 * A * C;
        if (disc < 0.0) {
            throw InfeasibleStatsError("fit_from_stats: no real transition probability exists");
        }
        const double sq = std::sqrt(disc);
        // Numerically stable pairing: one root via the large-magnitude sum.
        if (B != 0.0) {
            const double h = -0.5 * (B + std::copysign(sq, B));
            roots[num_roots++] = h / A;
            if (h != 0.0) roots[num_roots++] = C / h;
        } else {
            roots[num_roots++] = sq / (2.0 * A);
            roots[num_roots++] = -sq / (2.0 * A);
        }
    }

    std::optional<GEModel> best;
    double best_err = std::numeric_limits<double>::infinity();
    for (int i = 0; i < num_roots; ++i) {
        const double p = roots[i];
        if (!(p > 0.0 && p < 1.0)) continue;
        const double q = p * be / eg;
        if (!(q > 0.0 && q < 1.0)) continue;
        GEModel model(p, q, g, b);
        double err;
        try {
            err = std::abs(loss_rate(model) - epsilon) + std::abs(abel(model) - abel_value);
        } catch (const DegenerateModelError&) {
            continue;
        }
        if (err < best_err) {
            best_err = err;
            best = model;
        }
    }
    if (!best || best_err > 1e-9) {
        throw InfeasibleStatsError("fit_from_stats: no root reproduces the statistics with p, q in (0, 1)");
    }
    return *best;
}

TransitionMatrix matrix_power(const GEModel& m, double x) {
    if (!(x >= 0.0)) throw std::invalid_argument("matrix_power: exponent must be >= 0");
    const double lambda = m.eigenvalue();
    const bool integral = x == std::floor(x);
    if (lambda < 0.0 && !integral) {
        throw NegativeEigenvalueError(
            "matrix_power: fractional power undefined for 1-p-q < 0 (exponent " + std::to_string(x) +
            ")");
    }
    const double lx = std::pow(lambda, x);  // exact sign handling for integral x
    const double s = m.p + m.q;
    TransitionMatrix r;
    r.a = {{{(m.q + m.p * lx) / s, (m.p - m.p * lx) / s},
            {(m.q - m.q * lx) / s, (m.p + m.q * lx) / s}}};
    return r;
}

std::vector<std::uint8_t> sample_losses(const GEModel& m, const std::vector<std::int64_t>& slots,
                                        Rng& rng) {
    std::vector<std::uint8_t> lost;
    lost.reserve(slots.size());
    if (slots.empty()) return lost;
    std::int64_t prev = 0;
    for (const auto s : slots) {
        if (s <= prev) throw std::invalid_argument("sample_losses: slots must be strictly increasing and >= 1");
        prev = s;
    }
    const auto [pi_good, pi_bad] = stationary(m);
    (void)pi_bad;
    bool bad = !(rng.uniform() < pi_good);
    std::int64_t now = 0;
    for (const auto slot : slots) {
        for (std::int64_t step = now; step < slot; ++step) {
            if (bad) {
                if (rng.uniform() < m.q) bad = false;
            } else {
                if (rng.uniform() < m.p) bad = true;
            }
        }
        now = slot;
        const double p_loss = bad ? m.b : m.g;
        lost.push_back(rng.uniform() < p_loss ? 1 : 0);
    }
    return lost;
}

}  // namespace bnc
