#include "bnc/expected_rank.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bnc {

namespace {

// Joint (state, received-count) forward pass. Packet 1 sees the stationary
// state distribution outright; every later packet first applies P^gap for its
// gap, then splits on lose/receive in the post-transition state.
struct ReceptionDp {
    explicit ReceptionDp(const GEModel& model, int capacity)
        : model_(model),
          good_(capacity + 1, 0.0),
          bad_(capacity + 1, 0.0),
          tg_(capacity + 1, 0.0),
          tb_(capacity + 1, 0.0) {
        const auto [pi_good, pi_bad] = stationary(model);
        good_[0] = pi_good;
        bad_[0] = pi_bad;
    }

    void step(const TransitionMatrix* transition) {
        ++packets_;
        const int j = packets_;
        for (int i = 0; i < j; ++i) {
            if (transition != nullptr) {
                tg_[i] = (*transition)(0, 0) * good_[i] + (*transition)(1, 0) * bad_[i];
                tb_[i] = (*transition)(0, 1) * good_[i] + (*transition)(1, 1) * bad_[i];
            } else {
                tg_[i] = good_[i];
                tb_[i] = bad_[i];
            }
        }
        for (int i = j; i >= 0; --i) {
            double mass_good = i < j ? model_.g * tg_[i] : 0.0;
            double mass_bad = i < j ? model_.b * tb_[i] : 0.0;
            if (i >= 1) {
                mass_good += (1.0 - model_.g) * tg_[i - 1];
                mass_bad += (1.0 - model_.b) * tb_[i - 1];
            }
            good_[i] = mass_good;
            bad_[i] = mass_bad;
        }
    }

    std::vector<double> marginal() const {
        std::vector<double> dist(packets_ + 1);
        for (int i = 0; i <= packets_; ++i) dist[i] = good_[i] + bad_[i];
        return dist;
    }

    double expected_rank(int r) const {
        double total = 0.0;
        for (int i = 0; i <= packets_; ++i) {
            total += (good_[i] + bad_[i]) * static_cast<double>(std::min<long long>(i, r));
        }
        return total;
    }

  private:
    GEModel model_;
    int packets_ = 0;
    std::vector<double> good_, bad_, tg_, tb_;
};

}  // namespace

std::vector<double> reception_distribution(const GEModel& model, const TimeSet& times) {
    require_valid_time_set(times);
    const int t = static_cast<int>(times.size());
    ReceptionDp dp(model, t);
    TransitionMatrix q;
    double prev_gap = -1.0;
    for (int j = 1; j <= t; ++j) {
        const TransitionMatrix* step = nullptr;
        if (j >= 2) {
            const double gap = times[j - 1] - times[j - 2];
            if (gap != prev_gap) {
                q = matrix_power(model, gap);
                prev_gap = gap;
            }
            step = &q;
        }
        dp.step(step);
    }
    return dp.marginal();
}

double rank_fn(long long i, long long r) {
    return static_cast<double>(std::min(i, r));
}

double expected_rank(int r, const TimeSet& times, const GEModel& model) {
    if (r < 0) throw std::invalid_argument("expected_rank: rank must be nonnegative");
    if (r == 0 || times.empty()) {
        require_valid_time_set(times);
        return 0.0;
    }
    const auto dist = reception_distribution(model, times);
    double total = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        total += dist[i] * rank_fn(static_cast<long long>(i), r);
    }
    return total;
}

std::vector<double> expected_rank_curve(int r, double depth, int t_max, const GEModel& model) {
    if (r < 0) throw std::invalid_argument("expected_rank_curve: rank must be nonnegative");
    if (!(depth >= 1.0)) throw std::invalid_argument("expected_rank_curve: depth must be >= 1");
    if (t_max < 0) throw std::invalid_argument("expected_rank_curve: t_max must be nonnegative");
    std::vector<double> curve(t_max + 1, 0.0);
    if (r == 0 || t_max == 0) return curve;
    const TransitionMatrix q = matrix_power(model, depth);
    ReceptionDp dp(model, t_max);
    for (int t = 1; t <= t_max; ++t) {
        dp.step(t >= 2 ? &q : nullptr);
        curve[t] = dp.expected_rank(r);
    }
    return curve;
}

}  // namespace bnc
