#include "bnc/interleaver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "bnc/errors.hpp"

namespace bnc {

std::vector<int> TransmissionSequence::counts(int num_batches) const {
    std::vector<int> c(num_batches, 0);
    for (const int label : slots) {
        if (label < 1 || label > num_batches) {
            throw std::invalid_argument("sequence labels out of range");
        }
        ++c[label - 1];
    }
    return c;
}

std::vector<int> TransmissionSequence::positions(int batch) const {
    std::vector<int> pos;
    for (int i = 0; i < size(); ++i) {
        if (slots[i] == batch) pos.push_back(i + 1);
    }
    return pos;
}

int TransmissionSequence::max_label() const {
    int m = 0;
    for (const int label : slots) m = std::max(m, label);
    return m;
}

std::string TransmissionSequence::to_string() const {
    std::ostringstream out;
    if (max_label() <= 9) {
        for (const int label : slots) out << label;
    } else {
        for (int i = 0; i < size(); ++i) {
            if (i > 0) out << ',';
            out << slots[i];
        }
    }
    return out.str();
}

DispersionObjective DispersionObjective::neg_power(PairScope scope, double n) {
    if (!(n > 0.0)) throw std::invalid_argument("kernel exponent must be positive");
    return DispersionObjective(scope, KernelKind::NegPower, n);
}

DispersionObjective DispersionObjective::log_kernel(PairScope scope) {
    return DispersionObjective(scope, KernelKind::Log, 0.0);
}

DispersionObjective DispersionObjective::atan_kernel(PairScope scope) {
    return DispersionObjective(scope, KernelKind::Atan, 0.0);
}

std::optional<DispersionObjective> DispersionObjective::parse(const std::string& name) {
    const auto colon = name.find(':');
    if (colon == std::string::npos) return std::nullopt;
    const std::string scope_text = name.substr(0, colon);
    const std::string kernel_text = name.substr(colon + 1);
    PairScope scope;
    if (scope_text == "allpairs") {
        scope = PairScope::AllPairs;
    } else if (scope_text == "neighb") {
        scope = PairScope::Neighb;
    } else {
        return std::nullopt;
    }
    if (kernel_text == "ln") return log_kernel(scope);
    if (kernel_text == "atan") return atan_kernel(scope);
    if (kernel_text.rfind("-pe", 0) == 0) {
        try {
            std::size_t used = 0;
            const double n = std::stod(kernel_text.substr(3), &used);
            if (used != kernel_text.size() - 3 || !(n > 0.0)) return std::nullopt;
            return neg_power(scope, n);
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

std::string DispersionObjective::name() const {
    std::ostringstream out;
    out << (scope_ == PairScope::AllPairs ? "allpairs:" : "neighb:");
    switch (kind_) {
        case KernelKind::NegPower: {
            out << "-pe";
            if (n_ == std::floor(n_)) {
                out << static_cast<long long>(n_);
            } else {
                out << n_;
            }
            break;
        }
        case KernelKind::Log:
            out << "ln";
            break;
        case KernelKind::Atan:
            out << "atan";
            break;
    }
    return out.str();
}

double DispersionObjective::kernel(double separation) const {
    switch (kind_) {
        case KernelKind::NegPower:
            if (n_ == 1.0) return -1.0 / separation;
            if (n_ == 2.0) return -1.0 / (separation * separation);
            return -std::pow(separation, -n_);
        case KernelKind::Log:
            return std::log(separation);
        case KernelKind::Atan:
            return std::atan(separation);
    }
    return 0.0;
}

std::vector<DispersionObjective> standard_objectives() {
    std::vector<DispersionObjective> objectives;
    for (const PairScope scope : {PairScope::AllPairs, PairScope::Neighb}) {
        objectives.push_back(DispersionObjective::neg_power(scope, 1.0));
        objectives.push_back(DispersionObjective::neg_power(scope, 2.0));
        objectives.push_back(DispersionObjective::log_kernel(scope));
        objectives.push_back(DispersionObjective::atan_kernel(scope));
    }
    return objectives;
}

double dispersion(const TransmissionSequence& seq, const DispersionObjective& obj) {
    const int num_batches = seq.max_label();
    std::vector<std::vector<int>> positions(num_batches);
    for (int i = 0; i < seq.size(); ++i) {
        positions[seq.slots[i] - 1].push_back(i + 1);
    }
    double total = 0.0;
    for (const auto& pos : positions) {
        const int t = static_cast<int>(pos.size());
        if (t < 2) continue;
        if (obj.scope() == PairScope::AllPairs) {
            for (int i = 0; i < t - 1; ++i) {
                for (int j = i + 1; j < t; ++j) {
                    total += obj.kernel(static_cast<double>(pos[j] - pos[i]));
                }
            }
        } else {
            for (int i = 0; i + 1 < t; ++i) {
                total += obj.kernel(static_cast<double>(pos[i + 1] - pos[i]));
            }
        }
    }
    return total;
}

int slip(double x, const std::vector<std::uint8_t>& assigned) {
    const int T = static_cast<int>(assigned.size());
    int below = 0;
    for (int k = std::min(static_cast<int>(std::floor(x)), T); k >= 1; --k) {
        if (!assigned[k - 1]) {
            below = k;
            break;
        }
    }
    int above = 0;
    for (int k = std::max(static_cast<int>(std::ceil(x)), 1); k <= T; ++k) {
        if (!assigned[k - 1]) {
            above = k;
            break;
        }
    }
    if (above == 0 && below == 0) {
        throw std::invalid_argument("slip: no unassigned position left");
    }
    if (above == 0 || (below != 0 && x - below <= above - x)) return below;
    return above;
}

TransmissionSequence approximate_sequence(const BlockAllocation& alloc) {
    require_valid_allocation(alloc);
    const int T = alloc.total();

    // Stable descending order on packet counts, zero-count batches dropped;
    // output labels stay the caller's.
    std::vector<int> order(alloc.t.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return alloc.t[a] > alloc.t[b]; });
    while (!order.empty() && alloc.t[order.back()] == 0) order.pop_back();
    const int n = static_cast<int>(order.size());

    TransmissionSequence seq;
    seq.slots.assign(T, 0);
    std::vector<std::uint8_t> assigned(T, 0);
    int leftmost = 1;
    int rightmost = T;

    int i = 0;
    std::vector<int> picked;
    while (i < n) {
        const int count = alloc.t[order[i]];
        if (count > 1) {
            int bundle = 1;
            while (i + bundle < n && alloc.t[order[i + bundle]] == count) ++bundle;
            const double gap =
                static_cast<double>((rightmost - leftmost + 1) - bundle) / (count - 1);
            for (int round = 0; round < count; ++round) {
                picked.clear();
                for (int j = 0; j < bundle; ++j) {
                    const int slot = slip(leftmost + j + round * gap, assigned);
                    picked.push_back(slot);
                    assigned[slot - 1] = 1;
                }
                // Lowest slot goes to the lowest-ranked bundle member so that
                // no member ends up with all the short separations.
                std::sort(picked.begin(), picked.end());
                for (int j = 0; j < bundle; ++j) {
                    seq.slots[picked[j] - 1] = order[i + j] + 1;
                }
            }
            i += bundle;
        } else {
            seq.slots[leftmost - 1] = order[i] + 1;
            assigned[leftmost - 1] = 1;
            ++i;
        }
        while (leftmost <= T && assigned[leftmost - 1]) ++leftmost;
        while (rightmost >= 1 && assigned[rightmost - 1]) --rightmost;
    }
    return seq;
}

namespace {

// Dispersion change when one packet of a batch moves from slot `from` to the
// adjacent slot `to`, no other packet of the batch in between. `pos` is the
// batch's sorted slot list and contains `from`.
double move_delta(const std::vector<int>& pos, int from, int to, const DispersionObjective& obj) {
    double delta = 0.0;
    if (obj.scope() == PairScope::AllPairs) {
        for (const int y : pos) {
            if (y == from) continue;
            delta += obj.kernel(std::abs(to - y)) - obj.kernel(std::abs(from - y));
        }
    } else {
        const auto it = std::lower_bound(pos.begin(), pos.end(), from);
        if (it != pos.begin()) {
            const int prev = *(it - 1);
            delta += obj.kernel(to - prev) - obj.kernel(from - prev);
        }
        if (it + 1 != pos.end()) {
            const int next = *(it + 1);
            delta += obj.kernel(next - to) - obj.kernel(next - from);
        }
    }
    return delta;
}

void replace_position(std::vector<int>& pos, int from, int to) {
    const auto it = std::lower_bound(pos.begin(), pos.end(), from);
    *it = to;
}

}  // namespace

TransmissionSequence fine_tune(const TransmissionSequence& seq, const DispersionObjective& obj) {
    TransmissionSequence tuned = seq;
    const int T = tuned.size();
    if (T < 2) return tuned;

    const int num_batches = tuned.max_label();
    std::vector<std::vector<int>> positions(num_batches);
    for (int i = 0; i < T; ++i) positions[tuned.slots[i] - 1].push_back(i + 1);

    const long long swap_cap = static_cast<long long>(T) * T * T;
    long long swaps = 0;
    int i = 0;
    while (i + 1 < T) {
        const int a = tuned.slots[i];
        const int b = tuned.slots[i + 1];
        if (a != b) {
            const int x = i + 1;  // 1-based left slot
            const double delta = move_delta(positions[a - 1], x, x + 1, obj) +
                                 move_delta(positions[b - 1], x + 1, x, obj);
            if (delta > 0.0) {
                std::swap(tuned.slots[i], tuned.slots[i + 1]);
                replace_position(positions[a - 1], x, x + 1);
                replace_position(positions[b - 1], x + 1, x);
                if (++swaps > swap_cap) {
                    throw std::logic_error("fine_tune: swap budget exhausted");
                }
                i = 0;
                continue;
            }
        }
        ++i;
    }
    return tuned;
}

TransmissionSequence worst_sequence(const BlockAllocation& alloc) {
    require_valid_allocation(alloc);
    TransmissionSequence seq;
    seq.slots.reserve(alloc.total());
    for (std::size_t k = 0; k < alloc.t.size(); ++k) {
        seq.slots.insert(seq.slots.end(), alloc.t[k], static_cast<int>(k) + 1);
    }
    return seq;
}

TransmissionSequence block_sequence(int num_batches, int repeats) {
    if (num_batches < 1 || repeats < 1) {
        throw std::invalid_argument("block_sequence: arguments must be >= 1");
    }
    TransmissionSequence seq;
    seq.slots.reserve(static_cast<std::size_t>(num_batches) * repeats);
    for (int m = 0; m < repeats; ++m) {
        for (int k = 1; k <= num_batches; ++k) seq.slots.push_back(k);
    }
    return seq;
}

}  // namespace bnc
