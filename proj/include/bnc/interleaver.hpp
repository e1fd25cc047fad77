#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bnc/types.hpp"

namespace bnc {

/// Assignment of one batch label (1-based) to each of the T slots of a block.
struct TransmissionSequence {
    std::vector<int> slots;  // slots[i] = batch sent at slot i+1

    int size() const { return static_cast<int>(slots.size()); }

    /// Occurrences of each batch 1..num_batches.
    std::vector<int> counts(int num_batches) const;

    /// 1-based slot indices of one batch, ascending.
    std::vector<int> positions(int batch) const;

    /// Largest label present (0 for an empty sequence).
    int max_label() const;

    /// Digit string when every label is a single digit, else comma-separated.
    std::string to_string() const;

    bool operator==(const TransmissionSequence&) const = default;
};

enum class PairScope { AllPairs, Neighb };

/// Scoring rule for how well same-batch packets are spread: a pair scope
/// (all same-batch pairs, or consecutive pairs only) plus an increasing
/// concave kernel over the separation (-r^-n, ln r, or atan r).
class DispersionObjective {
  public:
    enum class KernelKind { NegPower, Log, Atan };

    /// Default is the cheapest useful choice: consecutive pairs with -1/r.
    DispersionObjective() = default;

    static DispersionObjective neg_power(PairScope scope, double n);
    static DispersionObjective log_kernel(PairScope scope);
    static DispersionObjective atan_kernel(PairScope scope);

    /// Parses names of the form "allpairs:-pe1", "neighb:ln", "allpairs:atan",
    /// "neighb:-pe2.5".
    static std::optional<DispersionObjective> parse(const std::string& name);

    PairScope scope() const { return scope_; }
    KernelKind kernel_kind() const { return kind_; }
    double exponent() const { return n_; }
    std::string name() const;

    double kernel(double separation) const;

    bool operator==(const DispersionObjective&) const = default;

  private:
    DispersionObjective(PairScope scope, KernelKind kind, double n)
        : scope_(scope), kind_(kind), n_(n) {}

    PairScope scope_ = PairScope::Neighb;
    KernelKind kind_ = KernelKind::NegPower;
    double n_ = 1.0;
};

/// The eight objectives used throughout: AllPairs then Neighb, each with
/// -pe1, -pe2, ln, atan.
std::vector<DispersionObjective> standard_objectives();

/// Dispersion efficiency of a sequence. Batches with fewer than two packets
/// contribute nothing.
double dispersion(const TransmissionSequence& seq, const DispersionObjective& obj);

/// Nearest unassigned slot to real time x; ties and a missing right candidate
/// resolve to the left. assigned[i] covers slot i+1. At least one slot must be
/// free. Returns a 1-based slot index.
int slip(double x, const std::vector<std::uint8_t>& assigned);

/// Builds a transmission sequence that spreads each batch close to uniformly:
/// batches are taken in descending packet count, equal counts form a bundle
/// whose ideal positions are slipped to free slots and handed out round-robin.
/// Zero-count batches are dropped; single-packet batches take the leftmost
/// free slot. Output labels refer to the caller's batch indices.
TransmissionSequence approximate_sequence(const BlockAllocation& alloc);

/// Repeatedly swaps adjacent packets of distinct batches while a swap strictly
/// increases the dispersion, restarting the scan after each swap. The result
/// never scores below the input.
TransmissionSequence fine_tune(const TransmissionSequence& seq, const DispersionObjective& obj);

/// No interleaving at all: 1...1 2...2 ... with the allocation's counts.
TransmissionSequence worst_sequence(const BlockAllocation& alloc);

/// Round-robin pattern 12...L repeated m times; every same-batch gap is L.
TransmissionSequence block_sequence(int num_batches, int repeats);

}  // namespace bnc
