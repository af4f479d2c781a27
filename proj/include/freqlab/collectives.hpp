#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "freqlab/error.hpp"
#include "freqlab/rational.hpp"

namespace freqlab::collectives {

using LabelIndex = std::uint32_t;

// Finite ordered set of distinct symbolic labels.
class LabelSet {
public:
    explicit LabelSet(std::vector<std::string> labels);

    std::size_t size() const { return labels_.size(); }
    const std::string& label(LabelIndex i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const { return labels_; }
    bool contains(std::string_view s) const { return index_.find(s) != index_.end(); }
    LabelIndex index_of(std::string_view s) const;

    friend bool operator==(const LabelSet& a, const LabelSet& b) { return a.labels_ == b.labels_; }

private:
    std::vector<std::string> labels_;
    std::map<std::string, LabelIndex, std::less<>> index_;
};

// A realized finite prefix of a label sequence, with an optional pure
// generator (seed, index) -> label index for lazy extension. Immutable;
// extension produces a new value.
class Collective {
public:
    using Generator = std::function<LabelIndex(std::uint64_t seed, std::uint64_t index)>;

    Collective(LabelSet labels, std::vector<LabelIndex> prefix);
    Collective(LabelSet labels, Generator generator, std::uint64_t seed, std::uint64_t length);

    const LabelSet& labels() const { return *labels_; }
    std::uint64_t size() const { return prefix_.size(); }
    std::span<const LabelIndex> prefix() const { return prefix_; }
    LabelIndex at(std::uint64_t i) const { return prefix_.at(i); }
    const std::string& label_at(std::uint64_t i) const { return labels_->label(prefix_.at(i)); }

    bool has_generator() const { return static_cast<bool>(generator_); }
    std::uint64_t seed() const { return seed_; }

    // Regenerates (or truncates) to exactly n elements; requires a generator
    // when n exceeds the realized length.
    Collective extended_to(std::uint64_t n) const;

    // Parses symbolic labels against the label set.
    static Collective from_symbols(LabelSet labels, const std::vector<std::string>& symbols);

private:
    Collective(std::shared_ptr<const LabelSet> labels, std::vector<LabelIndex> prefix,
               Generator generator, std::uint64_t seed);

    std::shared_ptr<const LabelSet> labels_;
    std::vector<LabelIndex> prefix_;
    Generator generator_;
    std::uint64_t seed_ = 0;
};

// Mergeable counts over a finite label set.
class FrequencyTable {
public:
    explicit FrequencyTable(const LabelSet& labels);

    std::uint64_t total() const { return total_; }
    std::uint64_t count(LabelIndex i) const { return counts_.at(i); }
    const std::vector<std::uint64_t>& counts() const { return counts_; }
    std::size_t label_count() const { return counts_.size(); }

    void add(LabelIndex i) {
        ++counts_.at(i);
        ++total_;
    }

    // Commutative merge of chunked counts.
    void merge(const FrequencyTable& other);

    double frequency(LabelIndex i) const;
    Rational frequency_exact(LabelIndex i) const;
    std::vector<double> frequencies() const;

    friend bool operator==(const FrequencyTable& a, const FrequencyTable& b) {
        return a.total_ == b.total_ && a.counts_ == b.counts_;
    }

private:
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

// Counts the first n labels. Chunk-parallel for large n; the merge is exact,
// so the result is identical to a monolithic pass.
FrequencyTable frequency_table(const Collective& c, std::uint64_t n);

// Count of prefix positions (among the first n) whose label lies in the subset.
std::uint64_t subset_count(const Collective& c, const std::vector<std::string>& subset,
                           std::uint64_t n);

double relative_frequency(const Collective& c, const std::vector<std::string>& subset,
                          std::uint64_t n);
Rational relative_frequency_exact(const Collective& c, const std::vector<std::string>& subset,
                                  std::uint64_t n);

// Strictly increasing checkpoint schedule.
struct Schedule {
    std::vector<std::uint64_t> checkpoints;

    static Schedule geometric(std::uint64_t start, std::uint64_t ratio, std::uint32_t steps);
    // Geometric-style schedule ending exactly at n (used for subsequences).
    static Schedule geometric_to(std::uint64_t n, std::uint64_t ratio, std::uint32_t steps);

    void validate() const;
    std::uint64_t final_checkpoint() const { return checkpoints.back(); }
};

using ToleranceFn = std::function<double(std::uint64_t)>;

// tau(N) = c / sqrt(N)
ToleranceFn inverse_sqrt_tolerance(double c);

struct Checkpoint {
    std::uint64_t n;
    std::vector<double> frequencies;  // aligned with the label set
};

struct StabilizationWitness {
    LabelIndex label;
    std::uint64_t n_before, n_after;
    double freq_before, freq_after;
    double tolerance;
};

struct StabilizationVerdict {
    bool stabilized = false;
    // Frequencies at the final checkpoint; the limit estimates when stabilized.
    std::vector<double> probabilities;
    std::optional<StabilizationWitness> witness;
    std::vector<Checkpoint> checkpoints;
};

// Stabilized iff |nu_{N_k}(a) - nu_{N_{k+1}}(a)| <= tau(N_k) for every label a
// and every consecutive checkpoint pair (inclusive comparison).
StabilizationVerdict stabilization_audit(const Collective& c, const Schedule& schedule,
                                         const ToleranceFn& tolerance);

// i.i.d. draws over the label set with the given probabilities, inverse-CDF
// over a counter-based uniform stream; bit-exact reproducible per (seed, index).
Collective make_iid(LabelSet labels, std::vector<double> probabilities, std::uint64_t n,
                    std::uint64_t seed);
Collective make_uniform_iid(LabelSet labels, std::uint64_t n, std::uint64_t seed);

// Deterministic two-label sequence in blocks of geometrically growing length
// (1, r, r^2, ...), labels alternating; its relative frequencies provably
// oscillate between two bands and never stabilize.
Collective make_oscillating(LabelSet two_labels, std::uint64_t block_growth, std::uint64_t n);

// Cyclic repetition of a label pattern.
Collective make_periodic(LabelSet labels, const std::vector<std::string>& pattern,
                         std::uint64_t n);

}  // namespace freqlab::collectives
