#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "freqlab/collectives.hpp"

namespace freqlab::combining {

using collectives::Collective;
using collectives::LabelIndex;
using collectives::LabelSet;
using collectives::Schedule;
using collectives::StabilizationVerdict;
using collectives::ToleranceFn;

// Positionwise pairing of two label sequences. No probabilistic claim is
// made by the pairing itself.
class PairedCollective {
public:
    PairedCollective(LabelSet x_labels, LabelSet y_labels,
                     std::vector<std::pair<LabelIndex, LabelIndex>> pairs);

    const LabelSet& x_labels() const { return x_labels_; }
    const LabelSet& y_labels() const { return y_labels_; }
    std::uint64_t size() const { return pairs_.size(); }
    const std::vector<std::pair<LabelIndex, LabelIndex>>& pairs() const { return pairs_; }

    Collective x_component() const;
    Collective y_component() const;

private:
    LabelSet x_labels_;
    LabelSet y_labels_;
    std::vector<std::pair<LabelIndex, LabelIndex>> pairs_;
};

PairedCollective pair_collectives(const Collective& x, const Collective& y);

struct DerivedSubsequence {
    Collective sequence;   // y-components at positions where x = a
    bool empty_selection;  // flagged, not fatal
};

DerivedSubsequence derived_subsequence(const PairedCollective& z, const std::string& x_label);

// Joint counts over the first n pairs: n(a), n(a,b) exact.
class JointCounts {
public:
    JointCounts(const PairedCollective& z, std::uint64_t n);

    std::uint64_t total() const { return total_; }
    std::uint64_t x_count(LabelIndex a) const { return x_counts_.at(a); }
    std::uint64_t pair_count(LabelIndex a, LabelIndex b) const {
        return joint_.at(a * y_size_ + b);
    }

    Rational joint_exact(LabelIndex a, LabelIndex b) const;        // n(a,b)/N
    Rational marginal_x_exact(LabelIndex a) const;                 // n(a)/N
    Rational conditional_exact(LabelIndex b, LabelIndex a) const;  // n(a,b)/n(a)

private:
    std::size_t y_size_;
    std::vector<std::uint64_t> x_counts_;
    std::vector<std::uint64_t> joint_;
    std::uint64_t total_;
};

// nu_N(b/a; z) = n_N(a,b) / n_N(a). ConditionUndefined when n_N(a) = 0.
double conditional_frequency(const PairedCollective& z, const std::string& y_label,
                             const std::string& x_label, std::uint64_t n);
Rational conditional_frequency_exact(const PairedCollective& z, const std::string& y_label,
                                     const std::string& x_label, std::uint64_t n);

enum class Combinability { Combinable, NotCombinable };

struct ConditionalAudit {
    std::string x_label;
    std::uint64_t occurrences = 0;
    bool sufficient = false;
    std::optional<StabilizationVerdict> verdict;
};

struct CombinabilityVerdict {
    Combinability status = Combinability::NotCombinable;
    bool mother_stabilized = false;
    std::vector<ConditionalAudit> conditional;
    std::optional<std::string> witness;  // failing derived subsequence, if any

    // Limit-table estimates at the full length.
    std::vector<double> marginal_x;                 // p(a; x)
    std::vector<std::vector<double>> conditional_p; // p(b/a; z), row per a
    std::vector<std::vector<double>> joint_p;       // p(a,b; z)
    double max_product_deviation = 0.0;             // |p(a,b) - p(a) p(b/a)| max
    bool product_rule_ok = false;
};

struct CombiningOptions {
    std::uint64_t min_occurrences = 1000;
    std::uint64_t schedule_ratio = 2;
    std::uint32_t schedule_steps = 8;
};

// Combinable iff the x-component stabilizes and every sufficiently frequent
// derived subsequence y(a) stabilizes; then the joint table is well defined
// and the product rule p(a,b) = p(a) p(b/a) is verified within tau(N).
CombinabilityVerdict combinability_audit(const PairedCollective& z, const Schedule& schedule,
                                         const ToleranceFn& tolerance,
                                         const CombiningOptions& options = {});

enum class Independence { Independent, Dependent };

struct IndependenceVerdict {
    Independence status = Independence::Dependent;
    double max_deviation = 0.0;  // max over audited a, b of |p(b/a) - p(b; y)|
    CombinabilityVerdict combinability;
};

// Requires combinability; throws Error(NotCombinable) otherwise.
IndependenceVerdict independence_audit(const PairedCollective& z, const Schedule& schedule,
                                       const ToleranceFn& tolerance,
                                       const CombiningOptions& options = {});

}  // namespace freqlab::combining
