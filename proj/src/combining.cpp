#include "freqlab/combining.hpp"

#include <algorithm>
#include <cmath>

namespace freqlab::combining {

PairedCollective::PairedCollective(LabelSet x_labels, LabelSet y_labels,
                                   std::vector<std::pair<LabelIndex, LabelIndex>> pairs)
    : x_labels_(std::move(x_labels)), y_labels_(std::move(y_labels)), pairs_(std::move(pairs)) {
    for (const auto& [a, b] : pairs_) {
        if (a >= x_labels_.size() || b >= y_labels_.size())
            fail(Errc::UnknownLabel, "pair component outside its label set");
    }
}

Collective PairedCollective::x_component() const {
    std::vector<LabelIndex> xs;
    xs.reserve(pairs_.size());
    for (const auto& p : pairs_) xs.push_back(p.first);
    return Collective(x_labels_, std::move(xs));
}

Collective PairedCollective::y_component() const {
    std::vector<LabelIndex> ys;
    ys.reserve(pairs_.size());
    for (const auto& p : pairs_) ys.push_back(p.second);
    return Collective(y_labels_, std::move(ys));
}

PairedCollective pair_collectives(const Collective& x, const Collective& y) {
    if (x.size() != y.size())
        fail(Errc::LengthMismatch, "component lengths " + std::to_string(x.size()) + " vs " +
                                       std::to_string(y.size()));
    std::vector<std::pair<LabelIndex, LabelIndex>> pairs;
    pairs.reserve(x.size());
    for (std::uint64_t i = 0; i < x.size(); ++i) pairs.emplace_back(x.at(i), y.at(i));
    return PairedCollective(x.labels(), y.labels(), std::move(pairs));
}

DerivedSubsequence derived_subsequence(const PairedCollective& z, const std::string& x_label) {
    const LabelIndex a = z.x_labels().index_of(x_label);
    std::vector<LabelIndex> picked;
    for (const auto& [xa, yb] : z.pairs()) {
        if (xa == a) picked.push_back(yb);
    }
    const bool empty = picked.empty();
    return DerivedSubsequence{Collective(z.y_labels(), std::move(picked)), empty};
}

JointCounts::JointCounts(const PairedCollective& z, std::uint64_t n)
    : y_size_(z.y_labels().size()),
      x_counts_(z.x_labels().size(), 0),
      joint_(z.x_labels().size() * z.y_labels().size(), 0),
      total_(n) {
    if (n > z.size()) throw std::out_of_range("JointCounts: n exceeds pair count");
    const auto& pairs = z.pairs();
    for (std::uint64_t i = 0; i < n; ++i) {
        const auto& [a, b] = pairs[i];
        ++x_counts_[a];
        ++joint_[a * y_size_ + b];
    }
}

Rational JointCounts::joint_exact(LabelIndex a, LabelIndex b) const {
    if (total_ == 0) fail(Errc::EmptyPrefix, "joint frequency over an empty pairing");
    return Rational(static_cast<std::int64_t>(pair_count(a, b)),
                    static_cast<std::int64_t>(total_));
}

Rational JointCounts::marginal_x_exact(LabelIndex a) const {
    if (total_ == 0) fail(Errc::EmptyPrefix, "marginal frequency over an empty pairing");
    return Rational(static_cast<std::int64_t>(x_count(a)), static_cast<std::int64_t>(total_));
}

Rational JointCounts::conditional_exact(LabelIndex b, LabelIndex a) const {
    const std::uint64_t na = x_count(a);
    if (na == 0) fail(Errc::ConditionUndefined, "conditioning label never occurs");
    return Rational(static_cast<std::int64_t>(pair_count(a, b)), static_cast<std::int64_t>(na));
}

double conditional_frequency(const PairedCollective& z, const std::string& y_label,
                             const std::string& x_label, std::uint64_t n) {
    return conditional_frequency_exact(z, y_label, x_label, n).to_double();
}

Rational conditional_frequency_exact(const PairedCollective& z, const std::string& y_label,
                                     const std::string& x_label, std::uint64_t n) {
    const JointCounts counts(z, n);
    return counts.conditional_exact(z.y_labels().index_of(y_label),
                                    z.x_labels().index_of(x_label));
}

namespace {

PairedCollective truncated(const PairedCollective& z, std::uint64_t n) {
    std::vector<std::pair<LabelIndex, LabelIndex>> head(z.pairs().begin(),
                                                        z.pairs().begin() + n);
    return PairedCollective(z.x_labels(), z.y_labels(), std::move(head));
}

}  // namespace

CombinabilityVerdict combinability_audit(const PairedCollective& z_full, const Schedule& schedule,
                                         const ToleranceFn& tolerance,
                                         const CombiningOptions& options) {
    schedule.validate();
    const std::uint64_t n = std::min<std::uint64_t>(z_full.size(), schedule.final_checkpoint());
    const PairedCollective z = n < z_full.size() ? truncated(z_full, n) : z_full;

    CombinabilityVerdict verdict;
    const Collective x = z.x_component();
    Schedule x_schedule = schedule;
    if (schedule.final_checkpoint() > n)
        x_schedule = Schedule::geometric_to(n, options.schedule_ratio, options.schedule_steps);
    const auto mother = collectives::stabilization_audit(x, x_schedule, tolerance);
    verdict.mother_stabilized = mother.stabilized;

    bool all_pass = mother.stabilized;
    if (!mother.stabilized) verdict.witness = "x";

    for (LabelIndex a = 0; a < z.x_labels().size(); ++a) {
        ConditionalAudit audit;
        audit.x_label = z.x_labels().label(a);
        auto derived = derived_subsequence(z, audit.x_label);
        audit.occurrences = derived.sequence.size();
        audit.sufficient =
            audit.occurrences >= std::max<std::uint64_t>(options.min_occurrences, 2);
        if (audit.sufficient) {
            const Schedule sub = Schedule::geometric_to(audit.occurrences, options.schedule_ratio,
                                                        options.schedule_steps);
            audit.verdict = collectives::stabilization_audit(derived.sequence, sub, tolerance);
            if (!audit.verdict->stabilized && all_pass) {
                all_pass = false;
                verdict.witness = "y(" + audit.x_label + ")";
            }
        }
        verdict.conditional.push_back(std::move(audit));
    }

    // Limit tables at the full length; the product rule is checked there.
    const JointCounts counts(z, n);
    const std::size_t nx = z.x_labels().size(), ny = z.y_labels().size();
    verdict.marginal_x.resize(nx);
    verdict.conditional_p.assign(nx, std::vector<double>(ny, 0.0));
    verdict.joint_p.assign(nx, std::vector<double>(ny, 0.0));
    for (LabelIndex a = 0; a < nx; ++a) {
        verdict.marginal_x[a] = counts.marginal_x_exact(a).to_double();
        for (LabelIndex b = 0; b < ny; ++b) {
            verdict.joint_p[a][b] = counts.joint_exact(a, b).to_double();
            if (counts.x_count(a) > 0)
                verdict.conditional_p[a][b] = counts.conditional_exact(b, a).to_double();
            const double product = verdict.marginal_x[a] * verdict.conditional_p[a][b];
            verdict.max_product_deviation = std::max(
                verdict.max_product_deviation, std::fabs(verdict.joint_p[a][b] - product));
        }
    }
    verdict.product_rule_ok = verdict.max_product_deviation <= tolerance(n);
    verdict.status = (all_pass && verdict.product_rule_ok) ? Combinability::Combinable
                                                           : Combinability::NotCombinable;
    return verdict;
}

IndependenceVerdict independence_audit(const PairedCollective& z_full, const Schedule& schedule,
                                       const ToleranceFn& tolerance,
                                       const CombiningOptions& options) {
    IndependenceVerdict verdict;
    verdict.combinability = combinability_audit(z_full, schedule, tolerance, options);
    if (verdict.combinability.status != Combinability::Combinable)
        fail(Errc::NotCombinable, "independence audit requires a combinable pairing");

    const std::uint64_t n = std::min<std::uint64_t>(z_full.size(), schedule.final_checkpoint());
    const PairedCollective z = n < z_full.size() ? truncated(z_full, n) : z_full;
    const JointCounts counts(z, n);
    const Collective y = z.y_component();
    const auto y_table = collectives::frequency_table(y, n);

    bool independent = true;
    for (LabelIndex a = 0; a < z.x_labels().size(); ++a) {
        const auto& audit = verdict.combinability.conditional[a];
        if (!audit.sufficient || counts.x_count(a) == 0) continue;
        const double tau = tolerance(audit.occurrences);
        for (LabelIndex b = 0; b < z.y_labels().size(); ++b) {
            const double dev =
                std::fabs(counts.conditional_exact(b, a).to_double() - y_table.frequency(b));
            verdict.max_deviation = std::max(verdict.max_deviation, dev);
            if (dev > tau) independent = false;
        }
    }
    verdict.status = independent ? Independence::Independent : Independence::Dependent;
    return verdict;
}

}  // namespace freqlab::combining
