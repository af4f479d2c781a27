#include "freqlab/randomness.hpp"

#include <algorithm>
#include <cmath>

namespace freqlab::randomness {

PlaceSelection::PlaceSelection(std::string name, Rule rule)
    : name_(std::move(name)), rule_(std::move(rule)) {
    if (!rule_) fail(Errc::BadConfig, "place selection needs a rule");
}

PlaceSelection PlaceSelection::arithmetic(std::uint64_t step, std::uint64_t offset) {
    if (step == 0 || offset == 0) fail(Errc::BadConfig, "arithmetic selection needs step, offset >= 1");
    auto rule = [step, offset](std::uint64_t index, std::span<const LabelIndex>) {
        const std::uint64_t pos = index + 1;  // 1-based
        return pos >= offset && (pos - offset) % step == 0;
    };
    return PlaceSelection(
        "arithmetic(step=" + std::to_string(step) + ",offset=" + std::to_string(offset) + ")",
        rule);
}

PlaceSelection PlaceSelection::after_word(const collectives::LabelSet& labels,
                                          const std::vector<std::string>& word) {
    if (word.empty()) fail(Errc::BadConfig, "after_word selection needs a non-empty word");
    std::vector<LabelIndex> w;
    w.reserve(word.size());
    std::string pretty;
    for (const auto& s : word) {
        w.push_back(labels.index_of(s));
        pretty += pretty.empty() ? s : "," + s;
    }
    auto rule = [w](std::uint64_t index, std::span<const LabelIndex> past) {
        if (index < w.size()) return false;
        for (std::size_t k = 0; k < w.size(); ++k) {
            if (past[index - w.size() + k] != w[k]) return false;
        }
        return true;
    };
    return PlaceSelection("after_word(" + pretty + ")", rule);
}

PlaceSelection PlaceSelection::skip_first(std::uint64_t count) {
    auto rule = [count](std::uint64_t index, std::span<const LabelIndex>) {
        return index >= count;
    };
    return PlaceSelection("skip_first(" + std::to_string(count) + ")", rule);
}

PlaceSelection PlaceSelection::select_all() {
    return PlaceSelection("all", [](std::uint64_t, std::span<const LabelIndex>) { return true; });
}

SelectionApplication apply_selection(const Collective& c, const PlaceSelection& s,
                                     std::uint64_t n) {
    if (n > c.size()) throw std::out_of_range("apply_selection: n exceeds realized prefix");
    const auto prefix = c.prefix();
    std::vector<LabelIndex> picked;
    for (std::uint64_t i = 0; i < n; ++i) {
        if (s.decide(i, prefix.first(i))) picked.push_back(prefix[i]);
    }
    const bool empty = picked.empty();
    return SelectionApplication{Collective(c.labels(), std::move(picked)), empty};
}

RandomnessVerdict randomness_audit(const Collective& c, const std::vector<PlaceSelection>& family,
                                   const Schedule& schedule, const ToleranceFn& tolerance,
                                   const RandomnessOptions& options) {
    schedule.validate();
    const std::uint64_t n = schedule.final_checkpoint();
    const Collective seq = c.size() >= n ? c : c.extended_to(n);

    RandomnessVerdict verdict;
    verdict.mother = collectives::stabilization_audit(seq, schedule, tolerance);
    const auto& mother_freqs = verdict.mother.checkpoints.back().frequencies;

    verdict.pass = true;
    for (const auto& sel : family) {
        SelectionReport report;
        report.name = sel.name();
        auto applied = apply_selection(seq, sel, n);
        report.selected_length = applied.subsequence.size();
        report.empty_selection = applied.empty_selection;
        report.sufficient =
            report.selected_length >= std::max<std::uint64_t>(options.min_selected, 2);
        if (!report.sufficient) {
            verdict.per_selection.push_back(std::move(report));
            continue;
        }

        const Schedule sub_schedule = Schedule::geometric_to(
            report.selected_length, options.schedule_ratio, options.schedule_steps);
        report.verdict =
            collectives::stabilization_audit(applied.subsequence, sub_schedule, tolerance);

        const auto& sub_freqs = report.verdict->checkpoints.back().frequencies;
        for (std::size_t l = 0; l < sub_freqs.size(); ++l)
            report.max_deviation =
                std::max(report.max_deviation, std::fabs(sub_freqs[l] - mother_freqs[l]));
        report.deviant = report.max_deviation > tolerance(report.selected_length);

        const bool sub_fails_where_mother_held =
            verdict.mother.stabilized && !report.verdict->stabilized;
        if (report.deviant || sub_fails_where_mother_held) verdict.pass = false;
        verdict.per_selection.push_back(std::move(report));
    }
    return verdict;
}

}  // namespace freqlab::randomness
