#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "freqlab/collectives.hpp"

namespace freqlab::randomness {

using collectives::Collective;
using collectives::LabelIndex;
using collectives::Schedule;
using collectives::StabilizationVerdict;
using collectives::ToleranceFn;

// A rule choosing subsequence positions from the past only. The decision
// callback receives the position index and a span of the labels strictly
// before it, so a rule structurally cannot inspect the current label.
class PlaceSelection {
public:
    using Rule = std::function<bool(std::uint64_t index, std::span<const LabelIndex> past)>;

    PlaceSelection(std::string name, Rule rule);

    const std::string& name() const { return name_; }
    bool decide(std::uint64_t index, std::span<const LabelIndex> past) const {
        return rule_(index, past);
    }

    // Built-ins. Positions are 1-based in the parameters to match the usual
    // "every 2nd starting at the 2nd" phrasing.
    static PlaceSelection arithmetic(std::uint64_t step, std::uint64_t offset);
    static PlaceSelection after_word(const collectives::LabelSet& labels,
                                     const std::vector<std::string>& word);
    static PlaceSelection skip_first(std::uint64_t count);
    static PlaceSelection select_all();

private:
    std::string name_;
    Rule rule_;
};

struct SelectionApplication {
    Collective subsequence;
    bool empty_selection;  // flagged, not fatal
};

// Order-preserving subsequence of the selected positions over the first n labels.
SelectionApplication apply_selection(const Collective& c, const PlaceSelection& s,
                                     std::uint64_t n);

struct SelectionReport {
    std::string name;
    std::uint64_t selected_length = 0;
    bool empty_selection = false;
    bool sufficient = false;  // selected_length >= min_selected
    std::optional<StabilizationVerdict> verdict;
    // Max over labels of |final subsequence frequency - final mother frequency|.
    double max_deviation = 0.0;
    bool deviant = false;
};

struct RandomnessVerdict {
    bool pass = false;
    StabilizationVerdict mother;
    std::vector<SelectionReport> per_selection;
};

struct RandomnessOptions {
    std::uint64_t min_selected = 1000;
    std::uint64_t schedule_ratio = 2;
    std::uint32_t schedule_steps = 8;
};

// Pass iff every sufficiently long selected subsequence stabilizes to the
// mother probabilities within tau(selected length).
RandomnessVerdict randomness_audit(const Collective& c,
                                   const std::vector<PlaceSelection>& family,
                                   const Schedule& schedule, const ToleranceFn& tolerance,
                                   const RandomnessOptions& options = {});

}  // namespace freqlab::randomness
