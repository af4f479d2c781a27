#include <cmath>

#include "doctest.h"
#include "freqlab/randomness.hpp"

using namespace freqlab;
using namespace freqlab::collectives;
using namespace freqlab::randomness;

namespace {

Collective parse(const LabelSet& labels, std::initializer_list<const char*> symbols) {
    std::vector<std::string> v;
    for (const char* s : symbols) v.emplace_back(s);
    return Collective::from_symbols(labels, v);
}

std::vector<std::string> symbols_of(const Collective& c) {
    std::vector<std::string> out;
    for (std::uint64_t i = 0; i < c.size(); ++i) out.push_back(c.label_at(i));
    return out;
}

}  // namespace

TEST_CASE("even-position selection on an alternating prefix") {
    const LabelSet labels({"a", "b"});
    const auto c = parse(labels, {"a", "b", "a", "b"});
    const auto applied = apply_selection(c, PlaceSelection::arithmetic(2, 2), 4);
    CHECK(symbols_of(applied.subsequence) == std::vector<std::string>{"b", "b"});
    CHECK_FALSE(applied.empty_selection);
}

TEST_CASE("after-word selection sees only the past") {
    const LabelSet labels({"a", "b"});
    const auto c = parse(labels, {"a", "a", "b", "a", "b"});
    const auto applied = apply_selection(c, PlaceSelection::after_word(labels, {"a"}), 5);
    CHECK(symbols_of(applied.subsequence) == std::vector<std::string>{"a", "b", "b"});
}

TEST_CASE("selection rules receive exactly the strict past") {
    const LabelSet labels({"a", "b"});
    const auto c = make_uniform_iid(labels, 500, 3);
    bool past_sizes_correct = true;
    const PlaceSelection probe("probe", [&](std::uint64_t index, std::span<const LabelIndex> past) {
        if (past.size() != index) past_sizes_correct = false;
        return true;
    });
    const auto applied = apply_selection(c, probe, 500);
    CHECK(past_sizes_correct);
    CHECK(applied.subsequence.size() == 500);
}

TEST_CASE("empty selections are flagged, not fatal") {
    const LabelSet labels({"a", "b"});
    const auto c = parse(labels, {"a", "b"});
    const auto applied = apply_selection(c, PlaceSelection::skip_first(10), 2);
    CHECK(applied.empty_selection);
    CHECK(applied.subsequence.size() == 0);
}

TEST_CASE("select-all is the identity and composes idempotently") {
    const LabelSet labels({"a", "b"});
    const auto c = make_uniform_iid(labels, 300, 5);
    const auto once = apply_selection(c, PlaceSelection::select_all(), 300);
    const auto twice = apply_selection(once.subsequence, PlaceSelection::select_all(), 300);
    CHECK(symbols_of(twice.subsequence) == symbols_of(c));
}

TEST_CASE("every-2nd applied twice equals every-4th") {
    const LabelSet labels({"a", "b", "c"});
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 11ull}) {
        const auto c = make_uniform_iid(labels, 1000, seed);
        const auto second = apply_selection(c, PlaceSelection::arithmetic(2, 2), 1000);
        const auto second_again =
            apply_selection(second.subsequence, PlaceSelection::arithmetic(2, 2),
                            second.subsequence.size());
        const auto fourth = apply_selection(c, PlaceSelection::arithmetic(4, 4), 1000);
        CHECK(symbols_of(second_again.subsequence) == symbols_of(fourth.subsequence));
    }
}

TEST_CASE("after-a subsequence of an i.i.d. stream keeps the mother frequencies") {
    const LabelSet labels({"a", "b"});
    const std::uint64_t n = 100000;
    const auto c = make_uniform_iid(labels, n, 11);
    const auto applied = apply_selection(c, PlaceSelection::after_word(labels, {"a"}), n);
    const auto len = applied.subsequence.size();
    REQUIRE(len > 1000);

    // Direct count over the subsequence.
    std::uint64_t count_a = 0;
    for (std::uint64_t i = 0; i < len; ++i)
        if (applied.subsequence.label_at(i) == "a") ++count_a;
    const double freq = static_cast<double>(count_a) / static_cast<double>(len);
    CHECK(std::fabs(freq - 0.5) <= 5.0 / std::sqrt(static_cast<double>(len)));
}

TEST_CASE("periodic sequences fail the two-phase arithmetic family") {
    const LabelSet labels({"a", "b"});
    const auto c = make_periodic(labels, {"a", "b"}, 4000);
    const std::vector<PlaceSelection> family = {PlaceSelection::arithmetic(2, 1),
                                                PlaceSelection::arithmetic(2, 2)};
    const Schedule schedule = Schedule::geometric_to(4000, 2, 4);

    const auto verdict = randomness_audit(c, family, schedule, inverse_sqrt_tolerance(5.0));
    CHECK_FALSE(verdict.pass);
    REQUIRE(verdict.per_selection.size() == 2);
    // Phase 1 picks all a's, phase 2 all b's: both stabilized, both off by 1/2.
    for (const auto& report : verdict.per_selection) {
        CHECK(report.selected_length == 2000);
        CHECK(report.verdict->stabilized);
        CHECK(report.max_deviation == 0.5);
    }

    // Fails for every tolerance below 1/2 and clears at exactly 1/2 (inclusive).
    const auto tight = randomness_audit(c, family, schedule, [](std::uint64_t) { return 0.499; });
    CHECK_FALSE(tight.pass);
    const auto loose = randomness_audit(c, family, schedule, [](std::uint64_t) { return 0.5; });
    CHECK(loose.pass);
}

TEST_CASE("iid streams pass the built-in families") {
    const LabelSet labels({"a", "b"});
    const auto c = make_uniform_iid(labels, 1, 3);  // extended by the audit
    const std::vector<PlaceSelection> family = {
        PlaceSelection::arithmetic(2, 2),
        PlaceSelection::after_word(labels, {"a"}),
        PlaceSelection::skip_first(100),
    };
    const auto verdict = randomness_audit(c, family, Schedule::geometric(1000, 2, 7),
                                          inverse_sqrt_tolerance(5.0));
    CHECK(verdict.pass);
    CHECK(verdict.mother.stabilized);
    for (const auto& report : verdict.per_selection) {
        CHECK(report.sufficient);
        CHECK(report.verdict->stabilized);
        CHECK_FALSE(report.deviant);
    }
}

TEST_CASE("constant sequences pass any family") {
    const LabelSet labels({"a", "b"});
    const auto c = make_periodic(labels, {"a"}, 50000);
    const std::vector<PlaceSelection> family = {
        PlaceSelection::arithmetic(2, 1),
        PlaceSelection::after_word(labels, {"a"}),
        PlaceSelection::skip_first(500),
    };
    const auto verdict =
        randomness_audit(c, family, Schedule::geometric_to(50000, 2, 6), inverse_sqrt_tolerance(5.0));
    CHECK(verdict.pass);
    for (const auto& report : verdict.per_selection) {
        if (report.sufficient) {
            CHECK(report.verdict->stabilized);
            CHECK(report.max_deviation == 0.0);
        }
    }
}

TEST_CASE("short selections are reported as insufficient rather than failing") {
    const LabelSet labels({"a", "b"});
    const auto c = make_periodic(labels, {"a", "b"}, 4000);
    const std::vector<PlaceSelection> family = {PlaceSelection::skip_first(3995)};
    const auto verdict = randomness_audit(c, family, Schedule::geometric_to(4000, 2, 4),
                                          inverse_sqrt_tolerance(5.0));
    CHECK(verdict.pass);  // the lone selection is too short to judge
    CHECK_FALSE(verdict.per_selection[0].sufficient);
    CHECK(verdict.per_selection[0].selected_length == 5);
}
