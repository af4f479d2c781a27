#include <random>

#include "doctest.h"
#include "freqlab/measures.hpp"
#include "freqlab/rng.hpp"

using namespace freqlab;
using namespace freqlab::measures;

namespace {

SpacePtr small_space(std::size_t n) {
    std::vector<std::string> atoms;
    for (std::size_t i = 0; i < n; ++i) atoms.push_back("w" + std::to_string(i + 1));
    return std::make_shared<const HiddenSpace>(std::move(atoms));
}

// Random rational measure with the given support pattern; masses share the
// denominator `grain`.
FiniteMeasure random_measure(SpacePtr space, const std::vector<bool>& support, std::mt19937& rng,
                             std::int64_t grain = 1000) {
    std::uniform_int_distribution<std::int64_t> dist(1, 50);
    std::vector<std::int64_t> weights(space->size(), 0);
    std::int64_t total = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (support[i]) {
            weights[i] = dist(rng);
            total += weights[i];
        }
    }
    std::vector<Rational> mass;
    mass.reserve(weights.size());
    for (const auto w : weights) mass.push_back(Rational(w, total));
    (void)grain;
    return FiniteMeasure(std::move(space), std::move(mass));
}

}  // namespace

TEST_CASE("event probability basics") {
    auto space = small_space(4);
    const auto uniform = FiniteMeasure::uniform(space);
    CHECK(uniform.probability(EventSet(space)) == Rational(0));
    CHECK(uniform.probability(EventSet::full(space)) == Rational(1));

    EventSet three(space);
    three.add(0);
    three.add(1);
    three.add(2);
    CHECK(event_probability(uniform, three) == Rational(3, 4));

    const auto other = small_space(3);
    CHECK_THROWS_WITH_AS(uniform.probability(EventSet::full(other)),
                         doctest::Contains("UnknownAtom"), Error);
}

TEST_CASE("product events partition the space") {
    auto space = small_space(1);
    ObservableTable constant{1, {{1, 1, 1}}};
    CHECK(product_event(space, constant, +1).count() == 1);
    CHECK(product_event(space, constant, -1).count() == 0);

    ObservableTable flipped{2, {{1, 1, -1}}};
    const auto minus = product_event(space, flipped, -1);
    CHECK(minus.count() == 1);
    CHECK(minus.contains(0));

    // Random tables on 16 atoms: +1 and -1 events are disjoint and exhaustive.
    auto big = small_space(16);
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int round = 0; round < 20; ++round) {
        ObservableTable table{3, {}};
        for (int i = 0; i < 16; ++i)
            table.values.push_back({coin(rng) ? 1 : -1, coin(rng) ? 1 : -1, coin(rng) ? 1 : -1});
        const auto plus = product_event(big, table, +1);
        const auto minus_event = product_event(big, table, -1);
        CHECK(plus.intersect(minus_event).empty());
        CHECK(plus.unite(minus_event) == EventSet::full(big));
    }
}

TEST_CASE("pointwise product identity holds for all 64 assignments") {
    const auto report = pointwise_product_identity(all_strategies());
    CHECK(report.holds);
    CHECK(report.atoms_checked == 64);
    CHECK(report.violations.empty());

    // Single-atom spot checks: all-plus and one flipped value.
    CHECK(pointwise_product_identity({PhotonValues{{1, 1, 1, 1, 1, 1}}}).holds);
    CHECK(pointwise_product_identity({PhotonValues{{1, -1, 1, 1, 1, 1}}}).holds);
}

TEST_CASE("tampered tables are rejected as structurally inconsistent") {
    const auto scheme = make_strategy_scheme();
    auto tampered = scheme.tables;
    tampered[3].values[5][0] *= -1;
    CHECK_THROWS_WITH_AS(pointwise_product_identity(tampered, scheme.assignments),
                         doctest::Contains("StructureViolation"), Error);
    CHECK(pointwise_product_identity(scheme.tables, scheme.assignments).holds);
}

TEST_CASE("no single measure satisfies the four certainty constraints") {
    const auto scheme = make_strategy_scheme();

    const auto uniform = FiniteMeasure::uniform(scheme.space);
    const auto report = kolmogorov_contradiction(uniform, scheme.tables, scheme.assignments);
    for (const auto& p : report.plus_event_prob) CHECK(p == Rational(1, 2));
    CHECK(report.minus_event_prob_4 == Rational(1, 2));
    CHECK_FALSE(report.first_three_certain);
    CHECK_FALSE(report.satisfied_by_measure);
    CHECK(report.sigma_inside_plus_4);
    CHECK_FALSE(report.jointly_satisfiable);

    // Meeting the first three certainties forces the fourth to fail.
    const auto point = FiniteMeasure::point_mass(scheme.space, 0);
    const auto certain = kolmogorov_contradiction(point, scheme.tables, scheme.assignments);
    CHECK(certain.first_three_certain);
    CHECK(certain.sigma_plus_prob == Rational(1));
    CHECK(certain.minus_event_prob_4 == Rational(0));
    CHECK_FALSE(certain.satisfied_by_measure);

    // Property: every random measure yields the same infeasibility certificate.
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int round = 0; round < 50; ++round) {
        std::vector<bool> support(64, false);
        bool any = false;
        for (std::size_t i = 0; i < 64; ++i) {
            support[i] = coin(rng) == 1;
            any = any || support[i];
        }
        if (!any) support[round % 64] = true;
        const auto p = random_measure(scheme.space, support, rng);
        const auto r = kolmogorov_contradiction(p, scheme.tables, scheme.assignments);
        CHECK(r.sigma_inside_plus_4);
        CHECK_FALSE(r.jointly_satisfiable);
        CHECK_FALSE(r.satisfied_by_measure);
    }
}

TEST_CASE("a single all-plus atom meets the first three certainties but not the fourth") {
    const std::vector<PhotonValues> assignments = {PhotonValues{{1, 1, 1, 1, 1, 1}}};
    auto space = std::make_shared<const HiddenSpace>(std::vector<std::string>{"w"});
    const auto tables = induced_tables(assignments);
    const auto report =
        kolmogorov_contradiction(FiniteMeasure::point_mass(space, 0), tables, assignments);
    CHECK(report.first_three_certain);
    CHECK(report.minus_event_prob_4 == Rational(0));
    CHECK_FALSE(report.fourth_certain);
    CHECK_FALSE(report.satisfied_by_measure);
}

TEST_CASE("absolute continuity and equivalence are support comparisons") {
    auto space = small_space(3);
    const FiniteMeasure p(space, {Rational(1, 2), Rational(1, 2), Rational(0)});
    const FiniteMeasure q(space, {Rational(1, 3), Rational(1, 3), Rational(1, 3)});
    CHECK(is_absolutely_continuous(p, q));
    CHECK_FALSE(is_absolutely_continuous(q, p));
    CHECK_FALSE(is_equivalent(p, q));
    CHECK(is_equivalent(p, p));

    const FiniteMeasure r(space, {Rational(1), Rational(0), Rational(0)});
    const FiniteMeasure s(space, {Rational(0), Rational(1), Rational(0)});
    CHECK_FALSE(is_absolutely_continuous(r, s));
    CHECK_FALSE(is_absolutely_continuous(s, r));

    const auto other = small_space(4);
    CHECK_THROWS_WITH_AS(is_absolutely_continuous(p, FiniteMeasure::uniform(other)),
                         doctest::Contains("SpaceMismatch"), Error);
}

TEST_CASE("equivalence is an equivalence relation on random measures") {
    auto space = small_space(6);
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int round = 0; round < 30; ++round) {
        std::vector<bool> support(6, false);
        for (std::size_t i = 0; i < 6; ++i) support[i] = coin(rng) == 1;
        support[0] = true;
        const auto a = random_measure(space, support, rng);
        const auto b = random_measure(space, support, rng);
        const auto c = random_measure(space, support, rng);
        CHECK(is_equivalent(a, a));
        CHECK(is_equivalent(a, b) == is_equivalent(b, a));
        if (is_equivalent(a, b) && is_equivalent(b, c)) CHECK(is_equivalent(a, c));
    }
}

TEST_CASE("singularity needs disjoint supports and is symmetric") {
    auto space = small_space(3);
    const FiniteMeasure p(space, {Rational(1), Rational(0), Rational(0)});
    const FiniteMeasure q(space, {Rational(0), Rational(1), Rational(0)});
    const auto result = is_singular(p, q);
    CHECK(result.singular);
    CHECK(result.witness.atom_names() == std::vector<std::string>{"w2"});
    CHECK(p.probability(result.witness) == Rational(0));
    CHECK(q.probability(result.witness) == Rational(1));

    const FiniteMeasure overlap(space, {Rational(1, 2), Rational(1, 2), Rational(0)});
    CHECK_FALSE(is_singular(p, overlap).singular);
    CHECK_FALSE(is_singular(p, p).singular);

    std::mt19937 rng(5);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int round = 0; round < 30; ++round) {
        std::vector<bool> sa(3, false), sb(3, false);
        sa[coin(rng)] = true;
        sb[1 + coin(rng)] = true;
        const auto a = random_measure(space, sa, rng);
        const auto b = random_measure(space, sb, rng);
        CHECK(is_singular(a, b).singular == is_singular(b, a).singular);
    }
}

TEST_CASE("radon-nikodym densities reconstruct exactly") {
    auto space = small_space(2);
    const FiniteMeasure q(space, {Rational(1, 2), Rational(1, 2)});
    const FiniteMeasure p(space, {Rational(3, 4), Rational(1, 4)});
    const auto density = radon_nikodym(p, q);
    CHECK(density[0] == Rational(3, 2));
    CHECK(density[1] == Rational(1, 2));

    const auto self = radon_nikodym(q, q);
    CHECK(self[0] == Rational(1));
    CHECK(self[1] == Rational(1));

    const FiniteMeasure point(space, {Rational(1), Rational(0)});
    CHECK_THROWS_WITH_AS(radon_nikodym(q, point), doctest::Contains("NoDensity"), Error);
}

TEST_CASE("reconstruction sweep over every event of a random pair") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> coin(0, 1);
    auto space = small_space(8);
    for (int round = 0; round < 10; ++round) {
        std::vector<bool> q_support(8, false);
        for (std::size_t i = 0; i < 8; ++i) q_support[i] = coin(rng) == 1;
        q_support[0] = true;
        std::vector<bool> p_support = q_support;
        for (std::size_t i = 1; i < 8; ++i)
            if (p_support[i] && coin(rng) == 1) p_support[i] = false;

        const auto q = random_measure(space, q_support, rng);
        const auto p = random_measure(space, p_support, rng);
        REQUIRE(is_absolutely_continuous(p, q));
        const auto density = radon_nikodym(p, q);

        for (std::uint64_t mask = 0; mask < 256; ++mask) {
            const auto event = EventSet::from_mask(space, mask);
            Rational sum(0);
            for (std::size_t i = 0; i < 8; ++i)
                if (event.contains(i)) sum += density[i] * q.mass(i);
            REQUIRE(sum == p.probability(event));
        }
    }
}

TEST_CASE("real-valued masses are clamped at the zero epsilon") {
    auto space = small_space(3);
    const auto p = FiniteMeasure::from_reals(space, {0.5, 0.5, 1e-15});
    CHECK(p.mass(2) == Rational(0));
    CHECK(p.mass(0) == Rational(1, 2));
    CHECK(p.support().count() == 2);

    const auto q = FiniteMeasure::from_reals(space, {0.25, 0.25, 0.5});
    CHECK(q.mass(2) == Rational(1, 2));
    Rational total(0);
    for (std::size_t i = 0; i < 3; ++i) total += q.mass(i);
    CHECK(total == Rational(1));
}

TEST_CASE("the singular resolution satisfies every certainty with no contradiction") {
    const auto res = build_singular_resolution();
    REQUIRE(res.measures.size() == 4);

    CHECK(res.plus_prob[0] == Rational(1));
    CHECK(res.plus_prob[1] == Rational(1));
    CHECK(res.plus_prob[2] == Rational(1));
    CHECK(res.minus_prob_4 == Rational(1));
    CHECK(res.sigma_plus_under_p4 == Rational(0));
    CHECK(res.pairwise_singular);

    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            if (i != j) CHECK(is_singular(res.measures[i], res.measures[j]).singular);
        }
    }

    // The induced tables still obey the pointwise identity.
    CHECK(pointwise_product_identity(res.tables, res.assignments).holds);
}
