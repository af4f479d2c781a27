#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "freqlab/error.hpp"
#include "freqlab/rational.hpp"

namespace freqlab::measures {

// Finite ordered set of hidden-variable configurations.
class HiddenSpace {
public:
    explicit HiddenSpace(std::vector<std::string> atoms);

    std::size_t size() const { return atoms_.size(); }
    const std::string& atom(std::size_t i) const { return atoms_.at(i); }
    const std::vector<std::string>& atoms() const { return atoms_; }
    std::size_t index_of(const std::string& name) const;

    friend bool operator==(const HiddenSpace& a, const HiddenSpace& b) {
        return a.atoms_ == b.atoms_;
    }

private:
    std::vector<std::string> atoms_;
};

using SpacePtr = std::shared_ptr<const HiddenSpace>;

class EventSet {
public:
    explicit EventSet(SpacePtr space) : space_(std::move(space)), member_(space_->size(), false) {}

    static EventSet full(SpacePtr space);
    static EventSet from_mask(SpacePtr space, std::uint64_t mask);  // spaces up to 64 atoms

    const HiddenSpace& space() const { return *space_; }
    const SpacePtr& space_ptr() const { return space_; }

    void add(std::size_t atom_index) { member_.at(atom_index) = true; }
    bool contains(std::size_t atom_index) const { return member_.at(atom_index); }
    std::size_t count() const;
    bool empty() const { return count() == 0; }

    EventSet complement() const;
    EventSet intersect(const EventSet& other) const;
    EventSet unite(const EventSet& other) const;
    bool subset_of(const EventSet& other) const;
    std::vector<std::string> atom_names() const;

    friend bool operator==(const EventSet& a, const EventSet& b) {
        return *a.space_ == *b.space_ && a.member_ == b.member_;
    }

private:
    void require_same_space(const EventSet& other) const;

    SpacePtr space_;
    std::vector<bool> member_;
};

// Probability table over a finite hidden-variable space; masses are exact
// rationals so support comparisons and density reconstructions are exact.
class FiniteMeasure {
public:
    FiniteMeasure(SpacePtr space, std::vector<Rational> mass);

    static FiniteMeasure uniform(SpacePtr space);
    static FiniteMeasure point_mass(SpacePtr space, std::size_t atom_index);
    // Values below `zero_epsilon` are treated as exact zeros, the rest are
    // converted exactly and renormalized to total mass one.
    static FiniteMeasure from_reals(SpacePtr space, const std::vector<double>& mass,
                                    double zero_epsilon = 1e-12);

    const HiddenSpace& space() const { return *space_; }
    const SpacePtr& space_ptr() const { return space_; }
    const Rational& mass(std::size_t atom_index) const { return mass_.at(atom_index); }
    const std::vector<Rational>& masses() const { return mass_; }

    EventSet support() const;
    Rational probability(const EventSet& event) const;

private:
    SpacePtr space_;
    std::vector<Rational> mass_;
};

Rational event_probability(const FiniteMeasure& p, const EventSet& event);

// Finite-space criteria: support inclusion / equality / disjointness.
bool is_absolutely_continuous(const FiniteMeasure& p, const FiniteMeasure& q);
bool is_equivalent(const FiniteMeasure& p, const FiniteMeasure& q);

struct SingularityResult {
    bool singular = false;
    EventSet witness;  // support of q: full mass for q, zero for p when singular
};
SingularityResult is_singular(const FiniteMeasure& p, const FiniteMeasure& q);

// Density f with p(E) = sum_{w in E} f(w) q(w), exact; requires p << q.
std::vector<Rational> radon_nikodym(const FiniteMeasure& p, const FiniteMeasure& q);

// Per-atom values of the three +-1 observables under one of the four settings.
struct ObservableTable {
    int setting_id = 0;  // 1..4
    std::vector<std::array<int, 3>> values;

    void validate(const HiddenSpace& space) const;
};

EventSet product_event(SpacePtr space, const ObservableTable& table, int sign);

// Deterministic +-1 values for the six counterfactual photon-setting pairs,
// in the order Ax, Ay, Bx, By, Cx, Cy.
struct PhotonValues {
    std::array<int, 6> v{1, 1, 1, 1, 1, 1};

    int ax() const { return v[0]; }
    int ay() const { return v[1]; }
    int bx() const { return v[2]; }
    int by() const { return v[3]; }
    int cx() const { return v[4]; }
    int cy() const { return v[5]; }

    std::string name() const;  // e.g. "+-++-+"
    static PhotonValues from_bits(unsigned bits);  // bit k set -> v[k] = -1
    friend bool operator==(const PhotonValues&, const PhotonValues&) = default;
};

// Which observables each canonical setting reads: settings 1..3 use one
// y-type and two x-type values, setting 4 uses three y-type values.
std::array<int, 3> setting_values(const PhotonValues& w, int setting_id);

std::vector<PhotonValues> all_strategies();  // the 64 assignments

// The 64-atom space of deterministic strategies with its induced tables.
struct StrategyScheme {
    SpacePtr space;
    std::vector<PhotonValues> assignments;
    std::array<ObservableTable, 4> tables;
};
StrategyScheme make_strategy_scheme();

std::array<ObservableTable, 4> induced_tables(const std::vector<PhotonValues>& assignments);

struct IdentityReport {
    bool holds = false;
    std::vector<std::size_t> violations;  // atom indices; provably empty
    std::size_t atoms_checked = 0;
};

// Verifies, atom by atom, that the product of the first three setting
// products equals the fourth (a +-1 arithmetic identity), hence that the
// joint satisfying event for settings 1..3 lies inside setting 4's +1 event.
IdentityReport pointwise_product_identity(const std::vector<PhotonValues>& assignments);

// Same check against externally supplied tables; they must be consistent
// with the shared per-photon values (StructureViolation otherwise).
IdentityReport pointwise_product_identity(const std::array<ObservableTable, 4>& tables,
                                          const std::vector<PhotonValues>& assignments);

struct ContradictionReport {
    std::array<Rational, 3> plus_event_prob;  // P(setting-i product = +1), i = 1..3
    Rational minus_event_prob_4;              // P(setting-4 product = -1)
    Rational sigma_plus_prob;                 // P(joint +1 event of settings 1..3)
    bool first_three_certain = false;         // all three probabilities equal 1
    bool fourth_certain = false;              // minus event has probability 1
    bool satisfied_by_measure = false;        // both at once (never attainable)
    bool sigma_inside_plus_4 = true;          // pointwise inclusion, checked
    bool jointly_satisfiable = false;         // certificate: false for every measure
};

// Evaluates the probability-one constraint set under a single measure and
// certifies that no measure can satisfy it: the joint +1 event of the first
// three settings is disjoint from setting 4's -1 event.
ContradictionReport kolmogorov_contradiction(const FiniteMeasure& p,
                                             const std::array<ObservableTable, 4>& tables,
                                             const std::vector<PhotonValues>& assignments);

// A concrete four-atom space and four pairwise-singular point measures for
// which every per-setting certainty holds with no contradiction.
struct SingularResolution {
    SpacePtr space;
    std::vector<PhotonValues> assignments;
    std::array<ObservableTable, 4> tables;
    std::vector<FiniteMeasure> measures;  // P1..P4

    std::array<Rational, 3> plus_prob;  // P_i(setting-i product = +1)
    Rational minus_prob_4;              // P4(setting-4 product = -1)
    Rational sigma_plus_under_p4;       // P4(joint +1 event) = 0
    bool pairwise_singular = false;
};
SingularResolution build_singular_resolution();

}  // namespace freqlab::measures
