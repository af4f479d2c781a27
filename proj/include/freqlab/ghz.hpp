#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "freqlab/collectives.hpp"
#include "freqlab/measures.hpp"

namespace freqlab::ghz {

using Amplitude = std::complex<double>;

// Three-qubit state, amplitudes indexed by basis triples (b1, b2, b3) as
// index = 4 b1 + 2 b2 + b3.
struct TripleState {
    std::array<Amplitude, 8> amplitudes{};

    double norm_squared() const;
    void require_normalized(double eps = 1e-12) const;

    // (|000> + i |111>) / sqrt(2): the product of the three phase-shift
    // observables has expectation sin(phi1 + phi2 + phi3).
    static TripleState default_state();
    static TripleState basis(unsigned b1, unsigned b2, unsigned b3);
};

// Phase-shift triple for the three stations.
struct Setting {
    double phi1 = 0, phi2 = 0, phi3 = 0;

    double sum() const { return phi1 + phi2 + phi3; }
};

// The four canonical settings and their certain product signs (+1,+1,+1,-1).
std::array<Setting, 4> canonical_settings();
std::array<int, 4> canonical_signs();

// Outcomes are +-1 triples, ordered by index = 4 b1 + 2 b2 + b3 with
// b = 0 meaning +1; labels are strings like "+-+".
constexpr std::size_t kOutcomeCount = 8;
std::string outcome_label(std::size_t index);
int outcome_product(std::size_t index);
collectives::LabelSet outcome_label_set();

// Expectation of the product observable sigma(phi1) x sigma(phi2) x sigma(phi3),
// where sigma(phi) has +-1 eigenvalues with eigenvectors |0> + s e^{i phi} |1>.
double correlation(const TripleState& state, const Setting& s);

// Born probabilities of the eight outcome triples.
std::array<double, kOutcomeCount> outcome_distribution(const TripleState& state, const Setting& s);

// i.i.d. draws from the outcome distribution via inverse CDF over the fixed
// outcome ordering; bit-exact reproducible per (seed, index).
collectives::Collective sample_setting_collective(const TripleState& state, const Setting& s,
                                                  std::uint64_t n, std::uint64_t seed);

using LhvStrategy = measures::PhotonValues;

// A product constraint: which stations read their y-type value, and the
// required sign of the three-outcome product.
struct Constraint {
    std::array<bool, 3> uses_y{false, false, false};
    int required_sign = 1;

    // Phases must be 0 or pi/2 (within 1e-9) to define a pattern.
    static Constraint from_setting(const Setting& s, int required_sign);
    int evaluate(const LhvStrategy& w) const;  // the product under w
    bool satisfied_by(const LhvStrategy& w) const { return evaluate(w) == required_sign; }
};

std::vector<Constraint> canonical_constraints();

struct FeasibilityReport {
    std::uint64_t satisfying_count = 0;
    std::uint64_t total = 0;
    std::uint64_t max_satisfiable = 0;  // over strategies, count of met constraints
    std::optional<LhvStrategy> witness; // attains max_satisfiable
};

// Exhaustive search over the 64 deterministic strategies.
FeasibilityReport lhv_enumerate(const std::vector<Constraint>& constraints);

struct JointFeasibility {
    std::vector<std::uint64_t> per_constraint_counts;
    std::uint64_t intersection_count = 0;
    bool feasible = false;              // some strategy satisfies all constraints
    std::optional<LhvStrategy> witness; // a point-mass distribution meeting all
};

// A single distribution over strategies meets all probability-one product
// constraints iff their satisfying sets intersect.
JointFeasibility joint_feasibility(const std::vector<Constraint>& constraints);

struct SettingRun {
    Setting setting;
    std::optional<int> certified_sign;  // sign with all Born mass, if any
    double wrong_parity_mass = 0.0;
    std::uint64_t draws = 0;
    std::uint64_t matching_products = 0;  // draws whose product equals the certified sign
    double empirical_product_mean = 0.0;
    std::vector<std::uint64_t> outcome_counts;  // per outcome index
};

struct GedankenReport {
    std::vector<SettingRun> runs;
    std::vector<Constraint> constraints;  // from certified settings only
    std::optional<JointFeasibility> certificate;
    bool empirical_certainties_hold = false;
    bool single_sequence_possible = true;  // false when the certificate is infeasible
};

// Samples the four canonical per-setting collectives, verifies each certified
// product sign empirically, and certifies whether one master outcome sequence
// could carry all four statistics at once.
GedankenReport gedanken_audit(const TripleState& state, std::uint64_t n, std::uint64_t seed);

}  // namespace freqlab::ghz
