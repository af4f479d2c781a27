#include "freqlab/ghz.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "freqlab/rng.hpp"

namespace freqlab::ghz {

double TripleState::norm_squared() const {
    double sum = 0;
    for (const auto& a : amplitudes) sum += std::norm(a);
    return sum;
}

void TripleState::require_normalized(double eps) const {
    if (std::fabs(norm_squared() - 1.0) > eps)
        fail(Errc::NotNormalized, "state norm^2 = " + std::to_string(norm_squared()));
}

TripleState TripleState::default_state() {
    TripleState s;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    s.amplitudes[0] = Amplitude(inv_sqrt2, 0.0);
    s.amplitudes[7] = Amplitude(0.0, inv_sqrt2);
    return s;
}

TripleState TripleState::basis(unsigned b1, unsigned b2, unsigned b3) {
    TripleState s;
    s.amplitudes[(b1 << 2) | (b2 << 1) | b3] = Amplitude(1.0, 0.0);
    return s;
}

std::array<Setting, 4> canonical_settings() {
    const double h = std::numbers::pi / 2.0;
    return {Setting{h, 0, 0}, Setting{0, h, 0}, Setting{0, 0, h}, Setting{h, h, h}};
}

std::array<int, 4> canonical_signs() { return {+1, +1, +1, -1}; }

std::string outcome_label(std::size_t index) {
    std::string s(3, '+');
    for (std::size_t q = 0; q < 3; ++q) {
        if ((index >> (2 - q)) & 1u) s[q] = '-';
    }
    return s;
}

int outcome_product(std::size_t index) {
    return std::popcount(static_cast<unsigned>(index) & 7u) % 2 == 0 ? +1 : -1;
}

collectives::LabelSet outcome_label_set() {
    std::vector<std::string> labels;
    labels.reserve(kOutcomeCount);
    for (std::size_t i = 0; i < kOutcomeCount; ++i) labels.push_back(outcome_label(i));
    return collectives::LabelSet(std::move(labels));
}

namespace {

// Applies sigma(phi) to tensor factor q: |0> -> e^{i phi} |1>, |1> -> e^{-i phi} |0>.
std::array<Amplitude, 8> apply_phase_observable(const std::array<Amplitude, 8>& in, int qubit,
                                                double phi) {
    std::array<Amplitude, 8> out{};
    const Amplitude up(std::cos(phi), std::sin(phi));
    const Amplitude down = std::conj(up);
    const unsigned bit = 1u << (2 - qubit);
    for (unsigned i = 0; i < 8; ++i) {
        if (i & bit) {
            out[i & ~bit] += down * in[i];
        } else {
            out[i | bit] += up * in[i];
        }
    }
    return out;
}

}  // namespace

double correlation(const TripleState& state, const Setting& s) {
    state.require_normalized();
    auto v = apply_phase_observable(state.amplitudes, 0, s.phi1);
    v = apply_phase_observable(v, 1, s.phi2);
    v = apply_phase_observable(v, 2, s.phi3);
    Amplitude expectation(0, 0);
    for (unsigned i = 0; i < 8; ++i) expectation += std::conj(state.amplitudes[i]) * v[i];
    return expectation.real();
}

std::array<double, kOutcomeCount> outcome_distribution(const TripleState& state,
                                                       const Setting& s) {
    state.require_normalized();
    const std::array<double, 3> phis = {s.phi1, s.phi2, s.phi3};
    std::array<double, kOutcomeCount> probs{};
    const double inv_sqrt8 = 1.0 / std::sqrt(8.0);
    for (std::size_t outcome = 0; outcome < kOutcomeCount; ++outcome) {
        // <e_{s1} e_{s2} e_{s3} | psi> with |e_s> = (|0> + s e^{i phi} |1>)/sqrt(2)
        Amplitude proj(0, 0);
        for (unsigned i = 0; i < 8; ++i) {
            Amplitude weight(1.0, 0.0);
            for (unsigned q = 0; q < 3; ++q) {
                const bool basis_one = (i >> (2 - q)) & 1u;
                if (basis_one) {
                    const double sign = ((outcome >> (2 - q)) & 1u) ? -1.0 : 1.0;
                    weight *= sign * Amplitude(std::cos(phis[q]), -std::sin(phis[q]));
                }
            }
            proj += weight * state.amplitudes[i];
        }
        probs[outcome] = std::norm(proj * inv_sqrt8);
    }
    return probs;
}

collectives::Collective sample_setting_collective(const TripleState& state, const Setting& s,
                                                  std::uint64_t n, std::uint64_t seed) {
    const auto probs = outcome_distribution(state, s);
    std::array<double, kOutcomeCount> cumulative{};
    double acc = 0;
    for (std::size_t i = 0; i < kOutcomeCount; ++i) {
        acc += probs[i];
        cumulative[i] = acc;
    }
    cumulative[kOutcomeCount - 1] = 1.0;

    auto gen = [cumulative](std::uint64_t sd, std::uint64_t index) -> collectives::LabelIndex {
        const double u = stream_uniform(sd, index);
        std::size_t k = 0;
        while (k + 1 < kOutcomeCount && u >= cumulative[k]) ++k;
        return static_cast<collectives::LabelIndex>(k);
    };
    return collectives::Collective(outcome_label_set(), std::move(gen), seed, n);
}

Constraint Constraint::from_setting(const Setting& s, int required_sign) {
    Constraint c;
    c.required_sign = required_sign;
    const std::array<double, 3> phis = {s.phi1, s.phi2, s.phi3};
    const double h = std::numbers::pi / 2.0;
    for (std::size_t q = 0; q < 3; ++q) {
        if (std::fabs(phis[q]) < 1e-9) {
            c.uses_y[q] = false;
        } else if (std::fabs(phis[q] - h) < 1e-9) {
            c.uses_y[q] = true;
        } else {
            fail(Errc::BadConfig, "constraint phases must be 0 or pi/2");
        }
    }
    if (required_sign != 1 && required_sign != -1) fail(Errc::BadConfig, "sign must be +-1");
    return c;
}

int Constraint::evaluate(const LhvStrategy& w) const {
    const int a = uses_y[0] ? w.ay() : w.ax();
    const int b = uses_y[1] ? w.by() : w.bx();
    const int c = uses_y[2] ? w.cy() : w.cx();
    return a * b * c;
}

std::vector<Constraint> canonical_constraints() {
    const auto settings = canonical_settings();
    const auto signs = canonical_signs();
    std::vector<Constraint> out;
    out.reserve(4);
    for (std::size_t i = 0; i < 4; ++i)
        out.push_back(Constraint::from_setting(settings[i], signs[i]));
    return out;
}

FeasibilityReport lhv_enumerate(const std::vector<Constraint>& constraints) {
    FeasibilityReport report;
    report.total = 64;
    for (unsigned bits = 0; bits < 64; ++bits) {
        const LhvStrategy w = LhvStrategy::from_bits(bits);
        std::uint64_t met = 0;
        for (const auto& c : constraints) met += c.satisfied_by(w) ? 1 : 0;
        if (met == constraints.size()) ++report.satisfying_count;
        if (met > report.max_satisfiable || !report.witness) {
            report.max_satisfiable = met;
            report.witness = w;
        }
    }
    return report;
}

JointFeasibility joint_feasibility(const std::vector<Constraint>& constraints) {
    JointFeasibility result;
    result.per_constraint_counts.assign(constraints.size(), 0);
    for (unsigned bits = 0; bits < 64; ++bits) {
        const LhvStrategy w = LhvStrategy::from_bits(bits);
        bool all = true;
        for (std::size_t k = 0; k < constraints.size(); ++k) {
            if (constraints[k].satisfied_by(w)) {
                ++result.per_constraint_counts[k];
            } else {
                all = false;
            }
        }
        if (all) {
            ++result.intersection_count;
            if (!result.witness) result.witness = w;
        }
    }
    result.feasible = result.intersection_count > 0;
    return result;
}

GedankenReport gedanken_audit(const TripleState& state, std::uint64_t n, std::uint64_t seed) {
    GedankenReport report;
    const auto settings = canonical_settings();

    report.empirical_certainties_hold = true;
    for (std::size_t k = 0; k < settings.size(); ++k) {
        SettingRun run;
        run.setting = settings[k];
        const auto probs = outcome_distribution(state, settings[k]);
        double plus_mass = 0, minus_mass = 0;
        for (std::size_t i = 0; i < kOutcomeCount; ++i)
            (outcome_product(i) == 1 ? plus_mass : minus_mass) += probs[i];
        if (minus_mass < 1e-12) {
            run.certified_sign = +1;
            run.wrong_parity_mass = minus_mass;
        } else if (plus_mass < 1e-12) {
            run.certified_sign = -1;
            run.wrong_parity_mass = plus_mass;
        }

        run.draws = n;
        run.outcome_counts.assign(kOutcomeCount, 0);
        if (n > 0) {
            const auto sample =
                sample_setting_collective(state, settings[k], n, derive_seed(seed, k));
            const auto table = collectives::frequency_table(sample, n);
            double mean = 0;
            for (std::size_t i = 0; i < kOutcomeCount; ++i) {
                run.outcome_counts[i] = table.count(static_cast<collectives::LabelIndex>(i));
                mean += static_cast<double>(run.outcome_counts[i]) * outcome_product(i);
                if (run.certified_sign && outcome_product(i) == *run.certified_sign)
                    run.matching_products += run.outcome_counts[i];
            }
            run.empirical_product_mean = mean / static_cast<double>(n);
            if (run.certified_sign && run.matching_products != n)
                report.empirical_certainties_hold = false;
        }
        report.runs.push_back(std::move(run));
    }

    for (std::size_t k = 0; k < settings.size(); ++k) {
        if (report.runs[k].certified_sign)
            report.constraints.push_back(
                Constraint::from_setting(settings[k], *report.runs[k].certified_sign));
    }
    if (!report.constraints.empty()) {
        report.certificate = joint_feasibility(report.constraints);
        report.single_sequence_possible = report.certificate->feasible;
    }
    return report;
}

}  // namespace freqlab::ghz
