#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

#include "freqlab/collectives.hpp"
#include "freqlab/combining.hpp"
#include "freqlab/ghz.hpp"
#include "freqlab/measures.hpp"
#include "freqlab/randomness.hpp"
#include "freqlab/scenarios.hpp"

namespace py = pybind11;

namespace {

using freqlab::Rational;
namespace fc = freqlab::collectives;
namespace fg = freqlab::ghz;
namespace fm = freqlab::measures;

fg::TripleState state_from(const std::vector<std::complex<double>>& amplitudes) {
    if (amplitudes.size() != 8) throw std::invalid_argument("state needs 8 amplitudes");
    fg::TripleState s;
    std::copy(amplitudes.begin(), amplitudes.end(), s.amplitudes.begin());
    return s;
}

fg::Setting setting_from(const std::tuple<double, double, double>& phases) {
    return fg::Setting{std::get<0>(phases), std::get<1>(phases), std::get<2>(phases)};
}

fc::Collective collective_from(const std::vector<std::string>& sequence) {
    std::vector<std::string> order;
    std::map<std::string, bool> seen;
    for (const auto& s : sequence) {
        if (!seen.count(s)) {
            seen[s] = true;
            order.push_back(s);
        }
    }
    return fc::Collective::from_symbols(fc::LabelSet(order), sequence);
}

fm::FiniteMeasure measure_from(fm::SpacePtr space, const std::vector<std::string>& masses) {
    std::vector<Rational> exact;
    exact.reserve(masses.size());
    for (const auto& m : masses) exact.push_back(Rational::parse(m));
    return fm::FiniteMeasure(std::move(space), std::move(exact));
}

fm::SpacePtr make_space(std::size_t n) {
    std::vector<std::string> atoms;
    atoms.reserve(n);
    for (std::size_t i = 0; i < n; ++i) atoms.push_back("w" + std::to_string(i + 1));
    return std::make_shared<const fm::HiddenSpace>(std::move(atoms));
}

std::vector<fg::Constraint> constraints_from(
    const std::vector<std::pair<std::string, int>>& specs) {
    std::vector<fg::Constraint> out;
    for (const auto& [pattern, sign] : specs) {
        if (pattern.size() != 3) throw std::invalid_argument("pattern needs 3 chars of x/y");
        fg::Constraint c;
        c.required_sign = sign;
        for (std::size_t q = 0; q < 3; ++q) {
            if (pattern[q] == 'y') {
                c.uses_y[q] = true;
            } else if (pattern[q] == 'x') {
                c.uses_y[q] = false;
            } else {
                throw std::invalid_argument("pattern chars must be 'x' or 'y'");
            }
        }
        out.push_back(c);
    }
    return out;
}

py::dict strategy_dict(const fg::LhvStrategy& w) {
    py::dict d;
    const char* names[6] = {"Ax", "Ay", "Bx", "By", "Cx", "Cy"};
    for (std::size_t k = 0; k < 6; ++k) d[names[k]] = w.v[k];
    return d;
}

}  // namespace

PYBIND11_MODULE(freqlab, m) {
    m.doc() = "Frequency-probability collectives and a GHZ laboratory";

    m.def("ghz_state", [] {
        const auto s = fg::TripleState::default_state();
        return std::vector<std::complex<double>>(s.amplitudes.begin(), s.amplitudes.end());
    });

    m.def(
        "correlation",
        [](const std::vector<std::complex<double>>& amplitudes,
           const std::tuple<double, double, double>& phases) {
            return fg::correlation(state_from(amplitudes), setting_from(phases));
        },
        py::arg("amplitudes"), py::arg("phases"));

    m.def(
        "outcome_distribution",
        [](const std::vector<std::complex<double>>& amplitudes,
           const std::tuple<double, double, double>& phases) {
            const auto probs = fg::outcome_distribution(state_from(amplitudes),
                                                        setting_from(phases));
            py::dict d;
            for (std::size_t i = 0; i < fg::kOutcomeCount; ++i)
                d[py::str(fg::outcome_label(i))] = probs[i];
            return d;
        },
        py::arg("amplitudes"), py::arg("phases"));

    m.def(
        "sample_outcomes",
        [](const std::vector<std::complex<double>>& amplitudes,
           const std::tuple<double, double, double>& phases, std::uint64_t n,
           std::uint64_t seed) {
            const auto c = fg::sample_setting_collective(state_from(amplitudes),
                                                         setting_from(phases), n, seed);
            std::vector<std::string> out;
            out.reserve(n);
            for (std::uint64_t i = 0; i < n; ++i) out.push_back(c.label_at(i));
            return out;
        },
        py::arg("amplitudes"), py::arg("phases"), py::arg("n"), py::arg("seed"));

    m.def("canonical_settings", [] {
        std::vector<std::tuple<double, double, double>> out;
        for (const auto& s : fg::canonical_settings()) out.emplace_back(s.phi1, s.phi2, s.phi3);
        return out;
    });

    m.def(
        "lhv_enumerate",
        [](const std::optional<std::vector<std::pair<std::string, int>>>& constraints) {
            const auto cs =
                constraints ? constraints_from(*constraints) : fg::canonical_constraints();
            const auto report = fg::lhv_enumerate(cs);
            py::dict d;
            d["satisfying_count"] = report.satisfying_count;
            d["total"] = report.total;
            d["max_satisfiable"] = report.max_satisfiable;
            if (report.witness) d["witness"] = strategy_dict(*report.witness);
            return d;
        },
        py::arg("constraints") = py::none());

    m.def(
        "joint_feasibility",
        [](const std::optional<std::vector<std::pair<std::string, int>>>& constraints) {
            const auto cs =
                constraints ? constraints_from(*constraints) : fg::canonical_constraints();
            const auto result = fg::joint_feasibility(cs);
            py::dict d;
            d["per_constraint_counts"] = result.per_constraint_counts;
            d["intersection_count"] = result.intersection_count;
            d["feasible"] = result.feasible;
            if (result.witness) d["witness"] = strategy_dict(*result.witness);
            return d;
        },
        py::arg("constraints") = py::none());

    m.def(
        "frequency_counts",
        [](const std::vector<std::string>& sequence) {
            const auto c = collective_from(sequence);
            const auto table = fc::frequency_table(c, c.size());
            py::dict d;
            for (fc::LabelIndex i = 0; i < c.labels().size(); ++i)
                d[py::str(c.labels().label(i))] = table.count(i);
            return d;
        },
        py::arg("sequence"));

    m.def(
        "relative_frequency",
        [](const std::vector<std::string>& sequence, const std::vector<std::string>& subset,
           std::uint64_t n) { return fc::relative_frequency(collective_from(sequence), subset, n); },
        py::arg("sequence"), py::arg("subset"), py::arg("n"));

    m.def(
        "stabilization_audit",
        [](const std::vector<std::string>& sequence, const std::vector<std::uint64_t>& checkpoints,
           double tolerance_coefficient) {
            const auto c = collective_from(sequence);
            fc::Schedule schedule{checkpoints};
            const auto verdict = fc::stabilization_audit(
                c, schedule, fc::inverse_sqrt_tolerance(tolerance_coefficient));
            py::dict d;
            d["stabilized"] = verdict.stabilized;
            if (verdict.stabilized) {
                py::dict probs;
                for (std::size_t i = 0; i < verdict.probabilities.size(); ++i)
                    probs[py::str(c.labels().label(static_cast<fc::LabelIndex>(i)))] =
                        verdict.probabilities[i];
                d["probabilities"] = probs;
            } else if (verdict.witness) {
                d["witness_label"] = c.labels().label(verdict.witness->label);
            }
            return d;
        },
        py::arg("sequence"), py::arg("checkpoints"), py::arg("tolerance_coefficient") = 5.0);

    m.def(
        "is_absolutely_continuous",
        [](const std::vector<std::string>& p, const std::vector<std::string>& q) {
            auto space = make_space(p.size());
            return fm::is_absolutely_continuous(measure_from(space, p), measure_from(space, q));
        },
        py::arg("p"), py::arg("q"));

    m.def(
        "is_equivalent",
        [](const std::vector<std::string>& p, const std::vector<std::string>& q) {
            auto space = make_space(p.size());
            return fm::is_equivalent(measure_from(space, p), measure_from(space, q));
        },
        py::arg("p"), py::arg("q"));

    m.def(
        "is_singular",
        [](const std::vector<std::string>& p, const std::vector<std::string>& q) {
            auto space = make_space(p.size());
            const auto result = fm::is_singular(measure_from(space, p), measure_from(space, q));
            py::dict d;
            d["singular"] = result.singular;
            d["witness"] = result.witness.atom_names();
            return d;
        },
        py::arg("p"), py::arg("q"));

    m.def(
        "radon_nikodym",
        [](const std::vector<std::string>& p, const std::vector<std::string>& q) {
            auto space = make_space(p.size());
            const auto density =
                fm::radon_nikodym(measure_from(space, p), measure_from(space, q));
            std::vector<std::string> out;
            out.reserve(density.size());
            for (const auto& f : density) out.push_back(f.to_string());
            return out;
        },
        py::arg("p"), py::arg("q"));

    m.def("singular_resolution", [] {
        const auto res = fm::build_singular_resolution();
        py::dict d;
        d["atoms"] = res.space->atoms();
        std::vector<std::string> plus;
        for (const auto& p : res.plus_prob) plus.push_back(p.to_string());
        d["own_plus_event_prob"] = plus;
        d["minus_event_prob_4"] = res.minus_prob_4.to_string();
        d["sigma_plus_under_p4"] = res.sigma_plus_under_p4.to_string();
        d["pairwise_singular"] = res.pairwise_singular;
        return d;
    });

    m.def(
        "run_scenario",
        [](const std::string& scenario, const std::map<std::string, std::string>& options) {
            freqlab::cli::ExperimentConfig config;
            config.scenario = scenario;
            for (const auto& [key, value] : options)
                freqlab::cli::apply_key_value(config, key, value);
            const auto report = freqlab::cli::run(config);
            py::dict d;
            d["json"] = report.to_json().dump(2);
            d["exit_code"] = freqlab::cli::exit_code(report);
            return d;
        },
        py::arg("scenario"), py::arg("options") = std::map<std::string, std::string>{});
}
