#include "freqlab/scenarios.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "freqlab/collectives.hpp"
#include "freqlab/combining.hpp"
#include "freqlab/ghz.hpp"
#include "freqlab/io.hpp"
#include "freqlab/measures.hpp"
#include "freqlab/randomness.hpp"
#include "freqlab/rng.hpp"

namespace freqlab::cli {

namespace {

using collectives::Collective;
using collectives::LabelSet;
using collectives::Schedule;
using collectives::StabilizationVerdict;

Schedule make_schedule(const ExperimentConfig& c) {
    return Schedule::geometric(c.schedule_start, c.schedule_ratio, c.schedule_steps);
}

Json verdict_to_json(const LabelSet& labels, const StabilizationVerdict& v) {
    Json j;
    j["stabilized"] = v.stabilized;
    Json checkpoints = Json::array();
    for (const auto& cp : v.checkpoints) {
        Json entry;
        entry["n"] = cp.n;
        Json freqs;
        for (std::size_t i = 0; i < cp.frequencies.size(); ++i)
            freqs[labels.label(static_cast<collectives::LabelIndex>(i))] = cp.frequencies[i];
        entry["frequencies"] = freqs;
        checkpoints.push_back(entry);
    }
    j["checkpoints"] = checkpoints;
    if (v.stabilized) {
        Json probs;
        for (std::size_t i = 0; i < v.probabilities.size(); ++i)
            probs[labels.label(static_cast<collectives::LabelIndex>(i))] = v.probabilities[i];
        j["probabilities"] = probs;
    } else if (v.witness) {
        Json w;
        w["label"] = labels.label(v.witness->label);
        w["n_before"] = v.witness->n_before;
        w["n_after"] = v.witness->n_after;
        w["freq_before"] = v.witness->freq_before;
        w["freq_after"] = v.witness->freq_after;
        w["tolerance"] = v.witness->tolerance;
        j["witness"] = w;
    }
    return j;
}

Collective build_source(const ExperimentConfig& config, std::uint64_t length) {
    const LabelSet labels(config.labels);
    if (config.source == "iid") {
        if (config.labels.size() == 2) {
            return collectives::make_iid(
                labels, {config.first_label_prob, 1.0 - config.first_label_prob}, length,
                config.seed);
        }
        return collectives::make_uniform_iid(labels, length, config.seed);
    }
    if (config.source == "oscillating") {
        const LabelSet pair_labels({config.labels[0], config.labels[1]});
        return collectives::make_oscillating(pair_labels, config.block_ratio, length);
    }
    return collectives::make_periodic(labels, config.labels, length);
}

randomness::PlaceSelection parse_selection(const LabelSet& labels, const std::string& text) {
    std::stringstream ss(text);
    std::string kind;
    ss >> kind;
    std::map<std::string, std::string> kv;
    std::string token;
    while (ss >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos)
            fail(Errc::BadConfig, "key 'selection': expected name=value, got '" + token + "'");
        kv[token.substr(0, eq)] = token.substr(eq + 1);
    }
    auto need = [&](const char* name) -> std::string {
        auto it = kv.find(name);
        if (it == kv.end())
            fail(Errc::BadConfig, std::string("key 'selection': missing '") + name + "'");
        return it->second;
    };
    if (kind == "arithmetic")
        return randomness::PlaceSelection::arithmetic(std::stoull(need("step")),
                                                      std::stoull(need("offset")));
    if (kind == "after_word") return randomness::PlaceSelection::after_word(labels, {need("word")});
    if (kind == "skip_first") return randomness::PlaceSelection::skip_first(std::stoull(need("n")));
    fail(Errc::BadConfig, "key 'selection': unknown kind '" + kind + "'");
}

std::vector<randomness::PlaceSelection> build_family(const ExperimentConfig& config,
                                                     const LabelSet& labels) {
    std::vector<randomness::PlaceSelection> family;
    if (config.selections.empty()) {
        family.push_back(randomness::PlaceSelection::arithmetic(2, 1));
        family.push_back(randomness::PlaceSelection::arithmetic(2, 2));
        family.push_back(randomness::PlaceSelection::after_word(labels, {labels.label(0)}));
        family.push_back(randomness::PlaceSelection::skip_first(100));
        return family;
    }
    for (const auto& text : config.selections) family.push_back(parse_selection(labels, text));
    return family;
}

void export_sequence(const ExperimentConfig& config, const Collective& c) {
    if (config.sequence_out.empty()) return;
    std::ofstream out(config.sequence_out);
    if (!out) fail(Errc::BadConfig, "key 'sequence_out': cannot open '" + config.sequence_out + "'");
    io::write_sequence(out, c);
}

Json scenario_stabilize(const ExperimentConfig& config, bool& expectation_met, Json& csv) {
    const Schedule schedule = make_schedule(config);
    const auto tolerance = collectives::inverse_sqrt_tolerance(config.tolerance_coefficient);
    const Collective c = build_source(config, schedule.final_checkpoint());
    export_sequence(config, c);
    const auto verdict = collectives::stabilization_audit(c, schedule, tolerance);

    const bool expect_stabilized = config.source != "oscillating";
    expectation_met = verdict.stabilized == expect_stabilized;

    Json result;
    result["source"] = config.source;
    result["expected_stabilized"] = expect_stabilized;
    result["verdict"] = verdict_to_json(c.labels(), verdict);

    const auto table = collectives::frequency_table(c, schedule.final_checkpoint());
    csv = Json::array();
    csv.push_back(Json::array({"label", "count", "frequency"}));
    for (collectives::LabelIndex i = 0; i < c.labels().size(); ++i)
        csv.push_back(Json::array(
            {c.labels().label(i), table.count(i), table.frequency(i)}));
    return result;
}

Json scenario_randomness(const ExperimentConfig& config, bool& expectation_met, Json&) {
    const Schedule schedule = make_schedule(config);
    const auto tolerance = collectives::inverse_sqrt_tolerance(config.tolerance_coefficient);
    const Collective c = build_source(config, schedule.final_checkpoint());
    const auto family = build_family(config, c.labels());

    randomness::RandomnessOptions options;
    options.min_selected = config.min_selected;
    options.schedule_ratio = config.schedule_ratio;
    options.schedule_steps = config.schedule_steps;
    const auto verdict = randomness::randomness_audit(c, family, schedule, tolerance, options);

    const bool expect_pass = config.source != "periodic";
    expectation_met = verdict.pass == expect_pass;

    Json result;
    result["source"] = config.source;
    result["expected_pass"] = expect_pass;
    result["pass"] = verdict.pass;
    result["mother"] = verdict_to_json(c.labels(), verdict.mother);
    Json selections = Json::array();
    for (const auto& rep : verdict.per_selection) {
        Json r;
        r["name"] = rep.name;
        r["selected_length"] = rep.selected_length;
        r["empty_selection"] = rep.empty_selection;
        r["sufficient"] = rep.sufficient;
        if (rep.verdict) {
            r["stabilized"] = rep.verdict->stabilized;
            r["max_deviation"] = rep.max_deviation;
            r["deviant"] = rep.deviant;
        }
        selections.push_back(r);
    }
    result["selections"] = selections;
    return result;
}

Json scenario_combine(const ExperimentConfig& config, bool& expectation_met, Json& csv) {
    const auto tolerance = collectives::inverse_sqrt_tolerance(config.tolerance_coefficient);
    const Collective x = collectives::make_uniform_iid(LabelSet({"a", "b"}), config.n,
                                                       derive_seed(config.seed, 1));
    const Collective y = collectives::make_uniform_iid(LabelSet({"u", "v"}), config.n,
                                                       derive_seed(config.seed, 2));
    const auto z = combining::pair_collectives(x, y);
    const Schedule schedule =
        Schedule::geometric_to(config.n, config.schedule_ratio, config.schedule_steps);

    combining::CombiningOptions options;
    options.min_occurrences = config.min_selected;
    options.schedule_ratio = config.schedule_ratio;
    options.schedule_steps = config.schedule_steps;
    const auto independence = combining::independence_audit(z, schedule, tolerance, options);
    const auto& comb = independence.combinability;

    // Exact finite identity n(a,b)/N = (n(a,b)/n(a)) (n(a)/N) over every prefix.
    const std::uint64_t identity_limit = std::min<std::uint64_t>(config.n, 10000);
    bool identity_ok = true;
    {
        std::vector<std::uint64_t> xc(2, 0);
        std::vector<std::uint64_t> jc(4, 0);
        for (std::uint64_t i = 0; i < identity_limit && identity_ok; ++i) {
            const auto& [a, b] = z.pairs()[i];
            ++xc[a];
            ++jc[a * 2 + b];
            const auto n = static_cast<std::int64_t>(i + 1);
            for (collectives::LabelIndex la = 0; la < 2 && identity_ok; ++la) {
                if (xc[la] == 0) continue;
                for (collectives::LabelIndex lb = 0; lb < 2; ++lb) {
                    const Rational joint(static_cast<std::int64_t>(jc[la * 2 + lb]), n);
                    const Rational cond(static_cast<std::int64_t>(jc[la * 2 + lb]),
                                        static_cast<std::int64_t>(xc[la]));
                    const Rational marginal(static_cast<std::int64_t>(xc[la]), n);
                    if (joint != cond * marginal) {
                        identity_ok = false;
                        break;
                    }
                }
            }
        }
    }

    // Factorization against the y marginal.
    const combining::JointCounts counts(z, config.n);
    const auto y_table = collectives::frequency_table(y, config.n);
    double max_factor_dev = 0;
    for (collectives::LabelIndex a = 0; a < 2; ++a) {
        for (collectives::LabelIndex b = 0; b < 2; ++b) {
            const double joint = counts.joint_exact(a, b).to_double();
            const double product = counts.marginal_x_exact(a).to_double() * y_table.frequency(b);
            max_factor_dev = std::max(max_factor_dev, std::fabs(joint - product));
        }
    }

    const bool combinable = comb.status == combining::Combinability::Combinable;
    const bool independent = independence.status == combining::Independence::Independent;
    const bool factorizes = max_factor_dev <= tolerance(config.n);
    expectation_met = combinable && independent && identity_ok && factorizes;

    Json result;
    result["combinable"] = combinable;
    result["independent"] = independent;
    result["max_conditional_deviation"] = independence.max_deviation;
    result["max_product_rule_deviation"] = comb.max_product_deviation;
    result["max_factorization_deviation"] = max_factor_dev;
    result["exact_identity_checked_to"] = identity_limit;
    result["exact_identity_holds"] = identity_ok;
    Json joint = Json::array();
    for (collectives::LabelIndex a = 0; a < 2; ++a) {
        for (collectives::LabelIndex b = 0; b < 2; ++b) {
            Json row;
            row["a"] = z.x_labels().label(a);
            row["b"] = z.y_labels().label(b);
            row["count"] = counts.pair_count(a, b);
            row["p"] = counts.joint_exact(a, b).to_double();
            joint.push_back(row);
        }
    }
    result["joint"] = joint;

    csv = Json::array();
    csv.push_back(Json::array({"a", "b", "count", "p"}));
    for (const auto& row : joint)
        csv.push_back(Json::array({row["a"], row["b"], row["count"], row["p"]}));
    return result;
}

Json scenario_ghz_sample(const ExperimentConfig& config, bool& expectation_met, Json& csv) {
    const auto phases = parse_phases(config.setting);
    const ghz::Setting setting{phases[0], phases[1], phases[2]};
    const auto state = ghz::TripleState::default_state();

    const double expected_correlation = ghz::correlation(state, setting);
    const auto born = ghz::outcome_distribution(state, setting);
    const auto sample = ghz::sample_setting_collective(state, setting, config.n, config.seed);
    export_sequence(config, sample);
    const auto table = collectives::frequency_table(sample, config.n);

    double plus_mass = 0, minus_mass = 0;
    for (std::size_t i = 0; i < ghz::kOutcomeCount; ++i)
        (ghz::outcome_product(i) == 1 ? plus_mass : minus_mass) += born[i];
    std::optional<int> certified;
    if (minus_mass < 1e-12) certified = +1;
    if (plus_mass < 1e-12) certified = -1;

    double empirical_mean = 0, max_abs_dev = 0;
    std::uint64_t matching = 0;
    for (std::size_t i = 0; i < ghz::kOutcomeCount; ++i) {
        const auto idx = static_cast<collectives::LabelIndex>(i);
        const double freq = table.frequency(idx);
        empirical_mean += freq * ghz::outcome_product(i);
        max_abs_dev = std::max(max_abs_dev, std::fabs(freq - born[i]));
        if (certified && ghz::outcome_product(i) == *certified) matching += table.count(idx);
    }

    const double tau = config.tolerance_coefficient / std::sqrt(static_cast<double>(config.n));
    const bool parities_hold = !certified || matching == config.n;
    expectation_met = parities_hold && max_abs_dev <= tau &&
                      std::fabs(empirical_mean - expected_correlation) <= tau;

    Json result;
    result["setting"] = Json::array({setting.phi1, setting.phi2, setting.phi3});
    result["correlation"] = expected_correlation;
    result["empirical_product_mean"] = empirical_mean;
    if (certified) {
        result["certified_sign"] = *certified;
        result["matching_products"] = matching;
    }
    result["max_outcome_deviation"] = max_abs_dev;
    result["tolerance"] = tau;

    csv = Json::array();
    csv.push_back(Json::array({"outcome", "count", "frequency", "born_p"}));
    Json outcomes = Json::array();
    for (std::size_t i = 0; i < ghz::kOutcomeCount; ++i) {
        const auto idx = static_cast<collectives::LabelIndex>(i);
        Json row;
        row["outcome"] = ghz::outcome_label(i);
        row["count"] = table.count(idx);
        row["frequency"] = table.frequency(idx);
        row["born_p"] = born[i];
        outcomes.push_back(row);
        csv.push_back(
            Json::array({row["outcome"], row["count"], row["frequency"], row["born_p"]}));
    }
    result["outcomes"] = outcomes;
    return result;
}

Json strategy_to_json(const ghz::LhvStrategy& w) {
    Json j;
    const char* names[6] = {"Ax", "Ay", "Bx", "By", "Cx", "Cy"};
    for (std::size_t k = 0; k < 6; ++k) j[names[k]] = w.v[k];
    return j;
}

Json scenario_lhv(const ExperimentConfig&, bool& expectation_met, Json&) {
    const auto constraints = ghz::canonical_constraints();
    const auto report = ghz::lhv_enumerate(constraints);

    std::uint64_t witness_met = 0;
    if (report.witness) {
        for (const auto& c : constraints) witness_met += c.satisfied_by(*report.witness) ? 1 : 0;
    }
    expectation_met = report.satisfying_count == 0 && report.max_satisfiable == 3 &&
                      report.witness && witness_met == 3;

    Json result;
    result["satisfying_count"] = report.satisfying_count;
    result["total"] = report.total;
    result["max_satisfiable"] = report.max_satisfiable;
    if (report.witness) result["witness"] = strategy_to_json(*report.witness);
    result["witness_satisfies"] = witness_met;
    return result;
}

Json contradiction_to_json(const measures::ContradictionReport& report) {
    Json j;
    Json plus = Json::array();
    for (const auto& p : report.plus_event_prob) plus.push_back(p.to_string());
    j["plus_event_prob"] = plus;
    j["minus_event_prob_4"] = report.minus_event_prob_4.to_string();
    j["sigma_plus_prob"] = report.sigma_plus_prob.to_string();
    j["first_three_certain"] = report.first_three_certain;
    j["fourth_certain"] = report.fourth_certain;
    j["satisfied_by_measure"] = report.satisfied_by_measure;
    j["sigma_inside_plus_4"] = report.sigma_inside_plus_4;
    j["jointly_satisfiable"] = report.jointly_satisfiable;
    return j;
}

Json resolution_to_json(const measures::SingularResolution& res) {
    Json j;
    j["atoms"] = res.space->atoms();
    Json plus = Json::array();
    for (const auto& p : res.plus_prob) plus.push_back(p.to_string());
    j["own_plus_event_prob"] = plus;
    j["minus_event_prob_4"] = res.minus_prob_4.to_string();
    j["sigma_plus_under_p4"] = res.sigma_plus_under_p4.to_string();
    j["pairwise_singular"] = res.pairwise_singular;
    return j;
}

bool resolution_exact(const measures::SingularResolution& res) {
    return res.pairwise_singular && res.plus_prob[0] == Rational(1) &&
           res.plus_prob[1] == Rational(1) && res.plus_prob[2] == Rational(1) &&
           res.minus_prob_4 == Rational(1) && res.sigma_plus_under_p4 == Rational(0);
}

Json scenario_paradox(const ExperimentConfig&, bool& expectation_met, Json&) {
    const auto scheme = measures::make_strategy_scheme();

    // Under the uniform measure every product event has probability 1/2.
    const auto uniform = measures::FiniteMeasure::uniform(scheme.space);
    const auto uniform_report =
        measures::kolmogorov_contradiction(uniform, scheme.tables, scheme.assignments);

    // A point mass meeting the first three certainties: the fourth then fails.
    const auto all_plus = measures::FiniteMeasure::point_mass(scheme.space, 0);
    const auto certain_report =
        measures::kolmogorov_contradiction(all_plus, scheme.tables, scheme.assignments);

    const auto resolution = measures::build_singular_resolution();

    const bool contradiction_certified =
        !uniform_report.jointly_satisfiable && !certain_report.jointly_satisfiable &&
        certain_report.first_three_certain && certain_report.sigma_plus_prob == Rational(1) &&
        certain_report.minus_event_prob_4 == Rational(0);
    const bool resolution_ok = resolution_exact(resolution);
    expectation_met = contradiction_certified && resolution_ok;

    Json result;
    result["single_measure"] = Json();
    result["single_measure"]["uniform"] = contradiction_to_json(uniform_report);
    result["single_measure"]["first_three_certain_point_mass"] =
        contradiction_to_json(certain_report);
    result["contradiction_certified"] = contradiction_certified;
    result["setting_indexed"] = resolution_to_json(resolution);
    result["resolution_exact"] = resolution_ok;
    return result;
}

Json scenario_resolve(const ExperimentConfig&, bool& expectation_met, Json&) {
    const auto resolution = measures::build_singular_resolution();

    Json singular = Json::array();
    for (std::size_t i = 0; i < resolution.measures.size(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < resolution.measures.size(); ++j) {
            row.push_back(
                i == j ? false
                       : measures::is_singular(resolution.measures[i], resolution.measures[j])
                             .singular);
        }
        singular.push_back(row);
    }

    // Density demonstration on the same space: P << Q with exact reconstruction.
    const auto q = measures::FiniteMeasure::uniform(resolution.space);
    const measures::FiniteMeasure p(
        resolution.space, {Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 8)});
    const auto density = measures::radon_nikodym(p, q);
    bool reconstruction_exact = true;
    for (std::uint64_t mask = 0; mask < 16; ++mask) {
        const auto event = measures::EventSet::from_mask(resolution.space, mask);
        Rational sum(0);
        for (std::size_t i = 0; i < 4; ++i) {
            if (event.contains(i)) sum += density[i] * q.mass(i);
        }
        if (sum != p.probability(event)) reconstruction_exact = false;
    }

    expectation_met = resolution_exact(resolution) && reconstruction_exact;

    Json result = resolution_to_json(resolution);
    Json assignments = Json::array();
    for (const auto& w : resolution.assignments) assignments.push_back(w.name());
    result["assignments"] = assignments;
    result["singularity_matrix"] = singular;
    Json density_json = Json::array();
    for (const auto& d : density) density_json.push_back(d.to_string());
    result["radon_nikodym_demo"] = Json();
    result["radon_nikodym_demo"]["density"] = density_json;
    result["radon_nikodym_demo"]["reconstruction_exact"] = reconstruction_exact;
    return result;
}

Json scenario_gedanken(const ExperimentConfig& config, bool& expectation_met, Json&) {
    const auto state = ghz::TripleState::default_state();
    const auto report = ghz::gedanken_audit(state, config.n, config.seed);

    const bool all_certified = report.constraints.size() == 4;
    expectation_met = all_certified && report.empirical_certainties_hold &&
                      report.certificate && !report.certificate->feasible;

    Json result;
    Json runs = Json::array();
    for (const auto& run : report.runs) {
        Json r;
        r["setting"] = Json::array({run.setting.phi1, run.setting.phi2, run.setting.phi3});
        if (run.certified_sign) r["certified_sign"] = *run.certified_sign;
        r["wrong_parity_mass"] = run.wrong_parity_mass;
        r["draws"] = run.draws;
        r["matching_products"] = run.matching_products;
        r["empirical_product_mean"] = run.empirical_product_mean;
        runs.push_back(r);
    }
    result["runs"] = runs;
    result["empirical_certainties_hold"] = report.empirical_certainties_hold;
    if (report.certificate) {
        Json cert;
        cert["per_constraint_counts"] = report.certificate->per_constraint_counts;
        cert["intersection_count"] = report.certificate->intersection_count;
        cert["feasible"] = report.certificate->feasible;
        if (report.certificate->witness)
            cert["witness"] = strategy_to_json(*report.certificate->witness);
        result["certificate"] = cert;
    }
    result["single_sequence_possible"] = report.single_sequence_possible;
    return result;
}

Json config_echo(const ExperimentConfig& c) {
    Json j;
    j["scenario"] = c.scenario;
    j["seed"] = c.seed;
    j["n"] = c.n;
    j["c"] = c.tolerance_coefficient;
    j["schedule_start"] = c.schedule_start;
    j["schedule_ratio"] = c.schedule_ratio;
    j["schedule_steps"] = c.schedule_steps;
    j["min_selected"] = c.min_selected;
    j["source"] = c.source;
    j["labels"] = c.labels;
    j["prob"] = c.first_label_prob;
    j["block_ratio"] = c.block_ratio;
    j["setting"] = c.setting;
    j["selections"] = c.selections;
    return j;
}

}  // namespace

Json Report::to_json() const {
    Json j;
    j["scenario"] = scenario;
    j["config"] = config_echo;
    j["result"] = result;
    j["expected_outcome_met"] = expectation_met;
    j["duration_ms"] = duration_ms;
    return j;
}

Report run(const ExperimentConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    Report report;
    report.scenario = config.scenario;
    report.config_echo = config_echo(config);

    if (config.scenario == "stabilize") {
        report.result = scenario_stabilize(config, report.expectation_met, report.csv_table);
    } else if (config.scenario == "randomness") {
        report.result = scenario_randomness(config, report.expectation_met, report.csv_table);
    } else if (config.scenario == "combine") {
        report.result = scenario_combine(config, report.expectation_met, report.csv_table);
    } else if (config.scenario == "ghz-sample") {
        report.result = scenario_ghz_sample(config, report.expectation_met, report.csv_table);
    } else if (config.scenario == "lhv") {
        report.result = scenario_lhv(config, report.expectation_met, report.csv_table);
    } else if (config.scenario == "paradox") {
        report.result = scenario_paradox(config, report.expectation_met, report.csv_table);
    } else if (config.scenario == "resolve") {
        report.result = scenario_resolve(config, report.expectation_met, report.csv_table);
    } else {
        report.result = scenario_gedanken(config, report.expectation_met, report.csv_table);
    }

    report.duration_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

int exit_code(const Report& report) { return report.expectation_met ? 0 : 1; }

namespace {

bool flat_printable(const Json& value) {
    if (!value.is_structured()) return true;
    if (!value.is_array()) return false;
    for (const auto& item : value) {
        if (item.is_structured()) return false;
    }
    return true;
}

void render_text_value(std::ostream& out, const Json& value, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (value.is_object()) {
        for (const auto& [key, sub] : value.items()) {
            if (flat_printable(sub)) {
                out << pad << key << ": " << sub.dump() << '\n';
            } else {
                out << pad << key << ":\n";
                render_text_value(out, sub, indent + 1);
            }
        }
    } else if (value.is_array()) {
        for (std::size_t i = 0; i < value.size(); ++i) {
            if (flat_printable(value[i])) {
                out << pad << "- " << value[i].dump() << '\n';
            } else {
                out << pad << "-\n";
                render_text_value(out, value[i], indent + 1);
            }
        }
    } else {
        out << pad << value.dump() << '\n';
    }
}

}  // namespace

std::string render_text(const Report& report) {
    std::ostringstream out;
    out << "scenario: " << report.scenario << '\n';
    out << "expected outcome met: " << (report.expectation_met ? "yes" : "no") << '\n';
    out << "config:\n";
    render_text_value(out, report.config_echo, 1);
    out << "result:\n";
    render_text_value(out, report.result, 1);
    return out.str();
}

std::string render_csv(const Report& report) {
    std::ostringstream out;
    if (!report.csv_table.is_null()) {
        for (const auto& row : report.csv_table) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out << ',';
                if (row[i].is_string()) {
                    out << row[i].get<std::string>();
                } else {
                    out << row[i].dump();
                }
            }
            out << '\n';
        }
        return out.str();
    }
    // Flat key,value dump for scenarios without a primary table.
    out << "key,value\n";
    Json flat = report.result.flatten();
    for (const auto& [key, value] : flat.items())
        out << key << ',' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    return out.str();
}

std::string render(const Report& report, const std::string& format) {
    if (format == "json") return report.to_json().dump(2) + "\n";
    if (format == "csv") return render_csv(report);
    return render_text(report);
}

}  // namespace freqlab::cli
