#pragma once

#include <string>

#include "json.hpp"

#include "freqlab/config.hpp"

namespace freqlab::cli {

using Json = nlohmann::ordered_json;

struct Report {
    std::string scenario;
    Json config_echo;
    Json result;
    Json csv_table;  // primary table rows for csv output; may be null
    bool expectation_met = false;
    double duration_ms = 0.0;

    Json to_json() const;  // duration_ms is the last key
};

// Dispatches to the named scenario. Exit code 0 when the verdicts match the
// scenario's certified expectation, 1 otherwise; config errors throw before
// a report exists (the CLI maps those to exit code 2).
Report run(const ExperimentConfig& config);

int exit_code(const Report& report);

std::string render(const Report& report, const std::string& format);
std::string render_text(const Report& report);
std::string render_csv(const Report& report);

}  // namespace freqlab::cli
