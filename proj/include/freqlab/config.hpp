#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "freqlab/error.hpp"

namespace freqlab::cli {

inline const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = {
        "stabilize", "randomness", "combine", "ghz-sample",
        "lhv",       "paradox",    "resolve", "gedanken"};
    return names;
}

struct ExperimentConfig {
    std::string scenario;

    std::uint64_t seed = 0;
    std::uint64_t n = 100000;
    double tolerance_coefficient = 5.0;  // c in tau(N) = c / sqrt(N)
    std::string format = "text";         // text | json | csv
    std::string output_path;             // empty -> stdout

    std::uint64_t schedule_start = 1000;
    std::uint64_t schedule_ratio = 2;
    std::uint32_t schedule_steps = 8;
    std::uint64_t min_selected = 1000;

    // stabilize / randomness sources
    std::string source = "iid";  // iid | oscillating | periodic
    std::vector<std::string> labels = {"a", "b"};
    double first_label_prob = 0.5;  // i.i.d. over two labels; uniform otherwise
    std::uint64_t block_ratio = 2;  // oscillating block growth

    // ghz-sample
    std::string setting = "pi/2,0,0";

    // randomness selection family; empty -> the three built-ins
    std::vector<std::string> selections;

    // optional path: stabilize/ghz-sample write the underlying label sequence
    // there, one label per line
    std::string sequence_out;

    void validate() const;
};

// Flat key=value file with # comments; repeated `selection` keys append.
ExperimentConfig parse_config_file(const std::string& path);
void apply_key_value(ExperimentConfig& config, const std::string& key, const std::string& value);

// "pi/2,0,0.3" -> radians; accepts "pi", "pi/2", "pi/4", "-pi/2" or decimals.
std::vector<double> parse_phases(const std::string& text);

}  // namespace freqlab::cli
