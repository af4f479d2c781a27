#include "freqlab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace freqlab::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size())
        fail(Errc::BadConfig, "key '" + key + "': expected unsigned integer, got '" + value + "'");
    return out;
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double out = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return out;
    } catch (const std::exception&) {
        fail(Errc::BadConfig, "key '" + key + "': expected real number, got '" + value + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (std::find(scenario_names().begin(), scenario_names().end(), scenario) ==
        scenario_names().end())
        fail(Errc::BadConfig, "unknown scenario '" + scenario + "'");
    if (format != "text" && format != "json" && format != "csv")
        fail(Errc::BadConfig, "key 'format': expected text|json|csv, got '" + format + "'");
    if (tolerance_coefficient <= 0) fail(Errc::BadConfig, "key 'c': must be positive");
    const bool sampling = scenario == "ghz-sample" || scenario == "gedanken" ||
                          scenario == "combine" || scenario == "stabilize" ||
                          scenario == "randomness";
    if (sampling && n == 0) fail(Errc::BadConfig, "key 'n': must be >= 1 for this scenario");
    if (schedule_start == 0) fail(Errc::BadConfig, "key 'schedule_start': must be >= 1");
    if (schedule_ratio < 2) fail(Errc::BadConfig, "key 'schedule_ratio': must be >= 2");
    if (schedule_steps < 2) fail(Errc::BadConfig, "key 'schedule_steps': must be >= 2");
    if (source != "iid" && source != "oscillating" && source != "periodic")
        fail(Errc::BadConfig, "key 'source': expected iid|oscillating|periodic, got '" + source + "'");
    if (labels.size() < 2) fail(Errc::BadConfig, "key 'labels': need at least two labels");
    if (first_label_prob <= 0 || first_label_prob >= 1)
        fail(Errc::BadConfig, "key 'prob': must lie strictly between 0 and 1");
    if (block_ratio < 2) fail(Errc::BadConfig, "key 'block_ratio': must be >= 2");
    parse_phases(setting);
}

void apply_key_value(ExperimentConfig& config, const std::string& key, const std::string& value) {
    if (key == "scenario") {
        config.scenario = value;
    } else if (key == "seed") {
        config.seed = parse_u64(key, value);
    } else if (key == "n") {
        config.n = parse_u64(key, value);
    } else if (key == "c") {
        config.tolerance_coefficient = parse_real(key, value);
    } else if (key == "format") {
        config.format = value;
    } else if (key == "out") {
        config.output_path = value;
    } else if (key == "schedule_start") {
        config.schedule_start = parse_u64(key, value);
    } else if (key == "schedule_ratio") {
        config.schedule_ratio = parse_u64(key, value);
    } else if (key == "schedule_steps") {
        config.schedule_steps = static_cast<std::uint32_t>(parse_u64(key, value));
    } else if (key == "min_selected") {
        config.min_selected = parse_u64(key, value);
    } else if (key == "source") {
        config.source = value;
    } else if (key == "labels") {
        config.labels = split(value, ',');
    } else if (key == "prob") {
        config.first_label_prob = parse_real(key, value);
    } else if (key == "block_ratio") {
        config.block_ratio = parse_u64(key, value);
    } else if (key == "setting") {
        config.setting = value;
    } else if (key == "selection") {
        config.selections.push_back(value);
    } else if (key == "sequence_out") {
        config.sequence_out = value;
    } else {
        fail(Errc::BadConfig, "unknown key '" + key + "'");
    }
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::BadConfig, "cannot open config file '" + path + "'");
    ExperimentConfig config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(Errc::BadConfig, path + ":" + std::to_string(line_no) + ": expected key=value");
        apply_key_value(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return config;
}

std::vector<double> parse_phases(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 3) fail(Errc::BadConfig, "key 'setting': expected three phases");
    std::vector<double> out;
    for (const auto& raw : parts) {
        std::string p = raw;
        double sign = 1.0;
        if (!p.empty() && p[0] == '-') {
            sign = -1.0;
            p = p.substr(1);
        }
        if (p == "pi") {
            out.push_back(sign * std::numbers::pi);
        } else if (p == "pi/2") {
            out.push_back(sign * std::numbers::pi / 2.0);
        } else if (p == "pi/4") {
            out.push_back(sign * std::numbers::pi / 4.0);
        } else {
            out.push_back(sign * parse_real("setting", p));
        }
    }
    return out;
}

}  // namespace freqlab::cli
