#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "freqlab/scenarios.hpp"

using namespace freqlab;
using namespace freqlab::cli;

namespace {

struct ProcessResult {
    int exit_code;
    std::string output;
};

// Runs the real binary named by FREQLAB_CLI; tests are skipped when unset.
const char* cli_path() { return std::getenv("FREQLAB_CLI"); }

ProcessResult run_process(const std::string& args) {
    const std::string command = std::string(cli_path()) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buffer[4096];
    while (std::size_t got = fread(buffer, 1, sizeof buffer, pipe)) output.append(buffer, got);
    const int status = pclose(pipe);
    return ProcessResult{WEXITSTATUS(status), output};
}

std::string strip_duration(const std::string& json_text) {
    auto j = Json::parse(json_text);
    j.erase("duration_ms");
    return j.dump(2);
}

std::string temp_file(const std::string& contents) {
    static int counter = 0;
    std::string path = "freqlab_test_config_" + std::to_string(++counter) + ".cfg";
    std::ofstream out(path);
    out << contents;
    return path;
}

}  // namespace

TEST_CASE("defaults are in effect without any input") {
    ExperimentConfig config;
    CHECK(config.seed == 0);
    CHECK(config.n == 100000);
    CHECK(config.tolerance_coefficient == 5.0);
    CHECK(config.format == "text");
    config.scenario = "lhv";
    CHECK_NOTHROW(config.validate());
}

TEST_CASE("config file keys are applied and flags take precedence") {
    const auto path = temp_file("# comment\nscenario = stabilize\nn = 1000\nseed = 3\n");
    auto config = parse_config_file(path);
    CHECK(config.scenario == "stabilize");
    CHECK(config.n == 1000);
    CHECK(config.seed == 3);

    apply_key_value(config, "n", "10000");  // flag override
    CHECK(config.n == 10000);
    std::remove(path.c_str());
}

TEST_CASE("config errors name the offending key") {
    ExperimentConfig config;
    CHECK_THROWS_WITH_AS(apply_key_value(config, "sede", "1"), doctest::Contains("sede"), Error);
    CHECK_THROWS_WITH_AS(apply_key_value(config, "n", "abc"), doctest::Contains("'n'"), Error);

    config.scenario = "ghz-sampel";
    CHECK_THROWS_WITH_AS(config.validate(), doctest::Contains("ghz-sampel"), Error);
}

TEST_CASE("phase strings parse symbolic fractions of pi") {
    const auto phases = parse_phases("pi/2,0,0.3");
    CHECK(phases[0] == doctest::Approx(1.5707963267948966));
    CHECK(phases[1] == 0.0);
    CHECK(phases[2] == doctest::Approx(0.3));
    CHECK_THROWS_AS(parse_phases("1,2"), Error);
}

TEST_CASE("selection entries parse kind and parameters") {
    ExperimentConfig config;
    config.scenario = "randomness";
    apply_key_value(config, "selection", "arithmetic step=2 offset=1");
    apply_key_value(config, "selection", "after_word word=a");
    CHECK(config.selections.size() == 2);
    config.schedule_steps = 4;
    config.schedule_start = 100;
    CHECK_NOTHROW(config.validate());

    // Unknown selection kind surfaces as a config error inside run().
    apply_key_value(config, "selection", "sometimes");
    CHECK_THROWS_AS(run(config), Error);
}

TEST_CASE("every scenario runs deterministically at small sizes") {
    for (const auto& scenario : scenario_names()) {
        ExperimentConfig config;
        config.scenario = scenario;
        config.n = 2000;
        config.schedule_start = 100;
        config.schedule_steps = 5;
        config.min_selected = 100;

        const auto first = run(config);
        const auto second = run(config);
        auto a = first.to_json();
        auto b = second.to_json();
        a.erase("duration_ms");
        b.erase("duration_ms");
        CHECK(a.dump() == b.dump());
        CHECK(exit_code(first) == 0);
    }
}

TEST_CASE("expected failures are certified outcomes") {
    ExperimentConfig config;
    config.scenario = "stabilize";
    config.source = "oscillating";
    config.schedule_start = 100;
    config.schedule_steps = 6;
    const auto report = run(config);
    CHECK(report.result["verdict"]["stabilized"] == false);
    CHECK(exit_code(report) == 0);  // the failure is the certified expectation
}

TEST_CASE("verdict mismatches exit nonzero") {
    ExperimentConfig config;
    config.scenario = "ghz-sample";
    config.n = 1000;
    config.tolerance_coefficient = 1e-6;  // unachievable tolerance
    const auto report = run(config);
    CHECK(exit_code(report) == 1);
}

TEST_CASE("cli process honors the exit-code contract") {
    if (!cli_path()) return;  // only meaningful under ctest

    const auto ok = run_process("lhv --format json");
    CHECK(ok.exit_code == 0);
    const auto parsed = Json::parse(ok.output);
    CHECK(parsed["result"]["satisfying_count"] == 0);
    CHECK(parsed["result"]["max_satisfiable"] == 3);

    const auto bad_scenario = run_process("ghz-sampel");
    CHECK(bad_scenario.exit_code == 2);

    const auto bad_key = run_process("lhv --badflag 1");
    CHECK(bad_key.exit_code == 2);

    const auto mismatch = run_process("ghz-sample --n 500 --c 0.000001");
    CHECK(mismatch.exit_code == 1);
}

TEST_CASE("cli process reports are byte-identical modulo duration") {
    if (!cli_path()) return;

    const std::string args = "gedanken --n 2000 --seed 5 --format json";
    const auto first = run_process(args);
    const auto second = run_process(args);
    REQUIRE(first.exit_code == 0);
    CHECK(strip_duration(first.output) == strip_duration(second.output));
}

TEST_CASE("cli process respects config files with flag overrides") {
    if (!cli_path()) return;

    const auto path = temp_file("n = 750\nseed = 9\nformat = json\n");
    const auto report = run_process("ghz-sample --config " + path + " --n 1500");
    CHECK(report.exit_code == 0);
    const auto parsed = Json::parse(report.output);
    CHECK(parsed["config"]["n"] == 1500);
    CHECK(parsed["config"]["seed"] == 9);
    std::remove(path.c_str());
}

TEST_CASE("cli exports sampled sequences in the one-label-per-line format") {
    if (!cli_path()) return;

    const std::string seq_path = "freqlab_test_sequence.txt";
    const auto result =
        run_process("ghz-sample --n 50 --seed 4 --sequence-out " + seq_path + " --format json");
    CHECK(result.exit_code == 0);
    std::ifstream in(seq_path);
    REQUIRE(in.good());
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++rows;
        REQUIRE(line.size() == 3);
        for (char ch : line) REQUIRE((ch == '+' || ch == '-'));
    }
    CHECK(rows == 50);
    std::remove(seq_path.c_str());
}

TEST_CASE("cli writes reports to a file when asked") {
    if (!cli_path()) return;

    const std::string out_path = "freqlab_test_report.json";
    const auto result = run_process("lhv --format json --out " + out_path);
    CHECK(result.exit_code == 0);
    CHECK(result.output.empty());
    std::ifstream in(out_path);
    REQUIRE(in.good());
    std::stringstream buffer;
    buffer << in.rdbuf();
    const auto parsed = Json::parse(buffer.str());
    CHECK(parsed["result"]["satisfying_count"] == 0);
    std::remove(out_path.c_str());
}
