#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "freqlab/scenarios.hpp"

namespace {

int run_cli(int argc, char** argv) {
    CLI::App app{"freqlab: frequency-probability collectives and a GHZ laboratory"};
    app.get_formatter()->column_width(34);

    std::string scenario;
    app.add_option("scenario", scenario, "one of: stabilize, randomness, combine, ghz-sample, lhv, paradox, resolve, gedanken")
        ->required();

    std::string config_path;
    app.add_option("--config", config_path, "key=value config file; flags override it");

    // Every config key has a mirror flag.
    std::vector<std::pair<std::string, std::string>> overrides;
    auto mirror = [&](const std::string& key, const std::string& flag, const std::string& help) {
        app.add_option_function<std::string>(
               flag, [&overrides, key](const std::string& v) { overrides.emplace_back(key, v); },
               help)
            ->expected(1);
    };
    mirror("seed", "--seed", "master seed (default 0)");
    mirror("n", "--n", "sample length (default 100000)");
    mirror("c", "--c", "tolerance coefficient in tau(N)=c/sqrt(N) (default 5)");
    mirror("format", "--format", "text|json|csv (default text)");
    mirror("out", "--out", "output path (default stdout)");
    mirror("schedule_start", "--schedule-start", "first checkpoint (default 1000)");
    mirror("schedule_ratio", "--schedule-ratio", "checkpoint growth ratio (default 2)");
    mirror("schedule_steps", "--schedule-steps", "number of checkpoints (default 8)");
    mirror("min_selected", "--min-selected", "minimum subsequence length audited (default 1000)");
    mirror("source", "--source", "stabilize/randomness source: iid|oscillating|periodic");
    mirror("labels", "--labels", "comma-separated label set (default a,b)");
    mirror("prob", "--prob", "probability of the first label for two-label i.i.d. sources");
    mirror("block_ratio", "--block-ratio", "oscillating block growth ratio (default 2)");
    mirror("setting", "--setting", "phase triple, e.g. pi/2,0,0 or 0.3,0.5,0.7");
    mirror("sequence_out", "--sequence-out",
           "also write the sampled label sequence here, one label per line");
    std::vector<std::string> selection_values;
    app.add_option("--selection", selection_values,
                   "place selection, e.g. 'arithmetic step=2 offset=1' (repeatable)")
        ->type_size(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    for (const auto& v : selection_values) overrides.emplace_back("selection", v);

    try {
        freqlab::cli::ExperimentConfig config;
        if (!config_path.empty()) config = freqlab::cli::parse_config_file(config_path);
        config.scenario = scenario;
        for (const auto& [key, value] : overrides)
            freqlab::cli::apply_key_value(config, key, value);

        const auto report = freqlab::cli::run(config);
        const std::string rendered = freqlab::cli::render(report, config.format);
        if (config.output_path.empty()) {
            std::cout << rendered;
        } else {
            std::ofstream out(config.output_path);
            if (!out) {
                std::cerr << "error: cannot open output path '" << config.output_path << "'\n";
                return 2;
            }
            out << rendered;
        }
        return freqlab::cli::exit_code(report);
    } catch (const freqlab::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) { return run_cli(argc, argv); }
