// Command-line front end: run the ensemble parity protocol on a Boolean
// function, optionally check it against brute force, or time the simulator.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "nmrparity/experiment.hpp"

int main(int argc, char** argv) {
    using namespace nmrparity;

    CLI::App app{"Ensemble NMR parity simulator"};

    std::optional<std::size_t> n;
    std::string function = "const-plus";
    std::optional<std::uint64_t> seed;
    double density = 0.5;
    std::vector<double> epsilon;
    ExperimentConfig config;
    std::string out;
    std::vector<std::size_t> bench_sizes;

    app.add_option("--n", n, "Number of work qubits")->check(CLI::Range(1, 64));
    app.add_option("--function", function,
                   "const-plus | const-minus | random | single:X | <truth-table file>");
    app.add_option("--seed", seed, "Seed for --function random");
    app.add_option("--density", density, "Fraction of marked inputs for --function random")
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--epsilon", epsilon, "Per-spin polarizations (n values)")->delimiter(',');
    app.add_option("--threshold", config.threshold, "Zero-detection threshold")
        ->check(CLI::NonNegativeNumber);
    app.add_flag("--snr", config.snr_mode, "Report physical 2 eps/N-scaled amplitudes");
    app.add_flag("--verify", config.verify, "Check the result against brute-force parity");
    app.add_option("--out", out, "Report path (default: standard output)");
    const std::map<std::string, ReportFormat> formats{{"json", ReportFormat::json},
                                                      {"csv", ReportFormat::csv}};
    app.add_option("--format", config.format, "json | csv")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    app.add_option("--bench", bench_sizes, "Time run_sequence at these sizes (comma list)")
        ->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitParse;
    }

    if (!bench_sizes.empty()) {
        try {
            const std::string report = bench_json(bench(bench_sizes));
            if (out.empty()) {
                std::cout << report;
            } else {
                std::ofstream(out) << report;
            }
        } catch (const std::exception& e) {
            std::cerr << "bench failed: " << e.what() << "\n";
            return kExitParse;
        }
        return kExitOk;
    }

    try {
        config.n = n;
        config.source = parse_function_source(function, seed, density);
        config.epsilon = epsilon;
        config.out = out;
    } catch (const std::exception& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitParse;
    }
    return run_experiment(config, std::cout, std::cerr);
}
