#pragma once

// Front-end plumbing shared by the command-line tool and its tests:
// truth-table files, seeded function generation, experiment execution and
// report serialization.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nmrparity/oracle_ops.hpp"
#include "nmrparity/parity_algo.hpp"
#include "nmrparity/spin_core.hpp"

namespace nmrparity {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Two lines: n, then 2^n characters '+' (f = +1) or '-' (f = -1) with
/// position x read as an index whose most significant bit is spin 1.
/// Trailing whitespace is accepted at line ends only.
PhaseFunction parse_truth_table(std::string_view text, std::size_t cap = kDefaultQubitCap);
PhaseFunction parse_truth_table_file(const std::filesystem::path& path,
                                     std::size_t cap = kDefaultQubitCap);

/// Inverse of parse_truth_table, newline-terminated.
std::string format_truth_table(const PhaseFunction& f);

/// mt19937_64 seeded with `seed`; x is marked when the top 53 bits of the
/// next draw, read as a fraction in [0, 1), fall below `density`.
PhaseFunction random_function(std::size_t n, std::uint64_t seed, double density);

struct FileSource {
    std::filesystem::path path;
};
struct RandomSource {
    std::uint64_t seed = 0;
    double density = 0.5;
};
struct ConstPlusSource {};
struct ConstMinusSource {};
struct SingleSource {
    std::size_t x0 = 0;
};

using FunctionSource =
    std::variant<FileSource, RandomSource, ConstPlusSource, ConstMinusSource, SingleSource>;

enum class ReportFormat { json, csv };

struct ExperimentConfig {
    /// Required unless the source is a file, which carries its own n.
    std::optional<std::size_t> n;
    FunctionSource source = ConstPlusSource{};
    std::vector<double> epsilon;  ///< empty: all ones
    double threshold = 1e-9;
    bool snr_mode = false;
    bool verify = false;
    std::filesystem::path out;  ///< empty: standard output
    ReportFormat format = ReportFormat::json;
};

/// Parses the --function argument: const-plus, const-minus, random,
/// single:X, or a truth-table path. `seed` is required for random.
FunctionSource parse_function_source(const std::string& spec, std::optional<std::uint64_t> seed,
                                     double density);

std::string describe(const FunctionSource& source);

PhaseFunction materialize(const FunctionSource& source, std::optional<std::size_t> n,
                          std::size_t cap = kDefaultQubitCap);

struct ExperimentResult {
    RunTrace trace;
    std::size_t n = 0;
    std::optional<int> reference_parity;
    bool agrees = true;
};

ExperimentResult execute(const ExperimentConfig& config);

std::string report_json(const ExperimentConfig& config, const ExperimentResult& result);
std::string report_csv(const ExperimentResult& result);

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 1;
inline constexpr int kExitMismatch = 2;

/// Runs the experiment, writes the report, and returns the process exit
/// status. Diagnostics go to `err`; a report on standard output goes to `out`.
int run_experiment(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

struct BenchPoint {
    std::size_t n = 0;
    double seconds = 0.0;  ///< median wall time of one run_sequence
    std::uint64_t dense_multiplies = 0;
};

struct BenchReport {
    std::vector<BenchPoint> points;
    /// seconds[i] / seconds[i-1] for consecutive sizes.
    std::vector<double> ratios;
};

/// Times run_sequence at each size on a fixed seeded function. Throws
/// std::logic_error if any run takes the dense conjugation path.
BenchReport bench(const std::vector<std::size_t>& sizes, std::size_t repetitions = 3,
                  std::size_t cap = kDefaultQubitCap);

std::string bench_json(const BenchReport& report);

/// Rounds to 12 significant digits for report output; magnitudes below
/// 1e-12 become exactly 0.
double round_report(double value);

}  // namespace nmrparity
