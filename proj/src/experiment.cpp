#include "nmrparity/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "nmrparity/ensemble_sim.hpp"
#include "nmrparity/reference_oracle.hpp"

namespace nmrparity {

using ordered_json = nlohmann::ordered_json;

namespace {

bool is_line_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

struct Line {
    std::string_view text;
    std::size_t number;
};

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> lines;
    std::size_t start = 0;
    std::size_t number = 1;
    while (start <= text.size()) {
        const std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            lines.push_back({text.substr(start), number});
            break;
        }
        lines.push_back({text.substr(start, end - start), number});
        start = end + 1;
        ++number;
    }
    return lines;
}

std::string_view trim_right(std::string_view s) {
    while (!s.empty() && is_line_space(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + what),
      line_(line),
      column_(column) {}

PhaseFunction parse_truth_table(std::string_view text, std::size_t cap) {
    const std::vector<Line> lines = split_lines(text);

    const std::string_view header = trim_right(lines[0].text);
    if (header.empty()) {
        throw ParseError(1, 1, "expected the qubit count n");
    }
    std::size_t n = 0;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const char c = header[i];
        if (c < '0' || c > '9') {
            throw ParseError(1, i + 1, std::string("unexpected character '") + c + "' in n");
        }
        n = n * 10 + static_cast<std::size_t>(c - '0');
        if (n > 64) {
            throw ParseError(1, i + 1, "n exceeds the cap of " + std::to_string(cap));
        }
    }
    if (n < 1 || n > cap) {
        throw ParseError(1, 1, "n = " + std::to_string(n) + " outside 1.." + std::to_string(cap));
    }

    if (lines.size() < 2) {
        throw ParseError(2, 1, "missing truth-table line");
    }
    const std::string_view body = trim_right(lines[1].text);
    const std::size_t dim = std::size_t{1} << n;
    std::vector<std::uint8_t> marks(dim, 0);
    for (std::size_t x = 0; x < body.size(); ++x) {
        if (x >= dim) {
            throw ParseError(2, x + 1, "expected exactly " + std::to_string(dim) + " entries");
        }
        switch (body[x]) {
            case '+':
                break;
            case '-':
                marks[x] = 1;
                break;
            default:
                throw ParseError(2, x + 1, std::string("illegal character '") + body[x] +
                                               "', expected '+' or '-'");
        }
    }
    if (body.size() != dim) {
        throw ParseError(2, body.size() + 1, "expected exactly " + std::to_string(dim) +
                                                 " entries, got " + std::to_string(body.size()));
    }
    for (std::size_t i = 2; i < lines.size(); ++i) {
        if (!trim_right(lines[i].text).empty()) {
            throw ParseError(lines[i].number, 1, "unexpected content after the truth table");
        }
    }
    return PhaseFunction(n, std::move(marks));
}

PhaseFunction parse_truth_table_file(const std::filesystem::path& path, std::size_t cap) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_truth_table(buffer.str(), cap);
}

std::string format_truth_table(const PhaseFunction& f) {
    std::string out = std::to_string(f.n()) + "\n";
    out.reserve(out.size() + f.dim() + 1);
    for (std::size_t x = 0; x < f.dim(); ++x) {
        out.push_back(f.g(x) ? '-' : '+');
    }
    out.push_back('\n');
    return out;
}

PhaseFunction random_function(std::size_t n, std::uint64_t seed, double density) {
    if (!(density >= 0.0 && density <= 1.0)) {
        throw std::invalid_argument("density must lie in [0, 1]");
    }
    if (n < 1 || n >= 40) {
        throw std::invalid_argument("random_function: n out of range");
    }
    std::mt19937_64 rng(seed);
    const std::size_t dim = std::size_t{1} << n;
    std::vector<std::uint8_t> marks(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        marks[x] = u < density ? 1 : 0;
    }
    return PhaseFunction(n, std::move(marks));
}

FunctionSource parse_function_source(const std::string& spec, std::optional<std::uint64_t> seed,
                                     double density) {
    if (spec == "const-plus") {
        return ConstPlusSource{};
    }
    if (spec == "const-minus") {
        return ConstMinusSource{};
    }
    if (spec == "random") {
        if (!seed) {
            throw std::invalid_argument("--function random requires --seed");
        }
        if (!(density >= 0.0 && density <= 1.0)) {
            throw std::invalid_argument("--density must lie in [0, 1]");
        }
        return RandomSource{*seed, density};
    }
    if (spec.rfind("single:", 0) == 0) {
        const std::string digits = spec.substr(7);
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                           [](char c) { return c >= '0' && c <= '9'; })) {
            throw std::invalid_argument("single:X needs a non-negative integer X");
        }
        return SingleSource{static_cast<std::size_t>(std::stoull(digits))};
    }
    return FileSource{spec};
}

std::string describe(const FunctionSource& source) {
    struct Visitor {
        std::string operator()(const FileSource& s) const { return "file:" + s.path.string(); }
        std::string operator()(const RandomSource& s) const {
            std::ostringstream os;
            os << "random(seed=" << s.seed << ",density=" << s.density << ")";
            return os.str();
        }
        std::string operator()(const ConstPlusSource&) const { return "const-plus"; }
        std::string operator()(const ConstMinusSource&) const { return "const-minus"; }
        std::string operator()(const SingleSource& s) const {
            return "single(" + std::to_string(s.x0) + ")";
        }
    };
    return std::visit(Visitor{}, source);
}

PhaseFunction materialize(const FunctionSource& source, std::optional<std::size_t> n,
                          std::size_t cap) {
    if (const auto* file = std::get_if<FileSource>(&source)) {
        PhaseFunction f = parse_truth_table_file(file->path, cap);
        if (n && *n != f.n()) {
            throw std::invalid_argument("--n " + std::to_string(*n) + " disagrees with file n = " +
                                        std::to_string(f.n()));
        }
        return f;
    }
    if (!n) {
        throw std::invalid_argument("--n is required unless the function comes from a file");
    }
    if (*n < 1 || *n > cap) {
        throw SizeError("n = " + std::to_string(*n) + " outside 1.." + std::to_string(cap));
    }
    if (const auto* r = std::get_if<RandomSource>(&source)) {
        return random_function(*n, r->seed, r->density);
    }
    if (std::holds_alternative<ConstPlusSource>(source)) {
        return PhaseFunction::constant_plus(*n);
    }
    if (std::holds_alternative<ConstMinusSource>(source)) {
        return PhaseFunction::constant_minus(*n);
    }
    return PhaseFunction::single(*n, std::get<SingleSource>(source).x0);
}

ExperimentResult execute(const ExperimentConfig& config) {
    const PhaseFunction f = materialize(config.source, config.n);
    const SpinSystemConfig spins = config.epsilon.empty()
                                       ? SpinSystemConfig(f.n())
                                       : SpinSystemConfig(f.n(), config.epsilon);
    ReadoutOptions readout;
    readout.threshold = config.threshold;
    readout.snr_mode = config.snr_mode;

    ExperimentResult result;
    result.n = f.n();
    result.trace = solve_parity(spins, f, readout);
    if (config.verify) {
        result.reference_parity = brute_parity(f);
        result.agrees = *result.reference_parity == result.trace.parity;
    }
    return result;
}

double round_report(double value) {
    if (std::abs(value) < 1e-12) {
        return 0.0;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return std::strtod(buf, nullptr);
}

std::string report_json(const ExperimentConfig& config, const ExperimentResult& result) {
    ordered_json j;
    j["n"] = result.n;
    j["function"] = describe(config.source);
    j["parity"] = result.trace.parity;
    if (result.reference_parity) {
        j["G_parity_reference"] = *result.reference_parity;
        j["agrees"] = result.agrees;
    }
    j["runs"] = result.trace.iterations.size();
    j["uo_calls"] = result.trace.uo_calls;
    j["uf_calls"] = result.trace.uf_calls;
    j["resolution"] = to_string(result.trace.resolution);
    j["resolved_m"] = result.trace.resolved_m ? ordered_json(*result.trace.resolved_m)
                                              : ordered_json(nullptr);
    ordered_json trace = ordered_json::array();
    for (const auto& rec : result.trace.iterations) {
        ordered_json row;
        row["M"] = rec.m ? ordered_json(*rec.m) : ordered_json(nullptr);
        row["sign"] = to_int(rec.sign);
        ordered_json amps = ordered_json::array();
        for (double a : rec.amplitudes) {
            amps.push_back(round_report(a));
        }
        row["amplitudes"] = std::move(amps);
        row["decision"] = to_string(rec.decision);
        trace.push_back(std::move(row));
    }
    j["trace"] = std::move(trace);
    return j.dump(2) + "\n";
}

std::string report_csv(const ExperimentResult& result) {
    std::ostringstream os;
    os << "iteration,M,sign,decision";
    for (std::size_t k = 1; k <= result.n; ++k) {
        os << ",amp_" << k;
    }
    os << "\n";
    char buf[32];
    for (std::size_t i = 0; i < result.trace.iterations.size(); ++i) {
        const auto& rec = result.trace.iterations[i];
        os << i << ',';
        if (rec.m) {
            os << *rec.m;
        }
        os << ',' << to_int(rec.sign) << ',' << to_string(rec.decision);
        for (double a : rec.amplitudes) {
            std::snprintf(buf, sizeof buf, "%.12g", round_report(a));
            os << ',' << buf;
        }
        os << "\n";
    }
    return os.str();
}

int run_experiment(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    ExperimentResult result;
    try {
        result = execute(config);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::out_of_range& e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitParse;
    } catch (const SizeError& e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitParse;
    } catch (const ConsistencyError& e) {
        err << "protocol failure: " << e.what() << "\n";
        return kExitMismatch;
    }

    const std::string report = config.format == ReportFormat::json ? report_json(config, result)
                                                                    : report_csv(result);
    if (config.out.empty()) {
        out << report;
    } else {
        std::ofstream file(config.out, std::ios::binary);
        if (!file) {
            err << "cannot write " << config.out.string() << "\n";
            return kExitParse;
        }
        file << report;
    }
    if (!result.agrees) {
        err << "verification failed: simulated parity " << result.trace.parity
            << ", reference parity " << *result.reference_parity << "\n";
        return kExitMismatch;
    }
    return kExitOk;
}

BenchReport bench(const std::vector<std::size_t>& sizes, std::size_t repetitions, std::size_t cap) {
    if (repetitions == 0) {
        throw std::invalid_argument("bench needs at least one repetition");
    }
    BenchReport report;
    for (std::size_t n : sizes) {
        const SpinSystemConfig config(n, cap);
        const PhaseFunction f = random_function(n, 1, 0.5);
        std::vector<double> times;
        const std::uint64_t dense_before = dense_multiply_count();
        for (std::size_t rep = 0; rep < repetitions; ++rep) {
            const auto start = std::chrono::steady_clock::now();
            const SignalVector sig = run_sequence(config, f);
            const auto stop = std::chrono::steady_clock::now();
            if (sig.amplitude.size() != n) {
                throw std::logic_error("bench: malformed signal");
            }
            times.push_back(std::chrono::duration<double>(stop - start).count());
        }
        const std::uint64_t dense = dense_multiply_count() - dense_before;
        if (dense != 0) {
            throw std::logic_error("bench: oracle application took the dense path");
        }
        std::sort(times.begin(), times.end());
        report.points.push_back({n, times[times.size() / 2], dense});
    }
    for (std::size_t i = 1; i < report.points.size(); ++i) {
        const double prev = report.points[i - 1].seconds;
        report.ratios.push_back(prev > 0.0 ? report.points[i].seconds / prev : 0.0);
    }
    return report;
}

std::string bench_json(const BenchReport& report) {
    ordered_json j;
    ordered_json points = ordered_json::array();
    for (const auto& p : report.points) {
        ordered_json row;
        row["n"] = p.n;
        row["seconds"] = round_report(p.seconds);
        row["dense_multiplies"] = p.dense_multiplies;
        points.push_back(std::move(row));
    }
    j["oracle_path"] = "diagonal-elementwise";
    j["points"] = std::move(points);
    ordered_json ratios = ordered_json::array();
    for (double r : report.ratios) {
        ratios.push_back(round_report(r));
    }
    j["ratios"] = std::move(ratios);
    return j.dump(2) + "\n";
}

}  // namespace nmrparity
