#include "nmrparity/parity_algo.hpp"

#include <string>

namespace nmrparity {

const char* to_string(Decision d) {
    switch (d) {
        case Decision::zero_signal:
            return "zero_signal";
        case Decision::raise_offset:
            return "raise_offset";
        case Decision::lower_offset:
            return "lower_offset";
        case Decision::continue_search:
            return "continue_search";
    }
    return "unknown";
}

const char* to_string(Resolution r) {
    switch (r) {
        case Resolution::base_zero:
            return "base_zero";
        case Resolution::zero_at_m:
            return "zero_at_m";
        case Resolution::bracketed:
            return "bracketed";
    }
    return "unknown";
}

namespace {

int parity_of_offset(std::size_t m) { return m % 2 == 0 ? 1 : -1; }

}  // namespace

RunTrace solve_parity(const SpinSystemConfig& config, const PhaseFunction& f,
                      const ReadoutOptions& options) {
    if (f.n() != config.n()) {
        throw std::invalid_argument("phase function and configuration disagree on n");
    }
    RunTrace trace;
    auto run = [&](const std::optional<MSpec>& spec) {
        trace.uo_calls += OracleCallCost::uo;
        trace.uf_calls += OracleCallCost::uf;
        return run_sequence(config, f, spec, options);
    };

    const SignalVector base = run(std::nullopt);
    IterationRecord first{std::nullopt, Sign::plus, base.amplitude, Decision::zero_signal};
    if (base.any_zero()) {
        trace.iterations.push_back(std::move(first));
        trace.parity = 1;
        trace.resolution = Resolution::base_zero;
        return trace;
    }
    const Sign sign = base.amplitude[0] > 0.0 ? Sign::plus : Sign::minus;
    first.sign = sign;
    first.decision = Decision::continue_search;
    trace.iterations.push_back(std::move(first));

    // Invariant: the spin-1 signal at lo - 1 carries the sign of P_1 and at
    // hi + 1 the opposite sign (or hi = N/2, where it cannot carry the sign
    // of P_1). The signal moves by one unit per added index, so a zero lies
    // in [lo, hi].
    std::size_t lo = 1;
    std::size_t hi = config.dim() / 2;
    while (lo <= hi) {
        if (lo == hi) {
            trace.resolution = Resolution::bracketed;
            trace.resolved_m = lo;
            trace.parity = parity_of_offset(lo);
            return trace;
        }
        const std::size_t mid = lo + (hi - lo) / 2;
        const SignalVector sig = run(MSpec(mid, sign, config.n()));
        IterationRecord rec{mid, sign, sig.amplitude, Decision::zero_signal};
        if (sig.zero[0]) {
            trace.iterations.push_back(std::move(rec));
            trace.resolution = Resolution::zero_at_m;
            trace.resolved_m = mid;
            trace.parity = parity_of_offset(mid);
            return trace;
        }
        const bool same_sign = (sig.amplitude[0] > 0.0) == (sign == Sign::plus);
        if (same_sign) {
            rec.decision = Decision::raise_offset;
            lo = mid + 1;
        } else {
            rec.decision = Decision::lower_offset;
            hi = mid - 1;
        }
        trace.iterations.push_back(std::move(rec));
    }
    throw ConsistencyError("bisection exhausted [1, " + std::to_string(config.dim() / 2) +
                           "] without a zero spin-1 signal");
}

CallCounts projected_call_counts(std::size_t n) {
    if (n < 1) {
        throw std::invalid_argument("projected_call_counts needs n >= 1");
    }
    return CallCounts{n * OracleCallCost::uo, n * OracleCallCost::uf};
}

}  // namespace nmrparity
