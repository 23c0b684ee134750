#pragma once

// Parity determination by ensemble readout: one base run, then an integer
// bisection over the offset M on spin 1 until its signal vanishes.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nmrparity/ensemble_sim.hpp"
#include "nmrparity/oracle_ops.hpp"

namespace nmrparity {

/// The bisection ran out of candidates without a zero signal. Cannot happen
/// for exact simulation; indicates a sign-convention fault or a detection
/// floor that hid a real zero.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Decision {
    zero_signal,   ///< some watched spin read zero; the run resolves parity
    raise_offset,  ///< spin-1 signal still has the sign of P_1: increase M
    lower_offset,  ///< spin-1 signal flipped sign: decrease M
    continue_search,  ///< base run with no zero: start the bisection
};

const char* to_string(Decision d);

struct IterationRecord {
    std::optional<std::size_t> m;  ///< empty for the base run
    Sign sign = Sign::plus;
    std::vector<double> amplitudes;
    Decision decision = Decision::zero_signal;

    friend bool operator==(const IterationRecord&, const IterationRecord&) = default;
};

enum class Resolution {
    base_zero,   ///< base run showed a zero; G even
    zero_at_m,   ///< offset run with M = resolved_m read zero
    bracketed,   ///< bracket shrank to a single M, which must hold the zero
};

const char* to_string(Resolution r);

struct RunTrace {
    std::vector<IterationRecord> iterations;
    std::size_t uo_calls = 0;
    std::size_t uf_calls = 0;
    int parity = 1;
    Resolution resolution = Resolution::base_zero;
    /// Offset at which the spin-1 signal vanishes, when the bisection ran.
    std::optional<std::size_t> resolved_m;

    friend bool operator==(const RunTrace&, const RunTrace&) = default;
};

RunTrace solve_parity(const SpinSystemConfig& config, const PhaseFunction& f,
                      const ReadoutOptions& options = {});

struct CallCounts {
    std::size_t uo;
    std::size_t uf;
    friend bool operator==(const CallCounts&, const CallCounts&) = default;
};

/// Worst-case oracle usage for n work qubits.
CallCounts projected_call_counts(std::size_t n);

}  // namespace nmrparity
