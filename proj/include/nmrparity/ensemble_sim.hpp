#pragma once

// Ensemble dynamics for the parity experiment: the initial transverse
// deviation state, hard pulses, the purge (gradient + zero-quantum dephasing)
// and longitudinal readout, plus closed-form evaluators of the conjugation
// expansions used to cross-check the matrix route.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nmrparity/oracle_ops.hpp"
#include "nmrparity/spin_core.hpp"

namespace nmrparity {

/// Raised when an operation is handed input outside its contract.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Simultaneous hard pulse exp(-i angle sum_k I_k,axis) on every work spin.
struct PulseSpec {
    Axis axis;
    double angle;

    /// Throws std::invalid_argument for axis z or |angle| >= 2 pi.
    void validate() const;
};

/// The 90 degree y pulse that precedes the purge. The positive sense
/// exp(-i pi/2 sum I_ky) maps I_kx to -I_kz, which makes the purged state
/// equal +(2/N) sum eps_k P_k I_kz.
PulseSpec readout_pulse();

struct ReadoutOptions {
    /// Amplitudes with magnitude below this are flagged as zero.
    double threshold = 1e-9;
    /// Report the physical I_kz coefficient (2/N) eps_k P_k instead of the
    /// integer-valued 2 Tr(rho I_kz) / eps_k.
    bool snr_mode = false;
};

struct SignalVector {
    std::vector<double> amplitude;
    std::vector<bool> zero;
    double threshold = 0.0;

    bool any_zero() const;
};

DeviationState initial_state(const SpinSystemConfig& config);

DeviationState apply_pulse(const DeviationState& state, const PulseSpec& pulse);

/// Keeps only elements with coherence order 0.
DeviationState gradient_filter(const DeviationState& state);

/// Removes off-diagonal zero-quantum elements; nonzero orders pass unchanged.
DeviationState zero_quantum_filter(const DeviationState& state);

/// zero_quantum_filter after gradient_filter.
DeviationState purge(const DeviationState& state);

/// Throws ContractError for a state that is not diagonal.
SignalVector read_signal(const DeviationState& state, const SpinSystemConfig& config,
                         const ReadoutOptions& options = {});

/// C_s(theta) rho C_s(theta)^dagger from the four-term commutator expansion.
DeviationState conjugate_selective_analytic(const DeviationState& state, std::size_t s,
                                            double theta);

/// U_o(theta) rho U_o(theta)^dagger from the expansion in sum_s g(s) D_s.
DeviationState conjugate_oracle_analytic(const DeviationState& state, const PhaseFunction& f,
                                         double theta);

/// Largest n accepted by evolved_state_expansion.
inline constexpr std::size_t kExpansionQubitCap = 8;

/// U_o(theta) (sum eps_k I_ky) U_o(theta)^dagger assembled term by term from
/// its product-operator expansion in the unit-number representation.
DeviationState evolved_state_expansion(const SpinSystemConfig& config, const PhaseFunction& f,
                                       double theta);

/// State after oracle, optional offset, readout pulse and purge.
DeviationState purged_state(const SpinSystemConfig& config, const PhaseFunction& f,
                            const std::optional<MSpec>& mspec = std::nullopt);

/// purged_state followed by read_signal.
SignalVector run_sequence(const SpinSystemConfig& config, const PhaseFunction& f,
                          const std::optional<MSpec>& mspec = std::nullopt,
                          const ReadoutOptions& options = {});

/// (2/N) sum_k eps_k c_k I_kz for integer-valued coefficients c_k.
DeviationState longitudinal_state(const SpinSystemConfig& config,
                                  const std::vector<double>& coefficients);

}  // namespace nmrparity
