#include "nmrparity/ensemble_sim.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace nmrparity {

namespace {

std::size_t qubits_of(const DeviationState& state) {
    return static_cast<std::size_t>(std::countr_zero(state.dim()));
}

Eigen::Matrix2cd half_pauli(Axis axis) {
    return build_spin_operator(1, 1, axis).matrix();
}

Eigen::Matrix2cd pulse_rotation(const PulseSpec& pulse) {
    using namespace std::complex_literals;
    const double c = std::cos(pulse.angle / 2);
    const double s = std::sin(pulse.angle / 2);
    // exp(-i angle sigma/2) = cos(angle/2) E - i sin(angle/2) sigma.
    return c * Eigen::Matrix2cd::Identity() - 1i * s * (2.0 * half_pauli(pulse.axis));
}

template <typename Keep>
DeviationState filter(const DeviationState& state, Keep keep) {
    const auto d = static_cast<Eigen::Index>(state.dim());
    Matrix out = state.rho();
    for (Eigen::Index c = 0; c < d; ++c) {
        for (Eigen::Index r = 0; r < d; ++r) {
            if (!keep(static_cast<std::size_t>(r), static_cast<std::size_t>(c))) {
                out(r, c) = 0.0;
            }
        }
    }
    return DeviationState(std::move(out));
}

}  // namespace

void PulseSpec::validate() const {
    if (axis == Axis::z) {
        throw std::invalid_argument("hard pulses are transverse (x or y)");
    }
    if (!(std::abs(angle) < 2 * std::numbers::pi)) {
        throw std::invalid_argument("pulse angle must lie in (-2 pi, 2 pi)");
    }
}

PulseSpec readout_pulse() { return PulseSpec{Axis::y, std::numbers::pi / 2}; }

bool SignalVector::any_zero() const {
    for (bool z : zero) {
        if (z) {
            return true;
        }
    }
    return false;
}

DeviationState initial_state(const SpinSystemConfig& config) {
    const auto d = static_cast<Eigen::Index>(config.dim());
    Matrix rho = Matrix::Zero(d, d);
    for (std::size_t k = 1; k <= config.n(); ++k) {
        // I_ky couples r (spin k up) to r | mask with -i/2 above the diagonal.
        const std::size_t mask = spin_mask(config.n(), k);
        const Complex upper{0.0, -0.5 * config.epsilon(k)};
        for (std::size_t r = 0; r < config.dim(); ++r) {
            if ((r & mask) == 0) {
                const auto r0 = static_cast<Eigen::Index>(r);
                const auto r1 = static_cast<Eigen::Index>(r | mask);
                rho(r0, r1) += upper;
                rho(r1, r0) += std::conj(upper);
            }
        }
    }
    return DeviationState(std::move(rho));
}

DeviationState apply_pulse(const DeviationState& state, const PulseSpec& pulse) {
    pulse.validate();
    const std::size_t n = qubits_of(state);
    const Eigen::Matrix2cd r = pulse_rotation(pulse);
    return conjugate_each(r, n, state);
}

DeviationState gradient_filter(const DeviationState& state) {
    return filter(state, [](std::size_t r, std::size_t c) { return coherence_order(r, c) == 0; });
}

DeviationState zero_quantum_filter(const DeviationState& state) {
    return filter(state,
                  [](std::size_t r, std::size_t c) { return r == c || coherence_order(r, c) != 0; });
}

DeviationState purge(const DeviationState& state) {
    return zero_quantum_filter(gradient_filter(state));
}

SignalVector read_signal(const DeviationState& state, const SpinSystemConfig& config,
                         const ReadoutOptions& options) {
    if (state.dim() != config.dim()) {
        throw std::invalid_argument("read_signal: state and configuration disagree on N");
    }
    if (!(options.threshold >= 0.0)) {
        throw std::invalid_argument("read_signal: threshold must be non-negative");
    }
    if (!state.is_diagonal()) {
        throw ContractError("read_signal expects a purged (diagonal) state");
    }
    const std::size_t n = config.n();
    SignalVector out;
    out.threshold = options.threshold;
    out.amplitude.assign(n, 0.0);
    out.zero.assign(n, false);
    for (std::size_t k = 1; k <= n; ++k) {
        // Tr(rho I_kz) = sum_s rho_ss * (+-1/2).
        double trace = 0.0;
        for (std::size_t s = 0; s < state.dim(); ++s) {
            const double pop = state.rho()(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s)).real();
            trace += spin_bit(n, k, s) ? -0.5 * pop : 0.5 * pop;
        }
        const double amp = options.snr_mode
                               ? trace / std::ldexp(1.0, static_cast<int>(n) - 2)
                               : 2.0 * trace / config.epsilon(k);
        out.amplitude[k - 1] = amp;
        out.zero[k - 1] = std::abs(amp) < options.threshold;
    }
    return out;
}

DeviationState conjugate_selective_analytic(const DeviationState& state, std::size_t s,
                                            double theta) {
    const std::size_t n = qubits_of(state);
    const Matrix& rho = state.rho();
    const Matrix ds = build_ds(unit_number_table(n), s).matrix();
    const double c1 = 1.0 - std::cos(theta);
    const double sn = std::sin(theta);
    const Complex i{0.0, 1.0};

    Matrix out = rho - c1 * (rho * ds + ds * rho) + i * sn * (rho * ds - ds * rho) +
                 (c1 * c1 + sn * sn) * (ds * rho * ds);
    return DeviationState(std::move(out));
}

DeviationState conjugate_oracle_analytic(const DeviationState& state, const PhaseFunction& f,
                                         double theta) {
    if (state.dim() != f.dim()) {
        throw std::invalid_argument("conjugate_oracle_analytic: dimension mismatch");
    }
    const std::size_t n = f.n();
    const auto d = static_cast<Eigen::Index>(f.dim());
    const Matrix& rho = state.rho();
    const UnitNumberTable table = unit_number_table(n);

    Matrix gsum = Matrix::Zero(d, d);
    std::vector<std::size_t> marked;
    for (std::size_t s = 0; s < f.dim(); ++s) {
        if (f.g(s)) {
            gsum += build_ds(table, s).matrix();
            marked.push_back(s);
        }
    }
    // sum_{s,t} g(s) g(t) D_s rho D_t: each term is rho_st |s><t|.
    Matrix sandwich = Matrix::Zero(d, d);
    for (std::size_t s : marked) {
        for (std::size_t t : marked) {
            const auto si = static_cast<Eigen::Index>(s);
            const auto ti = static_cast<Eigen::Index>(t);
            sandwich(si, ti) += rho(si, ti);
        }
    }

    const double c1 = 1.0 - std::cos(theta);
    const double sn = std::sin(theta);
    const Complex i{0.0, 1.0};
    Matrix out = rho - c1 * (rho * gsum + gsum * rho) + i * sn * (rho * gsum - gsum * rho) +
                 (c1 * c1 + sn * sn) * sandwich;
    return DeviationState(std::move(out));
}

DeviationState evolved_state_expansion(const SpinSystemConfig& config, const PhaseFunction& f,
                                       double theta) {
    const std::size_t n = config.n();
    if (n > kExpansionQubitCap) {
        throw SizeError("product-operator expansion is capped at n = " +
                        std::to_string(kExpansionQubitCap));
    }
    if (f.n() != n) {
        throw std::invalid_argument("evolved_state_expansion: n mismatch");
    }
    const UnitNumberTable a = unit_number_table(n);
    const Eigen::Matrix2cd e = Eigen::Matrix2cd::Identity();
    const Eigen::Matrix2cd ix = half_pauli(Axis::x);
    const Eigen::Matrix2cd iy = half_pauli(Axis::y);
    const Eigen::Matrix2cd iz = half_pauli(Axis::z);

    const double c1 = 1.0 - std::cos(theta);
    const double sn = std::sin(theta);
    const double c2 = c1 * c1 + sn * sn;

    std::vector<std::size_t> marked;
    for (std::size_t s = 0; s < f.dim(); ++s) {
        if (f.g(s)) {
            marked.push_back(s);
        }
    }

    Matrix rho = initial_state(config).rho();
    std::vector<Eigen::Matrix2cd> factors(n);

    // Anticommutator and sin(theta) terms: one per marked s and spin k.
    for (std::size_t s : marked) {
        for (std::size_t k = 1; k <= n; ++k) {
            for (std::size_t j = 1; j <= n; ++j) {
                factors[j - 1] = 0.5 * e + static_cast<double>(a(j, s)) * iz;
            }
            factors[k - 1] = config.epsilon(k) * iy;
            rho -= c1 * kron_factors(factors);
            factors[k - 1] = config.epsilon(k) * static_cast<double>(a(k, s)) * ix;
            rho -= sn * kron_factors(factors);
        }
    }

    // Quadratic term over pairs t > s. A pair contributes to spin k only when
    // a^s and a^t differ in slot k and agree everywhere else; any other pair
    // has a vanishing tensor factor.
    for (std::size_t i = 0; i < marked.size(); ++i) {
        for (std::size_t jdx = i + 1; jdx < marked.size(); ++jdx) {
            const std::size_t s = marked[i];
            const std::size_t t = marked[jdx];
            for (std::size_t k = 1; k <= n; ++k) {
                bool vanishes = a(k, s) * a(k, t) == 1;
                for (std::size_t j = 1; j <= n && !vanishes; ++j) {
                    if (j != k && a(j, s) != a(j, t)) {
                        vanishes = true;
                    }
                }
                if (vanishes) {
                    continue;
                }
                for (std::size_t j = 1; j <= n; ++j) {
                    const double as = a(j, s);
                    const double at = a(j, t);
                    factors[j - 1] = 0.25 * (1.0 + as * at) * e + 0.5 * (as + at) * iz;
                }
                const double ak = static_cast<double>(a(k, s) * a(k, t));
                factors[k - 1] = 0.5 * config.epsilon(k) * (1.0 - ak) * iy;
                rho += c2 * kron_factors(factors);
            }
        }
    }
    return DeviationState(std::move(rho));
}

DeviationState purged_state(const SpinSystemConfig& config, const PhaseFunction& f,
                            const std::optional<MSpec>& mspec) {
    if (f.n() != config.n()) {
        throw std::invalid_argument("phase function and configuration disagree on n");
    }
    DeviationState state = conjugate(build_uo(f, std::numbers::pi / 2), initial_state(config));
    if (mspec) {
        if (mspec->n() != config.n()) {
            throw std::invalid_argument("MSpec and configuration disagree on n");
        }
        state = conjugate(build_um_direct(*mspec), state);
    }
    state = apply_pulse(state, readout_pulse());
    return purge(state);
}

SignalVector run_sequence(const SpinSystemConfig& config, const PhaseFunction& f,
                          const std::optional<MSpec>& mspec, const ReadoutOptions& options) {
    return read_signal(purged_state(config, f, mspec), config, options);
}

DeviationState longitudinal_state(const SpinSystemConfig& config,
                                  const std::vector<double>& coefficients) {
    if (coefficients.size() != config.n()) {
        throw std::invalid_argument("longitudinal_state: one coefficient per spin");
    }
    const auto d = static_cast<Eigen::Index>(config.dim());
    const double scale = 2.0 / static_cast<double>(config.dim());
    Matrix rho = Matrix::Zero(d, d);
    for (std::size_t k = 1; k <= config.n(); ++k) {
        rho += scale * config.epsilon(k) * coefficients[k - 1] *
               build_spin_operator(config, k, Axis::z).matrix();
    }
    return DeviationState(std::move(rho));
}

}  // namespace nmrparity
