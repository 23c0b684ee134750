#pragma once

// Diagonal unitaries built from a Boolean phase function: selective phase
// shifts C_s(theta) = exp(-i theta D_s), the oracles U_f and U_o(theta), and
// the known offset operation U_M(-pi/2) in two independent forms.

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "nmrparity/spin_core.hpp"

namespace nmrparity {

/// f : {0..N-1} -> {+1,-1}, stored as marks[x] = 1 iff f(x) = -1 (g(x) = 1).
class PhaseFunction {
public:
    PhaseFunction(std::size_t n, std::vector<std::uint8_t> marks);

    static PhaseFunction constant_plus(std::size_t n);
    static PhaseFunction constant_minus(std::size_t n);
    static PhaseFunction single(std::size_t n, std::size_t x0);
    static PhaseFunction from_marked(std::size_t n, const std::vector<std::size_t>& marked);

    std::size_t n() const { return n_; }
    std::size_t dim() const { return marks_.size(); }
    /// g(x) in {0, 1}.
    int g(std::size_t x) const { return marks_.at(x); }
    /// f(x) in {+1, -1}.
    int f(std::size_t x) const { return 1 - 2 * marks_.at(x); }
    const std::vector<std::uint8_t>& marks() const { return marks_; }

    friend bool operator==(const PhaseFunction&, const PhaseFunction&) = default;

private:
    std::size_t n_;
    std::vector<std::uint8_t> marks_;
};

/// Which half of the spin-1 split carries the offset indices.
enum class Sign : int { plus = 1, minus = -1 };

inline int to_int(Sign s) { return static_cast<int>(s); }

/// Request for an offset operation U_M(-pi/2) with M_1 = sign * M.
class MSpec {
public:
    /// Throws std::out_of_range unless 1 <= m <= 2^(n-1).
    MSpec(std::size_t m, Sign sign, std::size_t n);

    std::size_t m() const { return m_; }
    Sign sign() const { return sign_; }
    std::size_t n() const { return n_; }
    /// Exponent of the leading binary digit: 2^k <= M < 2^(k+1).
    std::size_t leading_exponent() const { return leading_; }
    /// b_l for l = 0..k-1.
    const std::vector<std::uint8_t>& lower_bits() const { return lower_bits_; }
    /// 2^k + sum b_l 2^l.
    std::size_t reconstruct() const;

    friend bool operator==(const MSpec&, const MSpec&) = default;

private:
    std::size_t m_;
    Sign sign_;
    std::size_t n_;
    std::size_t leading_;
    std::vector<std::uint8_t> lower_bits_;
};

DiagonalUnitary selective_phase_shift(std::size_t n, std::size_t s, double theta);

/// exp(-i theta D_0^width): phase on every index whose first `width` spins are up.
DiagonalUnitary nonselective_block_shift(std::size_t n, std::size_t width, double theta);

DiagonalUnitary build_uf(const PhaseFunction& f);

/// Ordered product of selective shifts C_x(pi g(x)), x = 0..N-1.
DiagonalUnitary build_uf_product(const PhaseFunction& f);

DiagonalUnitary build_uo(const PhaseFunction& f, double theta);

/// G = number of marked inputs.
std::size_t integer_phase_parameter(const PhaseFunction& f);

/// Indices l whose selective shifts compose U_M: the first M indices of the
/// spin-1-up half for Sign::plus, of the spin-1-down half for Sign::minus.
std::vector<std::size_t> canonical_index_set(const MSpec& spec);

/// Product of C_l(-pi/2) over the canonical index set.
DiagonalUnitary build_um_direct(const MSpec& spec);

/// One factor of a compiled offset circuit.
struct BlockShift {
    std::size_t width;  ///< number of leading spins fixed up
    double theta;
    friend bool operator==(const BlockShift&, const BlockShift&) = default;
};

/// exp(direction * -i pi I_jx) on spin j; direction +1 is exp(-i pi I_x).
struct SpinFlip {
    std::size_t spin;
    int direction;
    friend bool operator==(const SpinFlip&, const SpinFlip&) = default;
};

using CircuitFactor = std::variant<BlockShift, SpinFlip>;

/// Factors listed left to right as an operator product.
struct CompiledCircuit {
    std::size_t n = 0;
    std::vector<CircuitFactor> factors;

    std::size_t block_count() const;
    std::size_t flip_count() const;
};

CompiledCircuit compile_um(const MSpec& spec);

/// Evaluates a compiled circuit on every basis state. Flips act as index
/// permutations with phase -i (direction +1) or +i (direction -1). Throws
/// std::logic_error if the product is not diagonal.
DiagonalUnitary evaluate_circuit(const CompiledCircuit& circuit);

/// compile_um followed by evaluate_circuit.
DiagonalUnitary build_um_compiled(const MSpec& spec);

/// Max |a_r - c b_r| after removing the best common phase c.
double max_phase_error_up_to_global(const DiagonalUnitary& a, const DiagonalUnitary& b);

/// Elementwise max |(UV - VU)_rc| of two diagonal unitaries as dense operators.
double commutator_max_norm(const DiagonalUnitary& u, const DiagonalUnitary& v);

/// Oracle calls charged to a single U_o application.
struct OracleCallCost {
    static constexpr std::size_t uo = 1;
    static constexpr std::size_t uf = 2;
};

}  // namespace nmrparity
