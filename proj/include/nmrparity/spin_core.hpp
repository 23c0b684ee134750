#pragma once

// Dense spin-1/2 algebra on n work qubits.
//
// Index convention used everywhere in this library: spin 1 is the most
// significant bit of a computational basis index, so for n = 3 the index
// 5 = 0b101 has spin 1 and spin 3 in the "down" state (bit = 1) and spin 2
// "up" (bit = 0). Bit value 0 is m = +1/2.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace nmrparity {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Absolute tolerance for structural invariants (Hermiticity, unit modulus, trace).
inline constexpr double kStructuralTolerance = 1e-12;

/// Default cap on the number of work qubits for dense N x N storage.
inline constexpr std::size_t kDefaultQubitCap = 12;

/// Thrown when a requested system exceeds the configured dense-matrix cap.
class SizeError : public std::length_error {
public:
    using std::length_error::length_error;
};

enum class Axis { x, y, z };

class SpinSystemConfig {
public:
    /// All polarizations set to 1.
    explicit SpinSystemConfig(std::size_t n, std::size_t cap = kDefaultQubitCap);
    SpinSystemConfig(std::size_t n, std::vector<double> epsilon,
                     std::size_t cap = kDefaultQubitCap);

    std::size_t n() const { return n_; }
    std::size_t dim() const { return std::size_t{1} << n_; }
    /// Polarization of spin k, 1-based.
    double epsilon(std::size_t k) const;
    const std::vector<double>& epsilons() const { return epsilon_; }

private:
    std::size_t n_;
    std::vector<double> epsilon_;
};

/// Dense N x N operator on the work-qubit space.
class Operator {
public:
    explicit Operator(Matrix m);

    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    const Matrix& matrix() const { return m_; }
    bool is_hermitian(double tol = kStructuralTolerance) const;

private:
    Matrix m_;
};

/// Diagonal unitary stored as its N phases.
class DiagonalUnitary {
public:
    /// Throws std::invalid_argument unless every |phase| = 1 within tolerance.
    explicit DiagonalUnitary(std::vector<Complex> phases);
    static DiagonalUnitary identity(std::size_t dim);

    std::size_t dim() const { return phases_.size(); }
    const std::vector<Complex>& phases() const { return phases_; }
    Complex operator[](std::size_t r) const { return phases_[r]; }

    DiagonalUnitary adjoint() const;
    /// Elementwise product; diagonal unitaries always commute.
    DiagonalUnitary operator*(const DiagonalUnitary& other) const;
    Operator to_operator() const;

private:
    std::vector<Complex> phases_;
};

/// Traceless Hermitian deviation density operator.
class DeviationState {
public:
    /// Validates Hermiticity and zero trace to kStructuralTolerance.
    explicit DeviationState(Matrix rho);
    static DeviationState zero(std::size_t dim);

    std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
    const Matrix& rho() const { return rho_; }
    Complex operator()(std::size_t r, std::size_t c) const { return rho_(r, c); }
    bool is_diagonal(double tol = kStructuralTolerance) const;

private:
    Matrix rho_;
};

/// Unit-number representation a_k^s of the computational basis.
class UnitNumberTable {
public:
    explicit UnitNumberTable(std::size_t n);

    std::size_t n() const { return n_; }
    std::size_t dim() const { return std::size_t{1} << n_; }
    /// a_k^s for 1-based spin k.
    int operator()(std::size_t k, std::size_t s) const { return values_[(k - 1) * dim() + s]; }

private:
    std::size_t n_;
    std::vector<int> values_;
};

/// Bit of spin k (1-based, spin 1 = MSB) in basis index s.
inline unsigned spin_bit(std::size_t n, std::size_t k, std::size_t s) {
    return static_cast<unsigned>((s >> (n - k)) & 1U);
}

/// Mask selecting spin k's bit in a basis index.
inline std::size_t spin_mask(std::size_t n, std::size_t k) { return std::size_t{1} << (n - k); }

Operator identity_operator(std::size_t dim);

/// E (x) ... (x) sigma_axis/2 (x) ... (x) E with the Pauli factor in slot k.
Operator build_spin_operator(const SpinSystemConfig& config, std::size_t k, Axis axis);

/// Convenience form taking n only.
Operator build_spin_operator(std::size_t n, std::size_t k, Axis axis);

UnitNumberTable unit_number_table(std::size_t n);

/// D_s = diag(0,..,1,..,0), built directly.
Operator build_ds(const UnitNumberTable& table, std::size_t s);

/// D_s as the tensor product (x)_k (E/2 + a_k^s I_kz).
Operator build_ds_tensor(const UnitNumberTable& table, std::size_t s);

/// Change in total magnetic quantum number of |r><c|.
int coherence_order(std::size_t r, std::size_t c);

/// Kronecker product of 2 x 2 factors, factors[0] acting on spin 1.
Matrix kron_factors(const std::vector<Eigen::Matrix2cd>& factors);

/// U rho U^dagger via elementwise phase scaling, O(N^2).
DeviationState conjugate(const DiagonalUnitary& u, const DeviationState& state);

/// U rho U^dagger via dense products, O(N^3). Counted by dense_multiply_count().
DeviationState conjugate(const Operator& u, const DeviationState& state);

/// u_k rho u_k^dagger for a single-spin 2 x 2 unitary acting on spin k, O(N^2).
DeviationState conjugate_local(const Eigen::Matrix2cd& u, std::size_t n, std::size_t k,
                               const DeviationState& state);

/// Number of dense O(N^3) conjugations performed by this process.
/// The same u applied to every spin: (u x ... x u) rho (u x ... x u)^dagger.
DeviationState conjugate_each(const Eigen::Matrix2cd& u, std::size_t n, const DeviationState& state);

std::uint64_t dense_multiply_count();

/// Largest |a_ij - b_ij|.
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace nmrparity
