#include "nmrparity/spin_core.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace nmrparity {

namespace {

std::atomic<std::uint64_t> g_dense_multiplies{0};

void check_cap(std::size_t n, std::size_t cap) {
    if (n < 1) {
        throw std::invalid_argument("spin system needs at least one qubit");
    }
    if (n > cap) {
        throw SizeError("n = " + std::to_string(n) + " exceeds the dense-matrix cap of " +
                        std::to_string(cap));
    }
}

Eigen::Matrix2cd half_pauli(Axis axis) {
    using namespace std::complex_literals;
    Eigen::Matrix2cd m;
    switch (axis) {
        case Axis::x:
            m << 0.0, 0.5, 0.5, 0.0;
            break;
        case Axis::y:
            m << 0.0, -0.5i, 0.5i, 0.0;
            break;
        case Axis::z:
            m << 0.5, 0.0, 0.0, -0.5;
            break;
    }
    return m;
}

void check_square(const Matrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0 || !std::has_single_bit(static_cast<std::size_t>(m.rows()))) {
        throw std::invalid_argument(std::string(what) + " must be a non-empty 2^n x 2^n matrix");
    }
}

bool is_hermitian_matrix(const Matrix& m, double tol) {
    const double tol2 = tol * tol;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r <= c; ++r) {
            if (std::norm(m(r, c) - std::conj(m(c, r))) > tol2) {
                return false;
            }
        }
    }
    return true;
}

// u acting on spin `mask` from the left, u^dagger from the right, in place.
void apply_local(const Eigen::Matrix2cd& u, Eigen::Index mask, Matrix& m) {
    const Eigen::Index d = m.rows();
    for (Eigen::Index c = 0; c < d; ++c) {
        for (Eigen::Index r0 = 0; r0 < d; ++r0) {
            if (r0 & mask) {
                continue;
            }
            const Eigen::Index r1 = r0 | mask;
            const Complex a = m(r0, c);
            const Complex b = m(r1, c);
            m(r0, c) = u(0, 0) * a + u(0, 1) * b;
            m(r1, c) = u(1, 0) * a + u(1, 1) * b;
        }
    }
    const Complex v00 = std::conj(u(0, 0));
    const Complex v01 = std::conj(u(1, 0));
    const Complex v10 = std::conj(u(0, 1));
    const Complex v11 = std::conj(u(1, 1));
    for (Eigen::Index c0 = 0; c0 < d; ++c0) {
        if (c0 & mask) {
            continue;
        }
        const Eigen::Index c1 = c0 | mask;
        for (Eigen::Index r = 0; r < d; ++r) {
            const Complex a = m(r, c0);
            const Complex b = m(r, c1);
            m(r, c0) = a * v00 + b * v10;
            m(r, c1) = a * v01 + b * v11;
        }
    }
}

}  // namespace

SpinSystemConfig::SpinSystemConfig(std::size_t n, std::size_t cap)
    : SpinSystemConfig(n, std::vector<double>(n, 1.0), cap) {}

SpinSystemConfig::SpinSystemConfig(std::size_t n, std::vector<double> epsilon, std::size_t cap)
    : n_(n), epsilon_(std::move(epsilon)) {
    check_cap(n, cap);
    if (epsilon_.size() != n_) {
        throw std::invalid_argument("expected " + std::to_string(n_) + " polarizations, got " +
                                    std::to_string(epsilon_.size()));
    }
    for (double e : epsilon_) {
        if (!(e > 0.0) || !std::isfinite(e)) {
            throw std::invalid_argument("polarizations must be finite and positive");
        }
    }
}

double SpinSystemConfig::epsilon(std::size_t k) const {
    if (k < 1 || k > n_) {
        throw std::out_of_range("spin index " + std::to_string(k) + " outside 1.." +
                                std::to_string(n_));
    }
    return epsilon_[k - 1];
}

Operator::Operator(Matrix m) : m_(std::move(m)) { check_square(m_, "operator"); }

bool Operator::is_hermitian(double tol) const { return is_hermitian_matrix(m_, tol); }

DiagonalUnitary::DiagonalUnitary(std::vector<Complex> phases) : phases_(std::move(phases)) {
    if (phases_.empty() || !std::has_single_bit(phases_.size())) {
        throw std::invalid_argument("diagonal unitary length must be a power of two");
    }
    for (const Complex& p : phases_) {
        if (std::abs(std::abs(p) - 1.0) > kStructuralTolerance) {
            throw std::invalid_argument("diagonal unitary entries must have unit modulus");
        }
    }
}

DiagonalUnitary DiagonalUnitary::identity(std::size_t dim) {
    return DiagonalUnitary(std::vector<Complex>(dim, Complex{1.0, 0.0}));
}

DiagonalUnitary DiagonalUnitary::adjoint() const {
    std::vector<Complex> out(phases_.size());
    for (std::size_t r = 0; r < phases_.size(); ++r) {
        out[r] = std::conj(phases_[r]);
    }
    return DiagonalUnitary(std::move(out));
}

DiagonalUnitary DiagonalUnitary::operator*(const DiagonalUnitary& other) const {
    if (other.dim() != dim()) {
        throw std::invalid_argument("diagonal unitary dimension mismatch");
    }
    std::vector<Complex> out(phases_.size());
    for (std::size_t r = 0; r < phases_.size(); ++r) {
        out[r] = phases_[r] * other.phases_[r];
    }
    return DiagonalUnitary(std::move(out));
}

Operator DiagonalUnitary::to_operator() const {
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim()), static_cast<Eigen::Index>(dim()));
    for (std::size_t r = 0; r < dim(); ++r) {
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r)) = phases_[r];
    }
    return Operator(std::move(m));
}

DeviationState::DeviationState(Matrix rho) : rho_(std::move(rho)) {
    check_square(rho_, "deviation state");
    if (!is_hermitian_matrix(rho_, kStructuralTolerance)) {
        throw std::invalid_argument("deviation state is not Hermitian");
    }
    if (std::abs(rho_.trace()) > kStructuralTolerance) {
        throw std::invalid_argument("deviation state is not traceless");
    }
}

DeviationState DeviationState::zero(std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    return DeviationState(Matrix::Zero(d, d));
}

bool DeviationState::is_diagonal(double tol) const {
    for (Eigen::Index c = 0; c < rho_.cols(); ++c) {
        for (Eigen::Index r = 0; r < rho_.rows(); ++r) {
            if (r != c && std::abs(rho_(r, c)) > tol) {
                return false;
            }
        }
    }
    return true;
}

UnitNumberTable::UnitNumberTable(std::size_t n) : n_(n) {
    check_cap(n, 8 * sizeof(std::size_t) - 2);
    values_.resize(n_ * dim());
    for (std::size_t k = 1; k <= n_; ++k) {
        for (std::size_t s = 0; s < dim(); ++s) {
            values_[(k - 1) * dim() + s] = 1 - 2 * static_cast<int>(spin_bit(n_, k, s));
        }
    }
}

Operator identity_operator(std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    return Operator(Matrix::Identity(d, d));
}

Matrix kron_factors(const std::vector<Eigen::Matrix2cd>& factors) {
    if (factors.empty()) {
        throw std::invalid_argument("kron_factors needs at least one factor");
    }
    Matrix out = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) {
        Matrix next = Eigen::kroneckerProduct(out, factors[i]).eval();
        out = std::move(next);
    }
    return out;
}

Operator build_spin_operator(const SpinSystemConfig& config, std::size_t k, Axis axis) {
    return build_spin_operator(config.n(), k, axis);
}

Operator build_spin_operator(std::size_t n, std::size_t k, Axis axis) {
    if (k < 1 || k > n) {
        throw std::out_of_range("spin index " + std::to_string(k) + " outside 1.." +
                                std::to_string(n));
    }
    std::vector<Eigen::Matrix2cd> factors(n, Eigen::Matrix2cd::Identity());
    factors[k - 1] = half_pauli(axis);
    return Operator(kron_factors(factors));
}

UnitNumberTable unit_number_table(std::size_t n) { return UnitNumberTable(n); }

Operator build_ds(const UnitNumberTable& table, std::size_t s) {
    if (s >= table.dim()) {
        throw std::out_of_range("basis index " + std::to_string(s) + " outside 0.." +
                                std::to_string(table.dim() - 1));
    }
    const auto d = static_cast<Eigen::Index>(table.dim());
    Matrix m = Matrix::Zero(d, d);
    m(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s)) = 1.0;
    return Operator(std::move(m));
}

Operator build_ds_tensor(const UnitNumberTable& table, std::size_t s) {
    if (s >= table.dim()) {
        throw std::out_of_range("basis index " + std::to_string(s) + " outside 0.." +
                                std::to_string(table.dim() - 1));
    }
    const Eigen::Matrix2cd iz = half_pauli(Axis::z);
    std::vector<Eigen::Matrix2cd> factors;
    factors.reserve(table.n());
    for (std::size_t k = 1; k <= table.n(); ++k) {
        factors.emplace_back(0.5 * Eigen::Matrix2cd::Identity() +
                             static_cast<double>(table(k, s)) * iz);
    }
    return Operator(kron_factors(factors));
}

int coherence_order(std::size_t r, std::size_t c) {
    return std::popcount(c) - std::popcount(r);
}

DeviationState conjugate(const DiagonalUnitary& u, const DeviationState& state) {
    if (u.dim() != state.dim()) {
        throw std::invalid_argument("conjugate: dimension mismatch");
    }
    const auto d = static_cast<Eigen::Index>(state.dim());
    const auto& ph = u.phases();
    Matrix out(d, d);
    for (Eigen::Index c = 0; c < d; ++c) {
        const Complex right = std::conj(ph[static_cast<std::size_t>(c)]);
        for (Eigen::Index r = 0; r < d; ++r) {
            out(r, c) = ph[static_cast<std::size_t>(r)] * right * state.rho()(r, c);
        }
    }
    return DeviationState(std::move(out));
}

DeviationState conjugate(const Operator& u, const DeviationState& state) {
    if (u.dim() != state.dim()) {
        throw std::invalid_argument("conjugate: dimension mismatch");
    }
    g_dense_multiplies.fetch_add(1, std::memory_order_relaxed);
    Matrix out = u.matrix() * state.rho() * u.matrix().adjoint();
    return DeviationState(std::move(out));
}

DeviationState conjugate_local(const Eigen::Matrix2cd& u, std::size_t n, std::size_t k,
                               const DeviationState& state) {
    if (state.dim() != (std::size_t{1} << n)) {
        throw std::invalid_argument("conjugate_local: dimension mismatch");
    }
    if (k < 1 || k > n) {
        throw std::out_of_range("spin index " + std::to_string(k) + " outside 1.." +
                                std::to_string(n));
    }
    Matrix m = state.rho();
    apply_local(u, static_cast<Eigen::Index>(spin_mask(n, k)), m);
    return DeviationState(std::move(m));
}

DeviationState conjugate_each(const Eigen::Matrix2cd& u, std::size_t n,
                              const DeviationState& state) {
    if (state.dim() != (std::size_t{1} << n)) {
        throw std::invalid_argument("conjugate_each: dimension mismatch");
    }
    Matrix m = state.rho();
    for (std::size_t k = 1; k <= n; ++k) {
        apply_local(u, static_cast<Eigen::Index>(spin_mask(n, k)), m);
    }
    return DeviationState(std::move(m));
}

std::uint64_t dense_multiply_count() { return g_dense_multiplies.load(std::memory_order_relaxed); }

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    }
    if (a.size() == 0) {
        return 0.0;
    }
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace nmrparity
