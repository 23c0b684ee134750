#include "nmrparity/oracle_ops.hpp"

#include <algorithm>
#include <bit>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nmrparity {

namespace {

Complex phase_of(double theta) { return std::polar(1.0, -theta); }

void check_index(std::size_t n, std::size_t s) {
    if (s >= (std::size_t{1} << n)) {
        throw std::out_of_range("basis index " + std::to_string(s) + " outside 0.." +
                                std::to_string((std::size_t{1} << n) - 1));
    }
}

}  // namespace

PhaseFunction::PhaseFunction(std::size_t n, std::vector<std::uint8_t> marks)
    : n_(n), marks_(std::move(marks)) {
    if (n_ < 1 || n_ >= 8 * sizeof(std::size_t) - 1) {
        throw std::invalid_argument("phase function needs 1 <= n");
    }
    if (marks_.size() != (std::size_t{1} << n_)) {
        throw std::invalid_argument("phase function needs exactly 2^n marks");
    }
    for (auto& m : marks_) {
        if (m > 1) {
            throw std::invalid_argument("marks must be 0 or 1");
        }
    }
}

PhaseFunction PhaseFunction::constant_plus(std::size_t n) {
    return PhaseFunction(n, std::vector<std::uint8_t>(std::size_t{1} << n, 0));
}

PhaseFunction PhaseFunction::constant_minus(std::size_t n) {
    return PhaseFunction(n, std::vector<std::uint8_t>(std::size_t{1} << n, 1));
}

PhaseFunction PhaseFunction::single(std::size_t n, std::size_t x0) {
    return from_marked(n, {x0});
}

PhaseFunction PhaseFunction::from_marked(std::size_t n, const std::vector<std::size_t>& marked) {
    std::vector<std::uint8_t> marks(std::size_t{1} << n, 0);
    for (std::size_t x : marked) {
        check_index(n, x);
        marks[x] = 1;
    }
    return PhaseFunction(n, std::move(marks));
}

MSpec::MSpec(std::size_t m, Sign sign, std::size_t n) : m_(m), sign_(sign), n_(n) {
    if (n_ < 1 || n_ >= 8 * sizeof(std::size_t) - 1) {
        throw std::invalid_argument("MSpec needs n >= 1");
    }
    const std::size_t half = std::size_t{1} << (n_ - 1);
    if (m_ < 1 || m_ > half) {
        throw std::out_of_range("M = " + std::to_string(m_) + " outside 1.." +
                                std::to_string(half));
    }
    leading_ = static_cast<std::size_t>(std::bit_width(m_) - 1);
    lower_bits_.resize(leading_);
    for (std::size_t l = 0; l < leading_; ++l) {
        lower_bits_[l] = static_cast<std::uint8_t>((m_ >> l) & 1U);
    }
}

std::size_t MSpec::reconstruct() const {
    std::size_t m = std::size_t{1} << leading_;
    for (std::size_t l = 0; l < lower_bits_.size(); ++l) {
        m += static_cast<std::size_t>(lower_bits_[l]) << l;
    }
    return m;
}

DiagonalUnitary selective_phase_shift(std::size_t n, std::size_t s, double theta) {
    check_index(n, s);
    std::vector<Complex> phases(std::size_t{1} << n, Complex{1.0, 0.0});
    phases[s] = phase_of(theta);
    return DiagonalUnitary(std::move(phases));
}

DiagonalUnitary nonselective_block_shift(std::size_t n, std::size_t width, double theta) {
    if (width < 1 || width > n) {
        throw std::out_of_range("block width " + std::to_string(width) + " outside 1.." +
                                std::to_string(n));
    }
    const std::size_t dim = std::size_t{1} << n;
    const Complex p = phase_of(theta);
    std::vector<Complex> phases(dim, Complex{1.0, 0.0});
    // Leading `width` bits zero <=> r < 2^(n - width).
    const std::size_t block = std::size_t{1} << (n - width);
    for (std::size_t r = 0; r < block; ++r) {
        phases[r] = p;
    }
    return DiagonalUnitary(std::move(phases));
}

DiagonalUnitary build_uf(const PhaseFunction& f) {
    std::vector<Complex> phases(f.dim());
    for (std::size_t x = 0; x < f.dim(); ++x) {
        phases[x] = Complex{static_cast<double>(f.f(x)), 0.0};
    }
    return DiagonalUnitary(std::move(phases));
}

DiagonalUnitary build_uf_product(const PhaseFunction& f) {
    DiagonalUnitary u = DiagonalUnitary::identity(f.dim());
    for (std::size_t x = 0; x < f.dim(); ++x) {
        u = u * selective_phase_shift(f.n(), x, std::numbers::pi * f.g(x));
    }
    return u;
}

DiagonalUnitary build_uo(const PhaseFunction& f, double theta) {
    std::vector<Complex> phases(f.dim());
    const Complex marked = phase_of(theta);
    for (std::size_t x = 0; x < f.dim(); ++x) {
        phases[x] = f.g(x) ? marked : Complex{1.0, 0.0};
    }
    return DiagonalUnitary(std::move(phases));
}

std::size_t integer_phase_parameter(const PhaseFunction& f) {
    return static_cast<std::size_t>(std::count(f.marks().begin(), f.marks().end(), 1));
}

std::vector<std::size_t> canonical_index_set(const MSpec& spec) {
    const std::size_t base = spec.sign() == Sign::plus ? 0 : (std::size_t{1} << (spec.n() - 1));
    std::vector<std::size_t> set(spec.m());
    for (std::size_t i = 0; i < spec.m(); ++i) {
        set[i] = base + i;
    }
    return set;
}

DiagonalUnitary build_um_direct(const MSpec& spec) {
    DiagonalUnitary u = DiagonalUnitary::identity(std::size_t{1} << spec.n());
    for (std::size_t l : canonical_index_set(spec)) {
        u = u * selective_phase_shift(spec.n(), l, -std::numbers::pi / 2);
    }
    return u;
}

std::size_t CompiledCircuit::block_count() const {
    return static_cast<std::size_t>(std::count_if(factors.begin(), factors.end(), [](const auto& f) {
        return std::holds_alternative<BlockShift>(f);
    }));
}

std::size_t CompiledCircuit::flip_count() const { return factors.size() - block_count(); }

CompiledCircuit compile_um(const MSpec& spec) {
    const std::size_t n = spec.n();
    const std::size_t k = spec.leading_exponent();
    const double angle = -std::numbers::pi / 2;

    CompiledCircuit circuit;
    circuit.n = n;
    auto& out = circuit.factors;

    // The minus branch is the plus circuit mirrored onto the spin-1-down half.
    if (spec.sign() == Sign::minus) {
        out.emplace_back(SpinFlip{1, +1});
    }

    // Leading block covers [0, 2^k). Each further set bit l adds a 2^l block
    // placed after the blocks already laid down, reached by flipping the spin
    // that owns the previous block's bit. Zero bits contribute nothing.
    out.emplace_back(BlockShift{n - k, angle});
    std::vector<std::size_t> flipped;
    std::size_t prev = k;
    for (std::size_t l = k; l-- > 0;) {
        if (!spec.lower_bits()[l]) {
            continue;
        }
        out.emplace_back(SpinFlip{n - prev, +1});
        flipped.push_back(n - prev);
        out.emplace_back(BlockShift{n - l, angle});
        prev = l;
    }
    for (auto it = flipped.rbegin(); it != flipped.rend(); ++it) {
        out.emplace_back(SpinFlip{*it, -1});
    }

    if (spec.sign() == Sign::minus) {
        out.emplace_back(SpinFlip{1, -1});
    }
    return circuit;
}

DiagonalUnitary evaluate_circuit(const CompiledCircuit& circuit) {
    const std::size_t n = circuit.n;
    const std::size_t dim = std::size_t{1} << n;
    const Complex minus_i{0.0, -1.0};
    const Complex plus_i{0.0, 1.0};

    std::vector<Complex> phases(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        std::size_t idx = x;
        Complex amp{1.0, 0.0};
        for (auto it = circuit.factors.rbegin(); it != circuit.factors.rend(); ++it) {
            if (const auto* b = std::get_if<BlockShift>(&*it)) {
                if (b->width < 1 || b->width > n) {
                    throw std::out_of_range("block width outside 1..n");
                }
                if ((idx >> (n - b->width)) == 0) {
                    amp *= phase_of(b->theta);
                }
            } else {
                const auto& flip = std::get<SpinFlip>(*it);
                if (flip.spin < 1 || flip.spin > n) {
                    throw std::out_of_range("flip spin outside 1..n");
                }
                idx ^= spin_mask(n, flip.spin);
                amp *= flip.direction > 0 ? minus_i : plus_i;
            }
        }
        if (idx != x) {
            throw std::logic_error("compiled circuit is not diagonal");
        }
        phases[x] = amp;
    }
    return DiagonalUnitary(std::move(phases));
}

DiagonalUnitary build_um_compiled(const MSpec& spec) { return evaluate_circuit(compile_um(spec)); }

double max_phase_error_up_to_global(const DiagonalUnitary& a, const DiagonalUnitary& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("phase comparison: dimension mismatch");
    }
    Complex overlap{0.0, 0.0};
    for (std::size_t r = 0; r < a.dim(); ++r) {
        overlap += a[r] * std::conj(b[r]);
    }
    const Complex c = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex{1.0, 0.0};
    double worst = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r) {
        worst = std::max(worst, std::abs(a[r] - c * b[r]));
    }
    return worst;
}

double commutator_max_norm(const DiagonalUnitary& u, const DiagonalUnitary& v) {
    const Matrix mu = u.to_operator().matrix();
    const Matrix mv = v.to_operator().matrix();
    const Matrix comm = mu * mv - mv * mu;
    return comm.size() == 0 ? 0.0 : comm.cwiseAbs().maxCoeff();
}

}  // namespace nmrparity
