#include "nmrparity/oracle_ops.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

#include "test_util.hpp"

using namespace nmrparity;
using nmrparity::testing::dense_exp_minus_i;
using nmrparity::testing::random_phase_function;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

void expect_phases(const DiagonalUnitary& u, std::initializer_list<Complex> expected) {
    ASSERT_EQ(u.dim(), expected.size());
    std::size_t i = 0;
    for (Complex e : expected) {
        EXPECT_LT(std::abs(u.phases()[i] - e), 1e-15) << "index " << i;
        ++i;
    }
}

double max_diff(const DiagonalUnitary& a, const DiagonalUnitary& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        worst = std::max(worst, std::abs(a.phases()[i] - b.phases()[i]));
    }
    return worst;
}

// Dense product of the circuit factors, each built from spin operators and a
// matrix exponential rather than from index bookkeeping.
Matrix dense_circuit(const CompiledCircuit& c) {
    const std::size_t n = c.n;
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << n);
    Matrix product = Matrix::Identity(d, d);
    for (const CircuitFactor& factor : c.factors) {
        Matrix m;
        if (const auto* b = std::get_if<BlockShift>(&factor)) {
            Matrix proj = Matrix::Identity(d, d);
            for (std::size_t k = 1; k <= b->width; ++k) {
                proj = proj * (0.5 * Matrix::Identity(d, d) +
                               build_spin_operator(n, k, Axis::z).matrix());
            }
            m = dense_exp_minus_i(proj, b->theta);
        } else {
            const auto& flip = std::get<SpinFlip>(factor);
            m = dense_exp_minus_i(build_spin_operator(n, flip.spin, Axis::x).matrix(),
                                  flip.direction * kPi);
        }
        product = product * m;
    }
    return product;
}

}  // namespace

TEST(PhaseFunction, factories) {
    EXPECT_EQ(PhaseFunction::constant_plus(2).marks(), (std::vector<std::uint8_t>{0, 0, 0, 0}));
    EXPECT_EQ(PhaseFunction::constant_minus(2).marks(), (std::vector<std::uint8_t>{1, 1, 1, 1}));
    EXPECT_EQ(PhaseFunction::single(2, 2).marks(), (std::vector<std::uint8_t>{0, 0, 1, 0}));
    EXPECT_EQ(PhaseFunction::from_marked(3, {1, 6}), PhaseFunction(3, {0, 1, 0, 0, 0, 0, 1, 0}));
    EXPECT_EQ(PhaseFunction::single(2, 2).f(2), -1);
    EXPECT_EQ(PhaseFunction::single(2, 2).f(1), 1);
}

TEST(PhaseFunction, validates) {
    EXPECT_THROW(PhaseFunction(2, {0, 0, 0}), std::invalid_argument);
    EXPECT_THROW(PhaseFunction(1, {0, 2}), std::invalid_argument);
    EXPECT_THROW(PhaseFunction::single(2, 4), std::out_of_range);
}

TEST(SelectivePhaseShift, examples) {
    expect_phases(selective_phase_shift(2, 0, kPi), {-1.0, 1.0, 1.0, 1.0});
    expect_phases(selective_phase_shift(2, 3, 0.0), {1.0, 1.0, 1.0, 1.0});
    expect_phases(selective_phase_shift(1, 1, -kPi / 2), {1.0, kI});
    EXPECT_THROW(selective_phase_shift(2, 4, 1.0), std::out_of_range);
}

TEST(SelectivePhaseShift, equals_exponential_of_projector) {
    for (std::size_t n = 1; n <= 4; ++n) {
        const UnitNumberTable t = unit_number_table(n);
        for (std::size_t s = 0; s < t.dim(); ++s) {
            const Matrix dense = dense_exp_minus_i(build_ds(t, s).matrix(), 0.83);
            EXPECT_LT(max_abs_diff(selective_phase_shift(n, s, 0.83).to_operator().matrix(), dense),
                      1e-12);
        }
    }
}

TEST(BlockShift, examples) {
    expect_phases(nonselective_block_shift(2, 1, -kPi / 2), {kI, kI, 1.0, 1.0});
    expect_phases(nonselective_block_shift(3, 3, 0.0), {1, 1, 1, 1, 1, 1, 1, 1});
    EXPECT_LT(max_diff(nonselective_block_shift(3, 3, 0.4), selective_phase_shift(3, 0, 0.4)), 1e-15);
    EXPECT_THROW(nonselective_block_shift(3, 0, 1.0), std::out_of_range);
    EXPECT_THROW(nonselective_block_shift(3, 4, 1.0), std::out_of_range);
}

TEST(Uf, examples) {
    expect_phases(build_uf(PhaseFunction::constant_plus(2)), {1, 1, 1, 1});
    expect_phases(build_uf(PhaseFunction::single(2, 2)), {1, 1, -1, 1});
}

TEST(Uf, matches_product_and_squares_to_identity) {
    std::mt19937_64 rng(3);
    for (std::size_t n = 1; n <= 6; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            const PhaseFunction f = random_phase_function(n, rng);
            const DiagonalUnitary uf = build_uf(f);
            EXPECT_LT(max_diff(uf, build_uf_product(f)), 1e-12);
            EXPECT_LT(max_diff(uf * uf, DiagonalUnitary::identity(f.dim())), 1e-12);
            for (std::size_t x = 0; x < f.dim(); ++x) {
                EXPECT_LT(std::abs(uf.phases()[x] - static_cast<double>(f.f(x))), 1e-12);
            }
        }
    }
}

TEST(Uo, examples) {
    expect_phases(build_uo(PhaseFunction::from_marked(2, {1, 3}), kPi / 2), {1, -kI, 1, -kI});
    expect_phases(build_uo(PhaseFunction::constant_plus(2), 1.3), {1, 1, 1, 1});
}

TEST(Uo, pi_gives_uf_and_angles_add) {
    std::mt19937_64 rng(4);
    for (std::size_t n = 1; n <= 6; ++n) {
        const PhaseFunction f = random_phase_function(n, rng);
        EXPECT_LT(max_diff(build_uo(f, kPi), build_uf(f)), 1e-12);
        EXPECT_LT(max_diff(build_uo(f, 0.3) * build_uo(f, 1.1), build_uo(f, 1.4)), 1e-12);
    }
}

TEST(IntegerPhaseParameter, examples) {
    EXPECT_EQ(integer_phase_parameter(PhaseFunction::constant_plus(3)), 0u);
    EXPECT_EQ(integer_phase_parameter(PhaseFunction::constant_minus(3)), 8u);
    EXPECT_EQ(integer_phase_parameter(PhaseFunction::from_marked(2, {1, 2})), 2u);
}

TEST(MSpec, decomposition) {
    const MSpec s(11, Sign::plus, 5);
    EXPECT_EQ(s.leading_exponent(), 3u);
    EXPECT_EQ(s.lower_bits(), (std::vector<std::uint8_t>{1, 1, 0}));
    EXPECT_EQ(s.reconstruct(), 11u);
    EXPECT_EQ(MSpec(1, Sign::minus, 1).leading_exponent(), 0u);
    EXPECT_TRUE(MSpec(1, Sign::minus, 1).lower_bits().empty());
}

TEST(MSpec, range) {
    EXPECT_THROW(MSpec(0, Sign::plus, 3), std::out_of_range);
    EXPECT_THROW(MSpec(5, Sign::plus, 3), std::out_of_range);
    EXPECT_NO_THROW(MSpec(4, Sign::minus, 3));
    for (std::size_t n = 1; n <= 10; ++n) {
        for (std::size_t m = 1; m <= (std::size_t{1} << (n - 1)); ++m) {
            EXPECT_EQ(MSpec(m, Sign::plus, n).reconstruct(), m);
        }
    }
}

TEST(CanonicalSet, examples) {
    EXPECT_EQ(canonical_index_set(MSpec(1, Sign::plus, 3)), (std::vector<std::size_t>{0}));
    EXPECT_EQ(canonical_index_set(MSpec(2, Sign::plus, 2)), (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(canonical_index_set(MSpec(2, Sign::minus, 2)), (std::vector<std::size_t>{2, 3}));
}

TEST(CanonicalSet, reproduces_m1_for_every_spec) {
    for (std::size_t n = 1; n <= 8; ++n) {
        const UnitNumberTable t = unit_number_table(n);
        for (std::size_t m = 1; m <= t.dim() / 2; ++m) {
            for (Sign sign : {Sign::plus, Sign::minus}) {
                const auto set = canonical_index_set(MSpec(m, sign, n));
                ASSERT_EQ(set.size(), m);
                long m1 = 0;
                for (std::size_t l : set) {
                    EXPECT_EQ(t(1, l), to_int(sign));
                    m1 += t(1, l);
                }
                EXPECT_EQ(m1, to_int(sign) * static_cast<long>(m));
            }
        }
    }
}

TEST(UmDirect, examples) {
    expect_phases(build_um_direct(MSpec(1, Sign::plus, 2)), {kI, 1, 1, 1});
    expect_phases(build_um_direct(MSpec(2, Sign::plus, 2)), {kI, kI, 1, 1});
    expect_phases(build_um_direct(MSpec(1, Sign::minus, 2)), {1, 1, kI, 1});
}

TEST(UmDirect, equals_product_of_selective_shifts) {
    for (std::size_t n = 1; n <= 5; ++n) {
        for (std::size_t m = 1; m <= (std::size_t{1} << (n - 1)); ++m) {
            for (Sign sign : {Sign::plus, Sign::minus}) {
                const MSpec spec(m, sign, n);
                DiagonalUnitary product = DiagonalUnitary::identity(std::size_t{1} << n);
                for (std::size_t l : canonical_index_set(spec)) {
                    product = product * selective_phase_shift(n, l, -kPi / 2);
                }
                EXPECT_LT(max_diff(product, build_um_direct(spec)), 1e-15);
            }
        }
    }
}

TEST(CompileUm, power_of_two_is_single_block) {
    for (std::size_t n = 1; n <= 6; ++n) {
        for (std::size_t k = 0; k < n; ++k) {
            const CompiledCircuit c = compile_um(MSpec(std::size_t{1} << k, Sign::plus, n));
            ASSERT_EQ(c.factors.size(), 1u);
            EXPECT_EQ(std::get<BlockShift>(c.factors[0]), (BlockShift{n - k, -kPi / 2}));
        }
    }
}

TEST(CompileUm, three_term_example) {
    // M = 2^3 + 2^1 + 2^0 on five spins.
    const CompiledCircuit c = compile_um(MSpec(11, Sign::plus, 5));
    const std::vector<CircuitFactor> expected{
        BlockShift{2, -kPi / 2}, SpinFlip{2, 1},  BlockShift{4, -kPi / 2}, SpinFlip{4, 1},
        BlockShift{5, -kPi / 2}, SpinFlip{4, -1}, SpinFlip{2, -1},
    };
    EXPECT_EQ(c.factors, expected);
    EXPECT_EQ(c.block_count(), 3u);
    EXPECT_EQ(c.flip_count(), 4u);
}

TEST(CompileUm, compiled_equals_direct_exhaustively) {
    for (std::size_t n = 1; n <= 7; ++n) {
        for (std::size_t m = 1; m <= (std::size_t{1} << (n - 1)); ++m) {
            for (Sign sign : {Sign::plus, Sign::minus}) {
                const MSpec spec(m, sign, n);
                const CompiledCircuit c = compile_um(spec);
                EXPECT_LE(c.factors.size(), 3 * n + 1) << "n=" << n << " m=" << m;
                EXPECT_EQ(c.block_count(), static_cast<std::size_t>(std::popcount(m)));
                EXPECT_LT(max_phase_error_up_to_global(build_um_compiled(spec), build_um_direct(spec)),
                          1e-12)
                    << "n=" << n << " m=" << m;
            }
        }
    }
}

TEST(CompileUm, dense_evaluation_agrees_with_permutation_route) {
    for (std::size_t n = 1; n <= 5; ++n) {
        for (std::size_t m = 1; m <= (std::size_t{1} << (n - 1)); ++m) {
            for (Sign sign : {Sign::plus, Sign::minus}) {
                const CompiledCircuit c = compile_um(MSpec(m, sign, n));
                EXPECT_LT(max_abs_diff(dense_circuit(c), evaluate_circuit(c).to_operator().matrix()),
                          1e-12)
                    << "n=" << n << " m=" << m;
            }
        }
    }
}

TEST(EvaluateCircuit, rejects_non_diagonal_product) {
    CompiledCircuit c{2, {SpinFlip{1, 1}}};
    EXPECT_THROW(evaluate_circuit(c), std::logic_error);
}

TEST(GlobalPhase, tolerates_common_phase_only) {
    const DiagonalUnitary a({Complex{1.0, 0.0}, kI});
    const DiagonalUnitary b({-kI, Complex{1.0, 0.0}});
    EXPECT_LT(max_phase_error_up_to_global(a, b), 1e-15);
    const DiagonalUnitary c({Complex{1.0, 0.0}, Complex{1.0, 0.0}});
    EXPECT_GT(max_phase_error_up_to_global(a, c), 0.5);
}

TEST(Commutation, offset_commutes_with_oracle) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (std::size_t n = 1; n <= 6; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            const PhaseFunction f = random_phase_function(n, rng);
            const std::size_t m = 1 + rng() % (std::size_t{1} << (n - 1));
            const MSpec spec(m, trial % 2 ? Sign::minus : Sign::plus, n);
            const DiagonalUnitary uo = build_uo(f, angle(rng));
            EXPECT_LT(commutator_max_norm(build_um_direct(spec), uo), 1e-12);
            EXPECT_LT(commutator_max_norm(build_um_compiled(spec), uo), 1e-12);
        }
    }
}

TEST(Commutation, detects_non_commuting_dense_pair) {
    // Sanity check of the norm itself on a hand-built pair.
    const Matrix x = build_spin_operator(1, 1, Axis::x).matrix();
    const Matrix z = build_spin_operator(1, 1, Axis::z).matrix();
    EXPECT_GT((x * z - z * x).cwiseAbs().maxCoeff(), 0.4);
}

TEST(OracleCallCost, convention) {
    EXPECT_EQ(OracleCallCost::uo, 1u);
    EXPECT_EQ(OracleCallCost::uf, 2u);
}
