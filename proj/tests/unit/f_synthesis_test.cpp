#include "qsearch/f_synthesis.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

#include "oracles.hpp"

using namespace qsearch;

TEST(coupling_design, frozen_values) {
    // Reference values evaluated with 30-digit arithmetic.
    const CouplingDesign d4 = coupling_design(4);
    for (double w : d4.omegas) {
        EXPECT_NEAR(w, 0.5, 1e-15);
    }
    const CouplingDesign d3 = coupling_design(3);
    EXPECT_NEAR(d3.omegas[0], 0.459700843380983061, 1e-15);
    EXPECT_NEAR(d3.omegas[1], 0.627963030199554376, 1e-15);
    EXPECT_NEAR(d3.omegas[2], 0.627963030199554376, 1e-15);
    const CouplingDesign d2 = coupling_design(2);
    EXPECT_NEAR(d2.omegas[0], 0.382683432365089772, 1e-15);
    EXPECT_NEAR(d2.omegas[1], 0.923879532511286756, 1e-15);
    EXPECT_THROW(coupling_design(1), std::invalid_argument);
}

TEST(coupling_design, unit_rms) {
    for (int d = 2; d <= 32; ++d) {
        double acc = 0.0;
        for (double w : coupling_design(d).omegas) {
            EXPECT_GE(w, 0.0);
            acc += w * w;
        }
        EXPECT_NEAR(acc, 1.0, 1e-12) << d;
    }
}

TEST(householder_f, examples) {
    const FGate f2 = householder_f(2);
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(f2.matrix()(0, 0) - r), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(f2.matrix()(1, 0) + r), 0.0, 1e-15);

    const FGate f3 = householder_f(3);
    for (int q = 0; q < 3; ++q) {
        EXPECT_NEAR(std::abs(f3.matrix()(q, 0)), 1.0 / std::sqrt(3.0), 1e-15);
    }
    EXPECT_EQ(f3.kind(), FKind::householder);
    EXPECT_THROW(householder_f(1), std::invalid_argument);
}

TEST(householder_f, real_symmetric_involution) {
    for (int d = 2; d <= 16; ++d) {
        const Eigen::MatrixXcd f = householder_f(d).matrix();
        EXPECT_EQ(f.imag().cwiseAbs().maxCoeff(), 0.0);
        EXPECT_LT(oracle::max_abs_diff(f, f.transpose()), 1e-15);
        EXPECT_LT(oracle::max_abs_diff(f * f, Eigen::MatrixXcd::Identity(d, d)), 1e-12) << d;
    }
}

TEST(dft, examples) {
    EXPECT_LT(oracle::max_abs_diff(dft(2).matrix(), oracle::hadamard()), 1e-15);
    EXPECT_NEAR(std::abs(dft(4).matrix()(1, 1) - Complex(0.0, 0.5)), 0.0, 1e-15);
    for (int d = 2; d <= 16; ++d) {
        const Eigen::MatrixXcd f = dft(d).matrix();
        EXPECT_LT(oracle::max_abs_diff(f * f.adjoint(), Eigen::MatrixXcd::Identity(d, d)), 1e-12) << d;
        EXPECT_LT((f.cwiseAbs().array() - 1.0 / std::sqrt(static_cast<double>(d))).abs().maxCoeff(), 1e-15);
    }
}

TEST(random_phase_f, deterministic_given_seed) {
    const FGate a = random_phase_f(5, 1234);
    const FGate b = random_phase_f(5, 1234);
    EXPECT_EQ(oracle::max_abs_diff(a.matrix(), b.matrix()), 0.0);
    EXPECT_GT(oracle::max_abs_diff(a.matrix(), random_phase_f(5, 1235).matrix()), 1e-3);
    EXPECT_EQ(a.label(), "random:1234");
}

TEST(random_phase_f, first_column_keeps_equal_moduli) {
    for (std::uint64_t seed : {0ull, 1ull, 42ull, 0xdeadbeefull}) {
        for (int d = 2; d <= 16; ++d) {
            const Eigen::MatrixXcd f = random_phase_f(d, seed).matrix();
            for (int q = 0; q < d; ++q) {
                ASSERT_NEAR(std::abs(f(q, 0)), 1.0 / std::sqrt(static_cast<double>(d)), 1e-12);
            }
        }
    }
}

TEST(random_phase_f, relative_phases_vary) {
    // The left diagonal factor changes the phases inside the first column.
    const Eigen::MatrixXcd h = householder_f(4).matrix();
    const Eigen::MatrixXcd r = random_phase_f(4, 3).matrix();
    const Complex ratio_h = h(1, 0) / h(0, 0);
    const Complex ratio_r = r(1, 0) / r(0, 0);
    EXPECT_GT(std::abs(ratio_h - ratio_r), 1e-3);
}

TEST(validate_f, examples) {
    EXPECT_TRUE(validate_f(householder_f(5)).passed);
    EXPECT_TRUE(validate_f(dft(7)).passed);

    const FValidation id = validate_f(FGate::custom(Eigen::MatrixXcd::Identity(3, 3)));
    EXPECT_FALSE(id.passed);
    EXPECT_LT(id.unitarity_defect, 1e-15);
    // Moduli (1, 0, 0): the zero entries miss 3^{-1/2} by the full amount.
    EXPECT_NEAR(id.column_moduli_deviation, 1.0 / std::sqrt(3.0), 1e-15);

    Eigen::MatrixXcd scaled = 2.0 * dft(3).matrix();
    EXPECT_FALSE(validate_f(scaled).passed);

    EXPECT_THROW(validate_f(Eigen::MatrixXcd::Identity(2, 3)), std::invalid_argument);
    EXPECT_THROW(FGate::custom(Eigen::MatrixXcd::Identity(3, 2)), std::invalid_argument);
}

TEST(validate_f, every_kind_every_dimension) {
    for (int d = 2; d <= 16; ++d) {
        for (const FGate& f : {householder_f(d), dft(d), random_phase_f(d, 42)}) {
            const FValidation v = validate_f(f);
            EXPECT_LT(v.unitarity_defect, 1e-10) << f.label() << " d=" << d;
            EXPECT_LT(v.column_moduli_deviation, 1e-12) << f.label() << " d=" << d;
            EXPECT_TRUE(v.passed);
        }
    }
}

TEST(f_from_spec, parses_known_kinds) {
    EXPECT_EQ(f_from_spec("householder", 3).kind(), FKind::householder);
    EXPECT_EQ(f_from_spec("dft", 3).kind(), FKind::dft);
    EXPECT_EQ(f_from_spec("random:42", 3).seed(), 42u);
    EXPECT_THROW(f_from_spec("random:", 3), std::invalid_argument);
    EXPECT_THROW(f_from_spec("random:4x", 3), std::invalid_argument);
    EXPECT_THROW(f_from_spec("hadamard", 3), std::invalid_argument);
}

TEST(register_superposition, equal_moduli) {
    for (int n = 1; n <= 5; ++n) {
        QuditShape shape(3, n);
        for (const FGate& f : {householder_f(3), dft(3), random_phase_f(3, 8)}) {
            const StateVector s = prepare_uniform(shape, f.gate());
            const double target = 1.0 / std::sqrt(static_cast<double>(shape.N()));
            for (std::size_t x = 0; x < s.size(); ++x) {
                ASSERT_NEAR(std::abs(s[x]), target, 1e-12);
            }
        }
    }
}
