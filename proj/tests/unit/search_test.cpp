#include "qsearch/search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

#include "oracles.hpp"
#include "qsearch/multipod.hpp"
#include "qsearch/reflections.hpp"

using namespace qsearch;

namespace {

constexpr double kPi = std::numbers::pi;

ExperimentConfig make_config(int d, int n, std::size_t marked, SearchSchedule schedule, FGate f,
                             DiffusionPath path = DiffusionPath::direct) {
    QuditShape shape(d, n);
    return ExperimentConfig{shape, BasisIndex::from_flat(shape, marked), schedule, std::move(f), path};
}

ExperimentConfig deterministic_config(int d, int n, std::size_t marked = 0) {
    const QuditShape shape(d, n);
    return make_config(d, n, marked, deterministic_schedule(shape.N()), householder_f(d));
}

double max_step_diff(const Trajectory& a, const Trajectory& b) {
    EXPECT_EQ(a.populations.size(), b.populations.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < std::min(a.populations.size(), b.populations.size()); ++k) {
        worst = std::max(worst, std::abs(a.populations[k] - b.populations[k]));
    }
    return worst;
}

}  // namespace

TEST(run_search, five_qutrits_reach_unit_population) {
    const Trajectory t = run_search(deterministic_config(3, 5, 121));
    ASSERT_EQ(t.populations.size(), 13u);
    EXPECT_GE(t.populations[12], 0.999);
    EXPECT_NEAR(t.populations[12], 1.0, 1e-12);
    EXPECT_EQ(t.peak_step, 12);
    EXPECT_NEAR(t.populations[0], 1.0 / 243.0, 1e-12);
}

TEST(run_search, two_qubits_one_step) {
    const Trajectory t = run_search(make_config(2, 2, 3, canonical_schedule(4), householder_f(2)));
    ASSERT_EQ(t.populations.size(), 3u);
    EXPECT_NEAR(t.populations[1], 1.0, 1e-12);
    EXPECT_EQ(t.peak_step, 1);
}

TEST(run_search, zero_steps) {
    const Trajectory t = run_search(make_config(3, 2, 4, custom_schedule(9, kPi, 0), dft(3)));
    ASSERT_EQ(t.populations.size(), 1u);
    EXPECT_NEAR(t.populations[0], 1.0 / 9.0, 1e-12);
    EXPECT_EQ(t.peak_step, 0);
}

TEST(run_search, config_validation) {
    QuditShape shape(3, 2);
    EXPECT_THROW(run_search(ExperimentConfig{shape, BasisIndex{{}, 9}, deterministic_schedule(9), householder_f(3)}),
                 std::out_of_range);
    EXPECT_THROW(run_search(ExperimentConfig{shape, BasisIndex{{}, 1}, deterministic_schedule(9), householder_f(4)}),
                 std::invalid_argument);
    EXPECT_THROW(run_search(ExperimentConfig{shape, BasisIndex{{}, 1}, deterministic_schedule(8), householder_f(3)}),
                 std::invalid_argument);
    EXPECT_THROW(run_extended(deterministic_config(3, 2), -1), std::invalid_argument);
    EXPECT_THROW(run_search(ExperimentConfig{shape, BasisIndex{{}, 1}, deterministic_schedule(9),
                                             FGate::custom(Eigen::MatrixXcd::Identity(3, 3) * 2.0)}),
                 std::invalid_argument);
}

TEST(run_search, unrecorded_keeps_endpoints_and_peak) {
    ExperimentConfig cfg = deterministic_config(3, 4, 7);
    const Trajectory full = run_search(cfg);
    cfg.record = false;
    const Trajectory brief = run_search(cfg);
    ASSERT_EQ(brief.populations.size(), 2u);
    EXPECT_EQ(brief.populations.front(), full.populations.front());
    EXPECT_EQ(brief.populations.back(), full.populations.back());
    EXPECT_EQ(brief.peak_step, full.peak_step);
    EXPECT_EQ(brief.peak_population, full.peak_population);
}

TEST(run_extended, oscillates_after_peak) {
    const ExperimentConfig cfg = deterministic_config(3, 5, 0);
    const Trajectory t = run_extended(cfg, 40 - cfg.schedule.steps);
    ASSERT_EQ(t.populations.size(), 41u);
    EXPECT_EQ(t.peak_step, 12);
    const double tail_min = *std::min_element(t.populations.begin() + 13, t.populations.end());
    EXPECT_LT(tail_min, 0.05);
}

TEST(run_extended, zero_extra_matches_run_search) {
    const ExperimentConfig cfg = deterministic_config(3, 3, 5);
    EXPECT_EQ(max_step_diff(run_extended(cfg, 0), run_search(cfg)), 0.0);
}

TEST(run_extended, single_qubit_is_periodic) {
    const Trajectory t = run_extended(make_config(2, 1, 1, canonical_schedule(2), householder_f(2)), 30);
    for (std::size_t k = 0; k + 3 < t.populations.size(); ++k) {
        ASSERT_NEAR(t.populations[k + 3], t.populations[k], 1e-9);
    }
}

TEST(dense_grover_matrix, four_elements_hand_matrix) {
    const ExperimentConfig cfg = make_config(2, 2, 1, canonical_schedule(4), householder_f(2));
    const Eigen::MatrixXcd g = dense_grover_matrix(cfg);
    const Eigen::VectorXcd axis = oracle::to_eigen(prepare_uniform(cfg.shape, cfg.f.gate()));
    EXPECT_LT(oracle::max_abs_diff(g, oracle::grover(axis, 1, kPi, kPi)), 1e-12);
}

TEST(dense_grover_matrix, unitary_at_81) {
    const Eigen::MatrixXcd g = dense_grover_matrix(deterministic_config(3, 4, 40));
    EXPECT_LT(oracle::max_abs_diff(g.adjoint() * g, Eigen::MatrixXcd::Identity(81, 81)), 1e-10);
}

TEST(dense_grover_matrix, matrix_power_matches_kernel) {
    ExperimentConfig cfg = deterministic_config(3, 4, 13);
    cfg.schedule = custom_schedule(81, cfg.schedule.phi, 12);
    const Trajectory kernel = run_search(cfg);
    const Trajectory dense = run_dense(cfg, dense_grover_matrix(cfg), 12);
    EXPECT_LT(max_step_diff(kernel, dense), 1e-10);
}

TEST(dense_grover_matrix, rejects_large_registers) {
    EXPECT_THROW(dense_grover_matrix(deterministic_config(2, 11)), std::invalid_argument);
}

TEST(run_search, marked_element_independence) {
    const QuditShape shape(3, 4);
    for (const FGate& f : {householder_f(3), dft(3)}) {
        const Trajectory ref = run_search(make_config(3, 4, 0, deterministic_schedule(shape.N()), f));
        for (std::size_t marked : {1u, 40u, 80u}) {
            const Trajectory t = run_search(make_config(3, 4, marked, deterministic_schedule(shape.N()), f));
            EXPECT_LT(max_step_diff(ref, t), 1e-9);
        }
    }
}

TEST(run_search, diffusion_paths_agree) {
    for (auto [d, n] : {std::pair{3, 4}, std::pair{2, 6}, std::pair{5, 2}}) {
        const QuditShape shape(d, n);
        const SearchSchedule schedule = deterministic_schedule(shape.N());
        const FGate f = random_phase_f(d, 99);
        const Trajectory direct = run_search(make_config(d, n, 3, schedule, f, DiffusionPath::direct));
        const Trajectory gates = run_search(make_config(d, n, 3, schedule, f, DiffusionPath::via_gates));
        EXPECT_LT(max_step_diff(direct, gates), 1e-9);
    }
}

TEST(run_search, trajectory_invariant_across_f_choices) {
    const QuditShape shape(3, 3);
    for (const SearchSchedule& schedule : {deterministic_schedule(27), canonical_schedule(27)}) {
        const Trajectory ref = run_search(make_config(3, 3, 11, schedule, householder_f(3)));
        for (const FGate& f : {dft(3), random_phase_f(3, 1), random_phase_f(3, 2024)}) {
            EXPECT_LT(max_step_diff(ref, run_search(make_config(3, 3, 11, schedule, f))), 1e-9) << f.label();
        }
    }
}

TEST(run_search, matches_two_state_model) {
    for (auto [d, n] : {std::pair{3, 2}, std::pair{3, 3}, std::pair{3, 4}, std::pair{3, 5}}) {
        const QuditShape shape(d, n);
        for (const SearchSchedule& base : {deterministic_schedule(shape.N()), canonical_schedule(shape.N())}) {
            const Trajectory t = run_extended(make_config(d, n, 2, base, dft(d)), 10);
            for (std::size_t k = 0; k < t.populations.size(); ++k) {
                ASSERT_NEAR(t.populations[k], predicted_population(shape.N(), static_cast<int>(k), base.phi), 1e-9);
            }
        }
    }
}

TEST(run_search, norm_preserved_over_long_run) {
    const QuditShape shape(3, 5);
    const SearchSchedule schedule = deterministic_schedule(shape.N());
    const StateVector axis = prepare_uniform(shape, householder_f(3).gate());
    StateVector s = axis;
    const BasisIndex marked = BasisIndex::from_flat(shape, 200);
    for (int step = 0; step < 100; ++step) {
        grover_step(s, marked, schedule.phi, schedule.phi, axis);
    }
    EXPECT_LT(std::abs(s.norm() - 1.0), 1e-9);
}

TEST(run_search, deterministic_guarantee_for_every_database_size) {
    // A single N-level register exercises sizes that are not prime powers.
    for (std::size_t N = 4; N <= 1024; ++N) {
        const QuditShape shape(static_cast<int>(N), 1);
        const SearchSchedule schedule = deterministic_schedule(N);
        const StateVector axis(shape, std::vector<Complex>(N, Complex(1.0 / std::sqrt(static_cast<double>(N)))));
        StateVector s = axis;
        const BasisIndex marked = BasisIndex::from_flat(shape, N / 3);
        double peak = 0.0;
        for (int step = 0; step < schedule.steps; ++step) {
            grover_step(s, marked, schedule.phi, schedule.phi, axis);
            peak = std::max(peak, population(s, marked));
        }
        ASSERT_GE(population(s, marked), 1.0 - 1e-6) << "N=" << N;
        ASSERT_LE(peak, 1.0 + 1e-12) << "N=" << N;
    }
}

TEST(run_search, peak_never_exceeds_one) {
    for (auto [d, n] : {std::pair{2, 3}, std::pair{3, 3}, std::pair{4, 3}, std::pair{5, 3}}) {
        const QuditShape shape(d, n);
        const Trajectory t = run_extended(make_config(d, n, 0, canonical_schedule(shape.N()), dft(d)), 30);
        EXPECT_LE(t.peak_population, 1.0 + 1e-12);
        for (double p : t.populations) {
            ASSERT_GE(p, 0.0);
            ASSERT_LE(p, 1.0 + 1e-12);
        }
    }
}

TEST(run_search, pulse_derived_gate_drives_the_search) {
    const FPulseReport pulse = verify_f_pulse(3);
    const Trajectory t = run_search(make_config(3, 5, 77, deterministic_schedule(243), pulse.gate));
    EXPECT_GE(t.populations[12], 0.999);
    EXPECT_EQ(t.peak_step, 12);
}
