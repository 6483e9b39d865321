#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qsearch/f_synthesis.hpp"
#include "qsearch/qudit_state.hpp"
#include "qsearch/schedule.hpp"

namespace qsearch {

enum class DiffusionPath { direct, via_gates };

std::string_view to_string(DiffusionPath path);

struct ExperimentConfig {
    QuditShape shape;
    BasisIndex marked;
    SearchSchedule schedule;
    FGate f;
    DiffusionPath diffusion = DiffusionPath::direct;
    /// When false only the initial and final populations are kept; the peak
    /// is still tracked over every step.
    bool record = true;

    void validate() const;
};

/// Marked-state population vs number of Grover applications. Entry k is the
/// population after k iterations; entry 0 is the prepared superposition.
struct Trajectory {
    std::vector<double> populations;
    /// Smallest step attaining the maximum population.
    int peak_step = 0;
    double peak_population = 0.0;
};

/// Prepares F^{(x)n}|0> and applies schedule.steps Grover iterations.
Trajectory run_search(const ExperimentConfig& cfg);

/// As run_search, continuing for extra_steps iterations past schedule.steps.
Trajectory run_extended(const ExperimentConfig& cfg, int extra_steps);

/// Dense N x N Grover operator assembled column by column from grover_step.
/// Rejects N > kMaxDenseStates.
inline constexpr std::size_t kMaxDenseStates = 1024;
Eigen::MatrixXcd dense_grover_matrix(const ExperimentConfig& cfg);

/// Trajectory obtained by repeated multiplication with the dense operator.
Trajectory run_dense(const ExperimentConfig& cfg, const Eigen::MatrixXcd& grover, int steps);

}  // namespace qsearch
