#pragma once

#include <cstdint>
#include <string_view>

namespace qsearch {

enum class ScheduleMode { deterministic, canonical_pi, custom };

std::string_view to_string(ScheduleMode mode);

/// Iteration plan for one search: matched phases phi_a = phi_m = phi, applied
/// for `steps` Grover iterations.
struct SearchSchedule {
    std::uint64_t N = 0;
    /// arcsin(N^{-1/2})
    double beta = 0.0;
    /// floor(pi/(4 beta) + 1/2)
    int j = 0;
    double phi = 0.0;
    int steps = 0;
    ScheduleMode mode = ScheduleMode::deterministic;
    /// Set when floor(pi/(4 beta) + 1/2) changes under a +-1 ulp perturbation.
    bool floor_unstable = false;
};

/// Zero-failure schedule.
///
/// steps is j when (2j+1)beta is at least as close to pi/2 as (2j-1)beta,
/// otherwise j+1. The phase is phi = 2 arcsin(sin(pi/(4k+2)) / sin(beta))
/// evaluated at k = steps, so the marked population reaches one after exactly
/// `steps` iterations. For k = j this is the textbook formula.
SearchSchedule deterministic_schedule(std::uint64_t N);

/// phi = pi, steps = max(1, round(pi/4 sqrt(N))).
SearchSchedule canonical_schedule(std::uint64_t N);

/// User-supplied phase and step count; beta and j are still filled in.
SearchSchedule custom_schedule(std::uint64_t N, double phi, int steps);

/// Phase that makes k matched-phase iterations land exactly on the marked state.
/// Requires sin(pi/(4k+2)) <= sin(beta) (k large enough).
double deterministic_phase(std::uint64_t N, int k);

/// Marked population after k iterations from the equal superposition, using
/// the two-dimensional span{|m>, |s>} model. Closed form sin^2((2k+1)beta) for
/// phi == pi, exact 2x2 iteration otherwise.
double predicted_population(std::uint64_t N, int k, double phi);

/// phi reduced to (-pi, pi], for display only.
double wrap_phase(double phi);

}  // namespace qsearch
