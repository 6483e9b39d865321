#include "qsearch/schedule.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qsearch {
namespace {

constexpr double kPi = std::numbers::pi;

void require_database(std::uint64_t N) {
    if (N < 2) {
        throw std::invalid_argument("database size must satisfy N >= 2, got N=" + std::to_string(N));
    }
}

double beta_of(std::uint64_t N) {
    return std::asin(1.0 / std::sqrt(static_cast<double>(N)));
}

SearchSchedule base_schedule(std::uint64_t N) {
    require_database(N);
    SearchSchedule s;
    s.N = N;
    s.beta = beta_of(N);
    const double x = kPi / (4.0 * s.beta) + 0.5;
    s.j = static_cast<int>(std::floor(x));
    const double below = std::floor(std::nextafter(x, -std::numeric_limits<double>::infinity()));
    const double above = std::floor(std::nextafter(x, std::numeric_limits<double>::infinity()));
    s.floor_unstable = below != above;
    return s;
}

}  // namespace

std::string_view to_string(ScheduleMode mode) {
    switch (mode) {
        case ScheduleMode::deterministic:
            return "deterministic";
        case ScheduleMode::canonical_pi:
            return "pi";
        case ScheduleMode::custom:
            return "custom";
    }
    return "unknown";
}

double deterministic_phase(std::uint64_t N, int k) {
    require_database(N);
    if (k < 1) {
        throw std::invalid_argument("deterministic phase needs k >= 1, got k=" + std::to_string(k));
    }
    double ratio = std::sin(kPi / (4.0 * k + 2.0)) / std::sin(beta_of(N));
    // Equality cases (e.g. N=4, k=1) can overshoot 1 by an ulp or two.
    if (ratio > 1.0 && ratio <= 1.0 + 1e-12) {
        ratio = 1.0;
    }
    if (!(ratio <= 1.0)) {
        throw std::domain_error("no deterministic phase for N=" + std::to_string(N) + " with k=" +
                                std::to_string(k) + " iterations (too few steps)");
    }
    return 2.0 * std::asin(ratio);
}

SearchSchedule deterministic_schedule(std::uint64_t N) {
    SearchSchedule s = base_schedule(N);
    s.mode = ScheduleMode::deterministic;
    const double up = std::abs((2.0 * s.j + 1.0) * s.beta - kPi / 2.0);
    const double down = std::abs((2.0 * s.j - 1.0) * s.beta - kPi / 2.0);
    s.steps = up <= down ? s.j : s.j + 1;
    s.phi = deterministic_phase(N, s.steps);
    return s;
}

SearchSchedule canonical_schedule(std::uint64_t N) {
    SearchSchedule s = base_schedule(N);
    s.mode = ScheduleMode::canonical_pi;
    s.phi = kPi;
    const long steps = std::lround(kPi / 4.0 * std::sqrt(static_cast<double>(N)));
    s.steps = static_cast<int>(std::max(1L, steps));
    return s;
}

SearchSchedule custom_schedule(std::uint64_t N, double phi, int steps) {
    if (steps < 0) {
        throw std::invalid_argument("step count must be >= 0, got " + std::to_string(steps));
    }
    if (!std::isfinite(phi)) {
        throw std::invalid_argument("phase must be finite");
    }
    SearchSchedule s = base_schedule(N);
    s.mode = ScheduleMode::custom;
    s.phi = phi;
    s.steps = steps;
    return s;
}

double predicted_population(std::uint64_t N, int k, double phi) {
    require_database(N);
    if (k < 0) {
        throw std::invalid_argument("step count must be >= 0, got " + std::to_string(k));
    }
    const double beta = beta_of(N);
    if (phi == kPi) {
        const double s = std::sin((2.0 * k + 1.0) * beta);
        return s * s;
    }
    // Orthonormal frame {|m>, |m_perp>} with |s> = sin(beta)|m> + cos(beta)|m_perp>.
    using C = std::complex<double>;
    const double sb = std::sin(beta);
    const double cb = std::cos(beta);
    const C f = std::polar(1.0, phi) - 1.0;
    const C e = std::polar(1.0, phi);
    // Diffusion D = 1 + f |s><s|; oracle O = diag(e, 1); G = D O.
    const std::array<C, 4> diffusion{1.0 + f * sb * sb, f * sb * cb, f * sb * cb, 1.0 + f * cb * cb};
    const std::array<C, 4> g{diffusion[0] * e, diffusion[1], diffusion[2] * e, diffusion[3]};
    C a = sb;
    C b = cb;
    for (int step = 0; step < k; ++step) {
        const C na = g[0] * a + g[1] * b;
        const C nb = g[2] * a + g[3] * b;
        a = na;
        b = nb;
    }
    return std::norm(a);
}

double wrap_phase(double phi) {
    double r = std::remainder(phi, 2.0 * kPi);
    if (r <= -kPi) {
        r += 2.0 * kPi;
    }
    return r;
}

}  // namespace qsearch
