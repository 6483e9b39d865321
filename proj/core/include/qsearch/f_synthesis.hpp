#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qsearch/reflections.hpp"

namespace qsearch {

/// Real RMS-normalized multipod couplings that make the resonant 2*pi pulse
/// realize a generalized Hadamard: Omega_0 = sqrt((1 - 1/sqrt(d))/2),
/// Omega_{k>0} = sqrt(1/(2(d - sqrt(d)))).
struct CouplingDesign {
    std::vector<double> omegas;
};

CouplingDesign coupling_design(int d);

enum class FKind { householder, dft, random_phase, custom };

std::string_view to_string(FKind kind);

/// A d x d gate whose first column has equal-modulus entries.
///
/// FGate only guarantees a square matrix; the equal-moduli and unitarity
/// properties are checked by validate_f. Use gate() to obtain a LocalGate for
/// simulation, which rejects non-unitary matrices.
class FGate {
  public:
    /// Rejects non-square or empty matrices.
    static FGate custom(Eigen::MatrixXcd matrix);

    FKind kind() const { return kind_; }
    int dim() const { return static_cast<int>(matrix_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    std::optional<std::uint64_t> seed() const { return seed_; }

    /// Human-readable tag: "householder", "dft", "random:SEED" or "custom".
    std::string label() const;

    LocalGate gate(double tolerance = LocalGate::kUnitarityTolerance) const;

  private:
    FGate(FKind kind, Eigen::MatrixXcd matrix, std::optional<std::uint64_t> seed = std::nullopt);

    friend FGate householder_f(int d);
    friend FGate dft(int d);
    friend FGate random_phase_f(int d, std::uint64_t seed);

    FKind kind_;
    Eigen::MatrixXcd matrix_;
    std::optional<std::uint64_t> seed_;
};

/// F = 1 - 2|xi><xi| with xi the coupling design; real symmetric and an involution.
FGate householder_f(int d);

/// Unitary DFT, entries exp(2 pi i j k / d) / sqrt(d).
FGate dft(int d);

/// D_L * householder_f(d) * D_R with seeded diagonal phase matrices.
///
/// Phases are drawn from std::mt19937_64 (bit-exact across platforms); each
/// 64-bit output x maps to the angle 2*pi*(x >> 11)*2^-53. The d left phases
/// come first, then the d right phases.
FGate random_phase_f(int d, std::uint64_t seed);

/// Parses "householder", "dft" or "random:SEED".
FGate f_from_spec(std::string_view spec, int d);

struct FValidation {
    static constexpr double kThreshold = 1e-10;

    double unitarity_defect = 0.0;
    /// max_q | |F_{q0}| - d^{-1/2} |
    double column_moduli_deviation = 0.0;
    bool passed = false;
};

FValidation validate_f(const FGate& f);
FValidation validate_f(const Eigen::MatrixXcd& matrix);

}  // namespace qsearch
