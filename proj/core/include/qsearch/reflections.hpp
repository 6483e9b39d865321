#pragma once

#include <Eigen/Dense>

#include "qsearch/qudit_state.hpp"

namespace qsearch {

/// A single-qudit unitary, validated on construction.
class LocalGate {
  public:
    static constexpr double kUnitarityTolerance = 1e-10;

    explicit LocalGate(Eigen::MatrixXcd matrix, double tolerance = kUnitarityTolerance);

    int dim() const { return static_cast<int>(matrix_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    LocalGate adjoint() const;

  private:
    Eigen::MatrixXcd matrix_;
};

/// max |G^dagger G - I| over all entries.
double unitarity_defect(const Eigen::MatrixXcd& m);

/// Generalized Householder reflection M(chi, phi) = 1 + (e^{i phi} - 1)|chi><chi|.
class Reflection {
  public:
    Reflection(StateVector axis, double phase);

    const StateVector& axis() const { return axis_; }
    double phase() const { return phase_; }
    Reflection inverse() const { return Reflection(axis_, -phase_); }

  private:
    StateVector axis_;
    double phase_;
};

// All kernels below update the state in place.

/// O(N) rank-1 update s += (e^{i phi} - 1) <axis|s> axis.
void apply_reflection(StateVector& s, const Reflection& r);

/// Multiplies the marked amplitude by e^{i phi}; no other amplitude is touched.
void apply_oracle(StateVector& s, const BasisIndex& marked, double phi);

/// Applies g to qudit k, i.e. (1 x ... x g x ... x 1) s, by strided d-vector sweeps.
void apply_local_gate(StateVector& s, const LocalGate& g, int k);

/// Applies g to every qudit of the register.
void apply_to_all(StateVector& s, const LocalGate& g);

/// F^{(x)n} |0...0>, the axis of the diffusion reflection.
StateVector prepare_uniform(const QuditShape& shape, const LocalGate& f);

/// M(aver; phi) as F^{(x)n} M(0; phi) (F^dagger)^{(x)n}: 2n local-gate sweeps.
void diffusion_via_gates(StateVector& s, const LocalGate& f, double phi);

/// M(aver; phi) as a single rank-1 update about a precomputed unit axis.
void diffusion_direct(StateVector& s, const StateVector& axis, double phi);

/// One Grover iteration G = M(aver; phi_a) M(marked; phi_m): oracle first, then diffusion.
void grover_step(StateVector& s, const BasisIndex& marked, double phi_m, double phi_a, const StateVector& axis);

/// Same iteration with the diffusion built from local gates.
void grover_step_via_gates(StateVector& s, const BasisIndex& marked, double phi_m, double phi_a, const LocalGate& f);

}  // namespace qsearch
