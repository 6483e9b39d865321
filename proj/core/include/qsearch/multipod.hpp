#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "qsearch/f_synthesis.hpp"
#include "qsearch/qudit_state.hpp"

namespace qsearch {

// Pulse-level model of a qudit in a multipod linkage: d degenerate states
// coupled to one ancilla |c> by simultaneous fields with a common envelope.
//
// Convention (hbar = 1, RWA):
//   H(t) = (A / (2 I_f)) f(t) sum_k (w_k |k><c| + h.c.) + Delta |c><c|
// where w = couplings / |couplings| and I_f = integral of f. For the sech
// envelope I_f = pi T, so the coupling prefactor is A / (2 pi T).

enum class PulseShape { sech, gaussian };

std::string_view to_string(PulseShape shape);

/// Raised when the adaptive integrator cannot meet its error target.
class IntegrationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when a pulse leaves population in the ancilla state.
class LeakageError : public std::runtime_error {
  public:
    LeakageError(const std::string& what, double leakage) : std::runtime_error(what), leakage_(leakage) {}
    double leakage() const { return leakage_; }

  private:
    double leakage_;
};

struct PulseJob {
    static constexpr double kMinWindow = 20.0;

    /// Complex single-photon Rabi amplitudes, one per qudit level. Only the
    /// direction matters; the strength is set by rms_area.
    std::vector<Complex> couplings;
    /// Ancilla detuning in units of 1/T.
    double detuning = 0.0;
    double width = 1.0;
    PulseShape shape = PulseShape::sech;
    double rms_area = 2.0 * 3.14159265358979323846;
    /// Half-width of the integration window in units of T.
    double t_max = kMinWindow;
    double tolerance = 1e-12;

    void validate() const;
    int levels() const { return static_cast<int>(couplings.size()); }
    /// Envelope f(t), peak value 1.
    double envelope(double t) const;
    /// Integral of f over the real line.
    double envelope_area() const;
};

/// (d+1) x (d+1) propagator in the basis |0>, ..., |d-1>, |c>.
struct Propagator {
    Eigen::MatrixXcd matrix;
    /// Accepted integrator steps summed over all columns.
    long steps = 0;

    int levels() const { return static_cast<int>(matrix.rows()) - 1; }
    Eigen::MatrixXcd qudit_block() const;
    /// max_k |U_{c,k}| over the qudit columns.
    double leakage() const;
};

struct MorrisShoreBasis {
    Eigen::VectorXcd bright;
    /// d x (d-1), orthonormal columns spanning the complement of bright.
    Eigen::MatrixXcd dark;
    double rms_rabi = 0.0;
};

/// Bright state sum_k Omega_k |k> / Omega, the state the ancilla couples to
/// under H; its orthogonal complement is dark.
MorrisShoreBasis morris_shore(const std::vector<Complex>& couplings);

/// Integrates each basis column over [-t_max T, t_max T].
Propagator propagate(const PulseJob& job);

struct ReflectionFit {
    static constexpr double kLeakageThreshold = 1e-4;

    Eigen::VectorXcd axis;
    /// Reflection phase, in (-pi, pi].
    double phase = 0.0;
    /// Fitted global phase gamma.
    double global_phase = 0.0;
    /// max |B - e^{i gamma} M(chi, phi)| over the qudit block B.
    double residual = 0.0;
    double leakage = 0.0;
};

/// Fits the qudit block of U to e^{i gamma} M(chi, phi) with chi the
/// normalized couplings. Throws LeakageError when leakage >= threshold.
ReflectionFit extract_reflection(const Propagator& u, const std::vector<Complex>& couplings,
                                 double leakage_threshold = ReflectionFit::kLeakageThreshold);

/// pi - 2 arctan(Delta T), the sech-pulse reflection phase at area 2 pi.
double analytic_sech_phase(double detuning_times_width);

/// Whether a sech area has the reflection form 2(2l+1)pi; `l` receives the
/// nearest l. A relative mismatch of up to 1e-6 is accepted.
bool sech_area_is_reflection(double area, int* l = nullptr);

struct FPulseReport {
    static constexpr double kThreshold = 1e-5;

    FGate gate;
    /// max |B - e^{i gamma} householder_f(d)|
    double deviation = 0.0;
    double global_phase = 0.0;
    double leakage = 0.0;
    bool passed = false;
};

/// Resonant 2 pi sech pulse with coupling_design(d), compared with householder_f(d).
FPulseReport verify_f_pulse(int d);

/// PulseJob for the F gate: coupling_design(d), Delta = 0, A = 2 pi, sech.
PulseJob f_pulse_job(int d);

}  // namespace qsearch
