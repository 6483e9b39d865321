#include "qsearch/multipod.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include <boost/numeric/odeint.hpp>

namespace qsearch {
namespace {

namespace odeint = boost::numeric::odeint;

using OdeState = std::vector<Complex>;

constexpr double kPi = std::numbers::pi;
constexpr long kMaxSteps = 2'000'000;

double rms(const std::vector<Complex>& couplings) {
    double acc = 0.0;
    for (const Complex& c : couplings) {
        acc += std::norm(c);
    }
    return std::sqrt(acc);
}

// i dpsi/dt = H psi with H as documented in the header.
struct MultipodHamiltonian {
    std::vector<Complex> unit;
    double prefactor;
    double detuning;
    const PulseJob* job;

    void operator()(const OdeState& psi, OdeState& dpsi, double t) const {
        const std::size_t d = unit.size();
        const double g = prefactor * job->envelope(t);
        const Complex ancilla = psi[d];
        Complex to_ancilla{0.0, 0.0};
        for (std::size_t k = 0; k < d; ++k) {
            dpsi[k] = Complex{0.0, -1.0} * (g * unit[k] * ancilla);
            to_ancilla += std::conj(unit[k]) * psi[k];
        }
        dpsi[d] = Complex{0.0, -1.0} * (g * to_ancilla + detuning * ancilla);
    }
};

}  // namespace

std::string_view to_string(PulseShape shape) {
    return shape == PulseShape::sech ? "sech" : "gaussian";
}

void PulseJob::validate() const {
    if (couplings.size() < 2) {
        throw std::invalid_argument("pulse job needs at least d=2 couplings, got " + std::to_string(couplings.size()));
    }
    if (rms(couplings) == 0.0) {
        throw std::invalid_argument("pulse job couplings are all zero");
    }
    if (!(width > 0.0) || !std::isfinite(width)) {
        throw std::invalid_argument("pulse width T must be positive");
    }
    if (!(rms_area > 0.0) || !std::isfinite(rms_area)) {
        throw std::invalid_argument("rms pulse area must be positive");
    }
    if (!std::isfinite(detuning)) {
        throw std::invalid_argument("detuning must be finite");
    }
    if (!(t_max >= kMinWindow)) {
        throw std::invalid_argument("integration window t_max must be >= 20 T");
    }
    if (!(tolerance > 0.0)) {
        throw std::invalid_argument("integrator tolerance must be positive");
    }
}

double PulseJob::envelope(double t) const {
    const double x = t / width;
    if (shape == PulseShape::sech) {
        return 1.0 / std::cosh(x);
    }
    return std::exp(-x * x);
}

double PulseJob::envelope_area() const {
    return shape == PulseShape::sech ? kPi * width : std::sqrt(kPi) * width;
}

Eigen::MatrixXcd Propagator::qudit_block() const {
    const int d = levels();
    return matrix.topLeftCorner(d, d);
}

double Propagator::leakage() const {
    const int d = levels();
    return matrix.row(d).head(d).cwiseAbs().maxCoeff();
}

MorrisShoreBasis morris_shore(const std::vector<Complex>& couplings) {
    const double omega = rms(couplings);
    if (couplings.empty() || omega == 0.0) {
        throw std::invalid_argument("Morris-Shore basis needs at least one nonzero coupling");
    }
    const auto d = static_cast<Eigen::Index>(couplings.size());
    MorrisShoreBasis basis;
    basis.rms_rabi = omega;
    basis.bright.resize(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        basis.bright(k) = couplings[static_cast<std::size_t>(k)] / omega;
    }
    // The first Householder-QR column is proportional to bright; the rest
    // complete it to an orthonormal basis.
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Eigen::MatrixXcd(basis.bright));
    const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(d, d);
    basis.dark = q.rightCols(d - 1);
    return basis;
}

Propagator propagate(const PulseJob& job) {
    job.validate();
    const std::size_t d = job.couplings.size();
    const double omega = rms(job.couplings);
    MultipodHamiltonian h{{}, job.rms_area / (2.0 * job.envelope_area()), job.detuning, &job};
    h.unit.reserve(d);
    for (const Complex& c : job.couplings) {
        h.unit.push_back(c / omega);
    }

    auto stepper = odeint::make_controlled(job.tolerance, job.tolerance,
                                           odeint::runge_kutta_fehlberg78<OdeState>());
    const double t0 = -job.t_max * job.width;
    const double t1 = job.t_max * job.width;

    Propagator u;
    u.matrix.resize(static_cast<Eigen::Index>(d + 1), static_cast<Eigen::Index>(d + 1));
    for (std::size_t col = 0; col <= d; ++col) {
        OdeState psi(d + 1, Complex{0.0, 0.0});
        psi[col] = 1.0;
        double t = t0;
        double dt = 1e-2 * job.width;
        long accepted = 0;
        long attempts = 0;
        while (t < t1) {
            if (t + dt > t1) {
                dt = t1 - t;
            }
            if (++attempts > kMaxSteps) {
                std::ostringstream msg;
                msg << "integrator exceeded " << kMaxSteps << " step attempts at t=" << t << " (dt=" << dt
                    << ", column " << col << ")";
                throw IntegrationError(msg.str());
            }
            const double before = dt;
            if (stepper.try_step(h, psi, t, dt) == odeint::success) {
                ++accepted;
            } else if (dt < 1e-14 * job.width || dt >= before) {
                std::ostringstream msg;
                msg << "integrator step size collapsed at t=" << t << " (dt=" << dt << ", column " << col << ")";
                throw IntegrationError(msg.str());
            }
        }
        for (std::size_t row = 0; row <= d; ++row) {
            u.matrix(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = psi[row];
        }
        u.steps += accepted;
    }
    return u;
}

ReflectionFit extract_reflection(const Propagator& u, const std::vector<Complex>& couplings,
                                 double leakage_threshold) {
    const int d = u.levels();
    if (static_cast<int>(couplings.size()) != d) {
        throw std::invalid_argument("coupling count does not match propagator dimension");
    }
    ReflectionFit fit;
    fit.leakage = u.leakage();
    if (!(fit.leakage < leakage_threshold)) {
        std::ostringstream msg;
        msg << "ancilla leakage " << fit.leakage << " exceeds " << leakage_threshold
            << "; the pulse does not return population to the qudit (area not 2(2l+1)pi, or window too short)";
        throw LeakageError(msg.str(), fit.leakage);
    }
    const MorrisShoreBasis basis = morris_shore(couplings);
    const Eigen::MatrixXcd block = u.qudit_block();
    fit.axis = basis.bright;

    // Dark directions carry e^{i gamma}; the bright direction e^{i (gamma + phi)}.
    const Complex bright_eig = basis.bright.dot(block * basis.bright);
    const Complex dark_sum = (basis.dark.adjoint() * block * basis.dark).trace();
    fit.global_phase = std::arg(dark_sum);
    fit.phase = std::arg(bright_eig * std::polar(1.0, -fit.global_phase));
    if (fit.phase <= -kPi) {
        fit.phase += 2.0 * kPi;
    }

    const Eigen::MatrixXcd model =
        std::polar(1.0, fit.global_phase) *
        (Eigen::MatrixXcd::Identity(d, d) + (std::polar(1.0, fit.phase) - 1.0) * basis.bright * basis.bright.adjoint());
    fit.residual = (block - model).cwiseAbs().maxCoeff();
    return fit;
}

double analytic_sech_phase(double detuning_times_width) {
    return kPi - 2.0 * std::atan(detuning_times_width);
}

bool sech_area_is_reflection(double area, int* l) {
    const double cycles = area / (2.0 * kPi);
    const double nearest = std::round(cycles);
    const long odd = std::lround(nearest);
    if (l) {
        *l = static_cast<int>((odd - 1) / 2);
    }
    return odd >= 1 && odd % 2 == 1 && std::abs(cycles - nearest) <= 1e-6 * nearest;
}

PulseJob f_pulse_job(int d) {
    const CouplingDesign design = coupling_design(d);
    PulseJob job;
    job.couplings.assign(design.omegas.begin(), design.omegas.end());
    job.detuning = 0.0;
    job.shape = PulseShape::sech;
    job.rms_area = 2.0 * kPi;
    return job;
}

FPulseReport verify_f_pulse(int d) {
    const PulseJob job = f_pulse_job(d);
    const Propagator u = propagate(job);
    const Eigen::MatrixXcd block = u.qudit_block();
    const Eigen::MatrixXcd target = householder_f(d).matrix();
    const double gamma = std::arg((target.adjoint() * block).trace());
    FPulseReport report{FGate::custom(block)};
    report.global_phase = gamma;
    report.leakage = u.leakage();
    report.deviation = (block - std::polar(1.0, gamma) * target).cwiseAbs().maxCoeff();
    report.passed = report.deviation < FPulseReport::kThreshold && report.leakage < ReflectionFit::kLeakageThreshold;
    return report;
}

}  // namespace qsearch
