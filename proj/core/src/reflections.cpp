#include "qsearch/reflections.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsearch {
namespace {

void require_same_shape(const StateVector& a, const StateVector& b, const char* what) {
    if (!(a.shape() == b.shape())) {
        throw std::invalid_argument(std::string(what) + ": register shapes differ");
    }
}

void rank1_update(StateVector& s, const StateVector& axis, double phi) {
    const Complex factor = std::polar(1.0, phi) - 1.0;
    if (factor == Complex{0.0, 0.0}) {
        return;
    }
    const Complex overlap = inner_product(axis, s);
    const Complex scale = factor * overlap;
    auto out = s.amplitudes();
    auto ax = axis.amplitudes();
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] += scale * ax[i];
    }
}

}  // namespace

double unitarity_defect(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("unitarity check needs a square matrix, got " + std::to_string(m.rows()) + "x" +
                                    std::to_string(m.cols()));
    }
    const Eigen::MatrixXcd gram = m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    return gram.cwiseAbs().maxCoeff();
}

LocalGate::LocalGate(Eigen::MatrixXcd matrix, double tolerance) : matrix_(std::move(matrix)) {
    if (matrix_.rows() < 2 || matrix_.rows() != matrix_.cols()) {
        throw std::invalid_argument("local gate must be a square d x d matrix with d >= 2");
    }
    const double defect = unitarity_defect(matrix_);
    if (!(defect <= tolerance)) {
        throw std::invalid_argument("local gate is not unitary: max |G^dagger G - I| = " + std::to_string(defect));
    }
}

LocalGate LocalGate::adjoint() const {
    return LocalGate(matrix_.adjoint(), std::numeric_limits<double>::infinity());
}

Reflection::Reflection(StateVector axis, double phase) : axis_(std::move(axis)), phase_(phase) {
    const double n = axis_.norm();
    if (std::abs(n - 1.0) > 1e-12) {
        throw std::invalid_argument("reflection axis must be a unit vector, norm=" + std::to_string(n));
    }
}

void apply_reflection(StateVector& s, const Reflection& r) {
    require_same_shape(s, r.axis(), "apply_reflection");
    rank1_update(s, r.axis(), r.phase());
}

void apply_oracle(StateVector& s, const BasisIndex& marked, double phi) {
    if (marked.flat >= s.size()) {
        throw std::out_of_range("marked index " + std::to_string(marked.flat) + " outside [0, " +
                                std::to_string(s.size()) + ")");
    }
    s[marked.flat] *= std::polar(1.0, phi);
}

void apply_local_gate(StateVector& s, const LocalGate& g, int k) {
    const QuditShape& shape = s.shape();
    if (g.dim() != shape.d()) {
        throw std::invalid_argument("gate dimension " + std::to_string(g.dim()) + " does not match d=" +
                                    std::to_string(shape.d()));
    }
    const std::size_t stride = shape.stride(k);
    const std::size_t d = static_cast<std::size_t>(shape.d());
    const std::size_t block = stride * d;
    const Eigen::MatrixXcd& m = g.matrix();
    std::vector<Complex> scratch(d);
    auto amps = s.amplitudes();
    for (std::size_t outer = 0; outer < amps.size(); outer += block) {
        for (std::size_t inner = 0; inner < stride; ++inner) {
            const std::size_t base = outer + inner;
            for (std::size_t q = 0; q < d; ++q) {
                scratch[q] = amps[base + q * stride];
            }
            for (std::size_t r = 0; r < d; ++r) {
                Complex acc{0.0, 0.0};
                for (std::size_t c = 0; c < d; ++c) {
                    acc += m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * scratch[c];
                }
                amps[base + r * stride] = acc;
            }
        }
    }
}

void apply_to_all(StateVector& s, const LocalGate& g) {
    for (int k = 0; k < s.shape().n(); ++k) {
        apply_local_gate(s, g, k);
    }
}

StateVector prepare_uniform(const QuditShape& shape, const LocalGate& f) {
    StateVector s(shape);
    apply_to_all(s, f);
    return s;
}

void diffusion_via_gates(StateVector& s, const LocalGate& f, double phi) {
    apply_to_all(s, f.adjoint());
    apply_oracle(s, BasisIndex{{}, 0}, phi);
    apply_to_all(s, f);
}

void diffusion_direct(StateVector& s, const StateVector& axis, double phi) {
    require_same_shape(s, axis, "diffusion_direct");
    rank1_update(s, axis, phi);
}

void grover_step(StateVector& s, const BasisIndex& marked, double phi_m, double phi_a, const StateVector& axis) {
    apply_oracle(s, marked, phi_m);
    diffusion_direct(s, axis, phi_a);
}

void grover_step_via_gates(StateVector& s, const BasisIndex& marked, double phi_m, double phi_a, const LocalGate& f) {
    apply_oracle(s, marked, phi_m);
    diffusion_via_gates(s, f, phi_a);
}

}  // namespace qsearch
