#include "qsearch/f_synthesis.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace qsearch {
namespace {

void require_levels(int d) {
    if (d < 2) {
        throw std::invalid_argument("F gate needs d >= 2, got d=" + std::to_string(d));
    }
}

double unit_angle(std::uint64_t bits) {
    return 2.0 * std::numbers::pi * std::ldexp(static_cast<double>(bits >> 11), -53);
}

}  // namespace

CouplingDesign coupling_design(int d) {
    require_levels(d);
    const double root = std::sqrt(static_cast<double>(d));
    CouplingDesign design;
    design.omegas.assign(static_cast<std::size_t>(d), std::sqrt(1.0 / (2.0 * (d - root))));
    design.omegas[0] = std::sqrt(0.5 * (1.0 - 1.0 / root));
    return design;
}

std::string_view to_string(FKind kind) {
    switch (kind) {
        case FKind::householder:
            return "householder";
        case FKind::dft:
            return "dft";
        case FKind::random_phase:
            return "random";
        case FKind::custom:
            return "custom";
    }
    return "unknown";
}

FGate::FGate(FKind kind, Eigen::MatrixXcd matrix, std::optional<std::uint64_t> seed)
    : kind_(kind), matrix_(std::move(matrix)), seed_(seed) {}

FGate FGate::custom(Eigen::MatrixXcd matrix) {
    if (matrix.rows() == 0 || matrix.rows() != matrix.cols()) {
        throw std::invalid_argument("F gate must be square, got " + std::to_string(matrix.rows()) + "x" +
                                    std::to_string(matrix.cols()));
    }
    return FGate(FKind::custom, std::move(matrix));
}

std::string FGate::label() const {
    if (kind_ == FKind::random_phase && seed_) {
        return "random:" + std::to_string(*seed_);
    }
    return std::string(to_string(kind_));
}

LocalGate FGate::gate(double tolerance) const {
    return LocalGate(matrix_, tolerance);
}

FGate householder_f(int d) {
    const CouplingDesign design = coupling_design(d);
    Eigen::VectorXcd xi(d);
    for (int k = 0; k < d; ++k) {
        xi(k) = design.omegas[static_cast<std::size_t>(k)];
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(d, d) - 2.0 * xi * xi.adjoint();
    return FGate(FKind::householder, std::move(m));
}

FGate dft(int d) {
    require_levels(d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    Eigen::MatrixXcd m(d, d);
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
            // Reduce j*k mod d first so large d keeps the angle exact.
            const int e = (j * k) % d;
            m(j, k) = std::polar(scale, 2.0 * std::numbers::pi * e / d);
        }
    }
    return FGate(FKind::dft, std::move(m));
}

FGate random_phase_f(int d, std::uint64_t seed) {
    Eigen::MatrixXcd m = householder_f(d).matrix();
    std::mt19937_64 rng(seed);
    Eigen::VectorXcd left(d);
    Eigen::VectorXcd right(d);
    for (int k = 0; k < d; ++k) {
        left(k) = std::polar(1.0, unit_angle(rng()));
    }
    for (int k = 0; k < d; ++k) {
        right(k) = std::polar(1.0, unit_angle(rng()));
    }
    m = left.asDiagonal() * m * right.asDiagonal();
    return FGate(FKind::random_phase, std::move(m), seed);
}

FGate f_from_spec(std::string_view spec, int d) {
    if (spec == "householder") {
        return householder_f(d);
    }
    if (spec == "dft") {
        return dft(d);
    }
    constexpr std::string_view prefix = "random:";
    if (spec.starts_with(prefix)) {
        const std::string_view digits = spec.substr(prefix.size());
        std::uint64_t seed = 0;
        const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), seed);
        if (digits.empty() || ec != std::errc{} || end != digits.data() + digits.size()) {
            throw std::invalid_argument("bad random seed in F spec '" + std::string(spec) + "'");
        }
        return random_phase_f(d, seed);
    }
    throw std::invalid_argument("unknown F spec '" + std::string(spec) +
                                "' (expected householder, dft or random:SEED)");
}

FValidation validate_f(const Eigen::MatrixXcd& matrix) {
    if (matrix.rows() == 0 || matrix.rows() != matrix.cols()) {
        throw std::invalid_argument("validate_f needs a square matrix, got " + std::to_string(matrix.rows()) + "x" +
                                    std::to_string(matrix.cols()));
    }
    FValidation report;
    report.unitarity_defect = unitarity_defect(matrix);
    const double target = 1.0 / std::sqrt(static_cast<double>(matrix.rows()));
    for (Eigen::Index q = 0; q < matrix.rows(); ++q) {
        report.column_moduli_deviation =
            std::max(report.column_moduli_deviation, std::abs(std::abs(matrix(q, 0)) - target));
    }
    report.passed = report.unitarity_defect < FValidation::kThreshold &&
                    report.column_moduli_deviation < FValidation::kThreshold;
    return report;
}

FValidation validate_f(const FGate& f) {
    return validate_f(f.matrix());
}

}  // namespace qsearch
