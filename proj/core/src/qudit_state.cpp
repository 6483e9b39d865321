#include "qsearch/qudit_state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qsearch {

QuditShape::QuditShape(int levels, int qudits) : levels_(levels), qudits_(qudits), size_(1) {
    if (levels < 2) {
        throw std::invalid_argument("qudit levels must satisfy d >= 2, got d=" + std::to_string(levels));
    }
    if (qudits < 1) {
        throw std::invalid_argument("qudit count must satisfy n >= 1, got n=" + std::to_string(qudits));
    }
    std::uint64_t total = 1;
    for (int k = 0; k < qudits; ++k) {
        total *= static_cast<std::uint64_t>(levels);
        if (total > kMaxStates) {
            throw std::invalid_argument("register too large: d^n exceeds 2^31 (d=" + std::to_string(levels) +
                                        ", n=" + std::to_string(qudits) + ")");
        }
    }
    size_ = static_cast<std::size_t>(total);
}

std::size_t QuditShape::stride(int k) const {
    if (k < 0 || k >= qudits_) {
        throw std::out_of_range("qudit position " + std::to_string(k) + " outside [0, " + std::to_string(qudits_) +
                                ")");
    }
    std::size_t s = 1;
    for (int i = k + 1; i < qudits_; ++i) {
        s *= static_cast<std::size_t>(levels_);
    }
    return s;
}

BasisIndex BasisIndex::from_flat(const QuditShape& shape, std::size_t flat) {
    if (flat >= shape.N()) {
        throw std::out_of_range("basis index " + std::to_string(flat) + " outside [0, " + std::to_string(shape.N()) +
                                ")");
    }
    BasisIndex x;
    x.flat = flat;
    x.digits.assign(static_cast<std::size_t>(shape.n()), 0);
    for (int k = shape.n() - 1; k >= 0; --k) {
        x.digits[static_cast<std::size_t>(k)] = static_cast<int>(flat % static_cast<std::size_t>(shape.d()));
        flat /= static_cast<std::size_t>(shape.d());
    }
    return x;
}

BasisIndex BasisIndex::from_digits(const QuditShape& shape, std::vector<int> digits) {
    if (digits.size() != static_cast<std::size_t>(shape.n())) {
        throw std::out_of_range("expected " + std::to_string(shape.n()) + " digits, got " +
                                std::to_string(digits.size()));
    }
    std::size_t flat = 0;
    for (int q : digits) {
        if (q < 0 || q >= shape.d()) {
            throw std::out_of_range("digit " + std::to_string(q) + " outside [0, " + std::to_string(shape.d()) + ")");
        }
        flat = flat * static_cast<std::size_t>(shape.d()) + static_cast<std::size_t>(q);
    }
    return BasisIndex{std::move(digits), flat};
}

StateVector::StateVector(const QuditShape& shape) : shape_(shape), amplitudes_(shape.N(), Complex{0.0, 0.0}) {
    amplitudes_[0] = 1.0;
}

StateVector::StateVector(const QuditShape& shape, std::vector<Complex> amplitudes)
    : shape_(shape), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != shape_.N()) {
        throw std::invalid_argument("amplitude count " + std::to_string(amplitudes_.size()) +
                                    " does not match N=" + std::to_string(shape_.N()));
    }
}

double StateVector::norm() const {
    double acc = 0.0;
    for (const Complex& a : amplitudes_) {
        acc += std::norm(a);
    }
    return std::sqrt(acc);
}

StateVector basis_state(const QuditShape& shape, const BasisIndex& x) {
    if (x.flat >= shape.N()) {
        throw std::out_of_range("basis index " + std::to_string(x.flat) + " outside [0, " + std::to_string(shape.N()) +
                                ")");
    }
    StateVector s(shape);
    s[0] = 0.0;
    s[x.flat] = 1.0;
    return s;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
    if (!(a.shape() == b.shape())) {
        throw std::invalid_argument("inner_product: register shapes differ");
    }
    Complex acc{0.0, 0.0};
    auto lhs = a.amplitudes();
    auto rhs = b.amplitudes();
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        acc += std::conj(lhs[i]) * rhs[i];
    }
    return acc;
}

double population(const StateVector& s, const BasisIndex& x) {
    if (x.flat >= s.size()) {
        throw std::out_of_range("basis index " + std::to_string(x.flat) + " outside [0, " + std::to_string(s.size()) +
                                ")");
    }
    return std::norm(s[x.flat]);
}

}  // namespace qsearch
