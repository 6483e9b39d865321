#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qsearch {

using Complex = std::complex<double>;

/// Register geometry: n qudits with d levels each, N = d^n basis states.
///
/// Construction rejects d < 2, n < 1 and any shape whose N overflows or
/// exceeds kMaxStates; dense storage is the only representation.
class QuditShape {
  public:
    static constexpr std::uint64_t kMaxStates = std::uint64_t{1} << 31;

    QuditShape(int levels, int qudits);

    int d() const { return levels_; }
    int n() const { return qudits_; }
    std::size_t N() const { return size_; }

    /// Stride of qudit k in the flat index (big-endian: qudit 0 is most significant).
    std::size_t stride(int k) const;

    bool operator==(const QuditShape&) const = default;

  private:
    int levels_;
    int qudits_;
    std::size_t size_;
};

/// A computational basis label |q_0 q_1 ... q_{n-1}>, held both as digits and
/// as the flat big-endian mixed-radix index.
struct BasisIndex {
    std::vector<int> digits;
    std::size_t flat = 0;

    static BasisIndex from_flat(const QuditShape& shape, std::size_t flat);
    static BasisIndex from_digits(const QuditShape& shape, std::vector<int> digits);
};

/// Dense amplitude vector over all N basis states of a register.
class StateVector {
  public:
    /// |0...0>.
    explicit StateVector(const QuditShape& shape);
    /// Takes ownership of the amplitudes; the length must equal shape.N().
    StateVector(const QuditShape& shape, std::vector<Complex> amplitudes);

    const QuditShape& shape() const { return shape_; }
    std::size_t size() const { return amplitudes_.size(); }

    std::span<Complex> amplitudes() { return amplitudes_; }
    std::span<const Complex> amplitudes() const { return amplitudes_; }

    Complex& operator[](std::size_t i) { return amplitudes_[i]; }
    const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

    double norm() const;

  private:
    QuditShape shape_;
    std::vector<Complex> amplitudes_;
};

StateVector basis_state(const QuditShape& shape, const BasisIndex& x);

/// <a|b> = sum_x conj(a_x) b_x, accumulated in index order.
Complex inner_product(const StateVector& a, const StateVector& b);

/// |amplitude_x|^2.
double population(const StateVector& s, const BasisIndex& x);

}  // namespace qsearch
