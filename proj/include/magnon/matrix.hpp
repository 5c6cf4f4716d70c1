#pragma once

#include <array>
#include <complex>
#include <cstddef>

namespace magnon
{

using Complex = std::complex<double>;

/// Dense 4x4 complex matrix, row-major, basis order (c1, c2, m1, m2).
class ComplexMatrix4
{
public:
  static constexpr std::size_t kDim = 4;

  constexpr ComplexMatrix4() = default;
  explicit ComplexMatrix4(const std::array<Complex, 16> &entries) : a_(entries) {}

  static ComplexMatrix4 Identity();
  static ComplexMatrix4 Diagonal(const std::array<Complex, 4> &d);

  Complex &operator()(std::size_t row, std::size_t col) { return a_[row * kDim + col]; }
  const Complex &operator()(std::size_t row, std::size_t col) const
  {
    return a_[row * kDim + col];
  }

  const std::array<Complex, 16> &Entries() const { return a_; }

  ComplexMatrix4 Adjoint() const;
  ComplexMatrix4 Transpose() const;
  Complex Trace() const;
  double FrobeniusNorm() const;

  /// LU with partial pivoting.
  Complex Determinant() const;

  /// Gauss-Jordan with partial pivoting. Returns false if a pivot vanishes exactly.
  bool TryInverse(ComplexMatrix4 &out) const;

  ComplexMatrix4 &operator+=(const ComplexMatrix4 &rhs);
  ComplexMatrix4 &operator-=(const ComplexMatrix4 &rhs);
  ComplexMatrix4 &operator*=(Complex s);

  bool operator==(const ComplexMatrix4 &) const = default;

private:
  std::array<Complex, 16> a_{};
};

ComplexMatrix4 operator+(ComplexMatrix4 lhs, const ComplexMatrix4 &rhs);
ComplexMatrix4 operator-(ComplexMatrix4 lhs, const ComplexMatrix4 &rhs);
ComplexMatrix4 operator*(const ComplexMatrix4 &lhs, const ComplexMatrix4 &rhs);
ComplexMatrix4 operator*(Complex s, ComplexMatrix4 m);

std::array<Complex, 4> operator*(const ComplexMatrix4 &m, const std::array<Complex, 4> &v);

}  // namespace magnon
