#include "magnon/matrix.hpp"

#include <cmath>
#include <utility>

namespace magnon
{

ComplexMatrix4 ComplexMatrix4::Identity()
{
  return Diagonal({1.0, 1.0, 1.0, 1.0});
}

ComplexMatrix4 ComplexMatrix4::Diagonal(const std::array<Complex, 4> &d)
{
  ComplexMatrix4 m;
  for (std::size_t i = 0; i < kDim; i++)
  {
    m(i, i) = d[i];
  }
  return m;
}

ComplexMatrix4 ComplexMatrix4::Adjoint() const
{
  ComplexMatrix4 m;
  for (std::size_t i = 0; i < kDim; i++)
  {
    for (std::size_t j = 0; j < kDim; j++)
    {
      m(i, j) = std::conj((*this)(j, i));
    }
  }
  return m;
}

ComplexMatrix4 ComplexMatrix4::Transpose() const
{
  ComplexMatrix4 m;
  for (std::size_t i = 0; i < kDim; i++)
  {
    for (std::size_t j = 0; j < kDim; j++)
    {
      m(i, j) = (*this)(j, i);
    }
  }
  return m;
}

Complex ComplexMatrix4::Trace() const
{
  return a_[0] + a_[5] + a_[10] + a_[15];
}

double ComplexMatrix4::FrobeniusNorm() const
{
  double s = 0.0;
  for (const Complex &z : a_)
  {
    s += std::norm(z);
  }
  return std::sqrt(s);
}

Complex ComplexMatrix4::Determinant() const
{
  auto lu = a_;
  Complex det = 1.0;
  for (std::size_t k = 0; k < kDim; k++)
  {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < kDim; i++)
    {
      if (std::abs(lu[i * kDim + k]) > std::abs(lu[p * kDim + k]))
      {
        p = i;
      }
    }
    if (lu[p * kDim + k] == 0.0)
    {
      return 0.0;
    }
    if (p != k)
    {
      for (std::size_t j = 0; j < kDim; j++)
      {
        std::swap(lu[p * kDim + j], lu[k * kDim + j]);
      }
      det = -det;
    }
    const Complex pivot = lu[k * kDim + k];
    det *= pivot;
    for (std::size_t i = k + 1; i < kDim; i++)
    {
      const Complex f = lu[i * kDim + k] / pivot;
      for (std::size_t j = k + 1; j < kDim; j++)
      {
        lu[i * kDim + j] -= f * lu[k * kDim + j];
      }
    }
  }
  return det;
}

bool ComplexMatrix4::TryInverse(ComplexMatrix4 &out) const
{
  auto a = a_;
  ComplexMatrix4 inv = Identity();
  for (std::size_t k = 0; k < kDim; k++)
  {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < kDim; i++)
    {
      if (std::abs(a[i * kDim + k]) > std::abs(a[p * kDim + k]))
      {
        p = i;
      }
    }
    if (a[p * kDim + k] == 0.0)
    {
      return false;
    }
    if (p != k)
    {
      for (std::size_t j = 0; j < kDim; j++)
      {
        std::swap(a[p * kDim + j], a[k * kDim + j]);
        std::swap(inv(p, j), inv(k, j));
      }
    }
    const Complex pivot = a[k * kDim + k];
    for (std::size_t j = 0; j < kDim; j++)
    {
      a[k * kDim + j] /= pivot;
      inv(k, j) /= pivot;
    }
    for (std::size_t i = 0; i < kDim; i++)
    {
      if (i == k)
      {
        continue;
      }
      const Complex f = a[i * kDim + k];
      if (f == 0.0)
      {
        continue;
      }
      for (std::size_t j = 0; j < kDim; j++)
      {
        a[i * kDim + j] -= f * a[k * kDim + j];
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  out = inv;
  return true;
}

ComplexMatrix4 &ComplexMatrix4::operator+=(const ComplexMatrix4 &rhs)
{
  for (std::size_t i = 0; i < a_.size(); i++)
  {
    a_[i] += rhs.a_[i];
  }
  return *this;
}

ComplexMatrix4 &ComplexMatrix4::operator-=(const ComplexMatrix4 &rhs)
{
  for (std::size_t i = 0; i < a_.size(); i++)
  {
    a_[i] -= rhs.a_[i];
  }
  return *this;
}

ComplexMatrix4 &ComplexMatrix4::operator*=(Complex s)
{
  for (Complex &z : a_)
  {
    z *= s;
  }
  return *this;
}

ComplexMatrix4 operator+(ComplexMatrix4 lhs, const ComplexMatrix4 &rhs)
{
  return lhs += rhs;
}

ComplexMatrix4 operator-(ComplexMatrix4 lhs, const ComplexMatrix4 &rhs)
{
  return lhs -= rhs;
}

ComplexMatrix4 operator*(const ComplexMatrix4 &lhs, const ComplexMatrix4 &rhs)
{
  ComplexMatrix4 m;
  for (std::size_t i = 0; i < ComplexMatrix4::kDim; i++)
  {
    for (std::size_t j = 0; j < ComplexMatrix4::kDim; j++)
    {
      Complex s = 0.0;
      for (std::size_t k = 0; k < ComplexMatrix4::kDim; k++)
      {
        s += lhs(i, k) * rhs(k, j);
      }
      m(i, j) = s;
    }
  }
  return m;
}

ComplexMatrix4 operator*(Complex s, ComplexMatrix4 m)
{
  return m *= s;
}

std::array<Complex, 4> operator*(const ComplexMatrix4 &m, const std::array<Complex, 4> &v)
{
  std::array<Complex, 4> r{};
  for (std::size_t i = 0; i < ComplexMatrix4::kDim; i++)
  {
    for (std::size_t k = 0; k < ComplexMatrix4::kDim; k++)
    {
      r[i] += m(i, k) * v[k];
    }
  }
  return r;
}

}  // namespace magnon
