#include "magnon/hamiltonian.hpp"

#include <cmath>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

namespace magnon
{

namespace
{

constexpr double kDerogatoryThreshold = 1e-14;

// Columns v, Av, A^2 v, A^3 v.
ComplexMatrix4 Krylov(const ComplexMatrix4 &a, const std::array<Complex, 4> &v)
{
  ComplexMatrix4 k;
  std::array<Complex, 4> col = v;
  for (std::size_t j = 0; j < 4; j++)
  {
    for (std::size_t i = 0; i < 4; i++)
    {
      k(i, j) = col[i];
    }
    col = a * col;
  }
  return k;
}

// |det| of the matrix with unit-norm columns: 1 for orthogonal columns, 0 when singular.
double ColumnNormalizedVolume(const ComplexMatrix4 &k)
{
  ComplexMatrix4 n = k;
  for (std::size_t j = 0; j < 4; j++)
  {
    double s = 0.0;
    for (std::size_t i = 0; i < 4; i++)
    {
      s += std::norm(k(i, j));
    }
    if (s == 0.0)
    {
      return 0.0;
    }
    const double inv = 1.0 / std::sqrt(s);
    for (std::size_t i = 0; i < 4; i++)
    {
      n(i, j) *= inv;
    }
  }
  return std::abs(n.Determinant());
}

}  // namespace

ComplexMatrix4 BuildHamiltonian(const SystemParams &p)
{
  const double g = p.g();
  const Complex phase = std::polar(1.0, p.theta());
  const Complex c1 = p.omega_c1();
  const Complex c2 = p.omega_c2();
  const Complex m1(p.omega_m(), -p.gamma());
  const Complex m2(p.omega_m(), p.gamma());
  // clang-format off
  return ComplexMatrix4({c1,  0.0,                g,   g,
                         0.0, c2,                 g,   g * std::conj(phase),
                         g,   g,                  m1,  0.0,
                         g,   g * phase,          0.0, m2});
  // clang-format on
}

ComplexMatrix4 ReducedPermutedForm(const SystemParams &p)
{
  const double g = p.g();
  const Complex phase = std::polar(1.0, p.theta());
  const Complex c1 = p.omega_c1();
  const Complex c2 = p.omega_c2();
  const Complex m1(p.omega_m(), -p.gamma());
  const Complex m2(p.omega_m(), p.gamma());
  // clang-format off
  return ComplexMatrix4({c1,  g,         g,   0.0,
                         g,   m1,        0.0, g * std::conj(phase),
                         g,   0.0,       m2,  g,
                         0.0, g * phase, g,   c2});
  // clang-format on
}

ComplexMatrix4 BasisPermutation()
{
  // Rows are e1, e3, e4, e2.
  // clang-format off
  return ComplexMatrix4({1.0, 0.0, 0.0, 0.0,
                         0.0, 0.0, 1.0, 0.0,
                         0.0, 0.0, 0.0, 1.0,
                         0.0, 1.0, 0.0, 0.0});
  // clang-format on
}

ComplexMatrix4 PermutationPhaseEta(double theta, int phase_sign)
{
  const double s = phase_sign >= 0 ? 1.0 : -1.0;
  const ComplexMatrix4 u = ComplexMatrix4::Diagonal({1.0, 1.0, 1.0, std::polar(1.0, s * theta)});
  return u * BasisPermutation();
}

int ResolvePhaseSign(double theta)
{
  // Any non-degenerate probe works: the sign only depends on where the phase lands.
  const SystemParams probe(1.0, 2.0, 3.0, 0.25, 1.0, theta);
  const ComplexMatrix4 h = BuildHamiltonian(probe);
  const ComplexMatrix4 target = ReducedPermutedForm(probe);

  double residual[2];
  for (int k = 0; k < 2; k++)
  {
    const int sign = k == 0 ? 1 : -1;
    const ComplexMatrix4 eta = PermutationPhaseEta(probe.theta(), sign);
    ComplexMatrix4 eta_inv;
    eta.TryInverse(eta_inv);
    residual[k] = (eta * h * eta_inv - target).FrobeniusNorm();
  }
  const int sign = residual[0] <= residual[1] ? 1 : -1;
  spdlog::debug("eta phase sign for theta={}: chose {:+d} (residuals +1: {:.3e}, -1: {:.3e})",
                theta, sign, residual[0], residual[1]);
  return sign;
}

ComplexMatrix4 PermutationPhaseEta(double theta)
{
  return PermutationPhaseEta(theta, ResolvePhaseSign(theta));
}

ComplexMatrix4 IntertwiningOperator(const ComplexMatrix4 &h)
{
  const ComplexMatrix4 h_adj = h.Adjoint();
  if (h_adj == h)
  {
    return ComplexMatrix4::Identity();
  }

  // Shifting by a real scalar keeps both Krylov spaces and the intertwining
  // relation intact but removes the large common offset from the powers.
  const double shift = h.Trace().real() / 4.0;
  const ComplexMatrix4 shift_mat = ComplexMatrix4::Diagonal({shift, shift, shift, shift});
  const ComplexMatrix4 a = h - shift_mat;
  const ComplexMatrix4 b = h_adj - shift_mat;

  static const std::array<std::array<Complex, 4>, 5> kStarts = {{{1.0, 0.0, 0.0, 0.0},
                                                                 {0.0, 1.0, 0.0, 0.0},
                                                                 {0.0, 0.0, 1.0, 0.0},
                                                                 {0.0, 0.0, 0.0, 1.0},
                                                                 {0.5, 0.5, 0.5, 0.5}}};
  double best_volume = -1.0;
  std::size_t best = 0;
  for (std::size_t s = 0; s < kStarts.size(); s++)
  {
    const double volume = ColumnNormalizedVolume(Krylov(a, kStarts[s]));
    if (volume > best_volume)
    {
      best_volume = volume;
      best = s;
    }
  }
  if (best_volume < kDerogatoryThreshold)
  {
    throw SingularEta(fmt::format(
        "cannot build intertwining operator: Krylov basis degenerate (volume {:.3e})",
        best_volume));
  }

  ComplexMatrix4 ka_inv;
  if (!Krylov(a, kStarts[best]).TryInverse(ka_inv))
  {
    throw SingularEta("cannot build intertwining operator: Krylov basis singular");
  }
  ComplexMatrix4 eta = Krylov(b, kStarts[best]) * ka_inv;
  const double det = std::abs(eta.Determinant());
  if (!(det > 0.0) || !std::isfinite(det))
  {
    throw SingularEta("cannot build intertwining operator: eta is singular");
  }
  eta *= std::pow(det, -0.25);
  return eta;
}

ComplexMatrix4 BuildEta(const SystemParams &p)
{
  return IntertwiningOperator(BuildHamiltonian(p));
}

double PseudoHermiticityResidual(const ComplexMatrix4 &h, const ComplexMatrix4 &eta)
{
  const double det = std::abs(eta.Determinant());
  ComplexMatrix4 eta_inv;
  if (!(det > kSingularEtaThreshold) || !eta.TryInverse(eta_inv))
  {
    throw SingularEta(fmt::format("eta is singular (|det| = {:.3e})", det));
  }
  return (h.Adjoint() - eta * h * eta_inv).FrobeniusNorm();
}

std::array<Complex, 5> CharacteristicPolynomial(const ComplexMatrix4 &h)
{
  std::array<Complex, 5> c{};
  c[4] = 1.0;
  ComplexMatrix4 m;  // M_0 = 0
  for (std::size_t k = 1; k <= 4; k++)
  {
    const Complex ck = c[4 - k + 1];
    m = h * m + ComplexMatrix4::Diagonal({ck, ck, ck, ck});
    c[4 - k] = -(h * m).Trace() / static_cast<double>(k);
  }
  return c;
}

}  // namespace magnon
