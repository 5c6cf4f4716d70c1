#include "magnon/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numeric>

#include "magnon/hamiltonian.hpp"

namespace magnon
{

namespace
{

constexpr int kMaxDurandKernerIterations = 500;
constexpr int kMaxNewtonIterations = 50;
constexpr double kPolishTarget = 1e-12;
constexpr double kConvergenceLimit = 1e-8;
constexpr double kOrderingTieTolerance = 1e-9;

struct PolyValue
{
  Complex p;
  Complex dp;
};

PolyValue Horner(const std::array<Complex, 5> &c, Complex z)
{
  Complex p = c[4];
  Complex dp = 0.0;
  for (int k = 3; k >= 0; k--)
  {
    dp = dp * z + p;
    p = p * z + c[k];
  }
  return {p, dp};
}

double CoefficientScale(const std::array<Complex, 5> &c)
{
  double s = 0.0;
  for (const Complex &z : c)
  {
    s = std::max(s, std::abs(z));
  }
  return s;
}

void DurandKerner(const std::array<Complex, 5> &c, Eigenvalues &z)
{
  // Fujiwara bound on root magnitudes.
  const double radius =
      2.0 * std::max({std::abs(c[3]), std::sqrt(std::abs(c[2])), std::cbrt(std::abs(c[1])),
                      std::pow(0.5 * std::abs(c[0]), 0.25)});
  if (radius == 0.0)
  {
    z.fill(0.0);
    return;
  }
  for (std::size_t k = 0; k < 4; k++)
  {
    z[k] = std::polar(radius, 0.4 + 0.5 * std::numbers::pi * static_cast<double>(k));
  }

  for (int it = 0; it < kMaxDurandKernerIterations; it++)
  {
    double max_step = 0.0;
    for (std::size_t k = 0; k < 4; k++)
    {
      Complex denom = 1.0;
      for (std::size_t j = 0; j < 4; j++)
      {
        if (j != k)
        {
          denom *= z[k] - z[j];
        }
      }
      if (denom == 0.0)
      {
        // Coincident iterates; nudge one off the collision.
        z[k] += Complex(1e-10, 1e-10) * radius;
        max_step = radius;
        continue;
      }
      const Complex step = Horner(c, z[k]).p / denom;
      z[k] -= step;
      max_step = std::max(max_step, std::abs(step));
    }
    if (max_step <= 1e-16 * radius)
    {
      break;
    }
  }
}

Complex NewtonPolish(const std::array<Complex, 5> &c, Complex z, double scale)
{
  PolyValue v = Horner(c, z);
  for (int it = 0; it < kMaxNewtonIterations; it++)
  {
    if (std::abs(v.p) < kPolishTarget * scale || v.dp == 0.0)
    {
      break;
    }
    const Complex candidate = z - v.p / v.dp;
    const PolyValue w = Horner(c, candidate);
    if (!(std::abs(w.p) < std::abs(v.p)))
    {
      break;
    }
    z = candidate;
    v = w;
  }
  return z;
}

bool OrderedBefore(Complex a, Complex b)
{
  const double tol = kOrderingTieTolerance * std::max({1.0, std::abs(a), std::abs(b)});
  if (std::abs(a.real() - b.real()) <= tol)
  {
    return a.imag() < b.imag();
  }
  return a.real() < b.real();
}

void SymmetrizeNearPairs(Eigenvalues &z)
{
  std::array<bool, 4> used{};
  for (std::size_t i = 0; i < 4; i++)
  {
    for (std::size_t j = i + 1; j < 4 && !used[i]; j++)
    {
      if (used[j] || std::abs(z[i] - z[j]) >= kSymmetrizeDistance)
      {
        continue;
      }
      const double re = 0.5 * (z[i].real() + z[j].real());
      const double im = 0.5 * (std::abs(z[i].imag()) + std::abs(z[j].imag()));
      z[i] = Complex(re, -im);
      z[j] = Complex(re, im);
      used[i] = used[j] = true;
    }
  }
}

}  // namespace

Eigenvalues QuarticRoots(const std::array<Complex, 5> &coeffs)
{
  for (const Complex &c : coeffs)
  {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
    {
      throw ConvergenceFailure("characteristic polynomial has non-finite coefficients");
    }
  }
  std::array<Complex, 5> c = coeffs;
  if (c[4] != 1.0)
  {
    if (c[4] == 0.0)
    {
      throw std::invalid_argument("leading coefficient must be nonzero");
    }
    const Complex lead = c[4];
    for (Complex &x : c)
    {
      x /= lead;
    }
  }

  Eigenvalues z{};
  DurandKerner(c, z);
  const double scale = CoefficientScale(c);
  for (std::size_t k = 0; k < 4; k++)
  {
    z[k] = NewtonPolish(c, z[k], scale);
    const double residual = std::abs(Horner(c, z[k]).p) / scale;
    if (!(residual <= kConvergenceLimit))
    {
      throw ConvergenceFailure(
          fmt::format("root {} failed to polish: relative residual {:.3e} at z = ({}, {})", k,
                      residual, z[k].real(), z[k].imag()));
    }
  }
  return z;
}

Spectrum ComputeSpectrum(const ComplexMatrix4 &h, double epsilon_real)
{
  for (const Complex &x : h.Entries())
  {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
    {
      throw std::invalid_argument("matrix has non-finite entries");
    }
  }
  const double shift = h.Trace().real() / 4.0;
  const ComplexMatrix4 shifted = h - ComplexMatrix4::Diagonal({shift, shift, shift, shift});

  Eigenvalues z = QuarticRoots(CharacteristicPolynomial(shifted));
  for (Complex &x : z)
  {
    x += shift;
  }
  SymmetrizeNearPairs(z);

  // Insertion sort keeps the tolerance-aware ordering well defined.
  for (std::size_t i = 1; i < 4; i++)
  {
    for (std::size_t j = i; j > 0 && OrderedBefore(z[j], z[j - 1]); j--)
    {
      std::swap(z[j], z[j - 1]);
    }
  }

  Spectrum s;
  s.eigenvalues = z;
  s.classification = ClassifySpectrum(z, epsilon_real);
  s.coalescence = CoalescenceMeasure(z);
  return s;
}

Classification ClassifySpectrum(const Eigenvalues &eigs, double epsilon_real)
{
  if (!(epsilon_real > 0.0))
  {
    throw std::invalid_argument("epsilon_real must be > 0");
  }
  for (const Complex &z : eigs)
  {
    if (!(std::abs(z.imag()) < epsilon_real))
    {
      return Classification::Complex;
    }
  }
  return Classification::AllReal;
}

double CoalescenceMeasure(const Eigenvalues &eigs)
{
  double best = std::abs(eigs[0] - eigs[1]);
  for (std::size_t i = 0; i < 4; i++)
  {
    for (std::size_t j = i + 1; j < 4; j++)
    {
      best = std::min(best, std::abs(eigs[i] - eigs[j]));
    }
  }
  return best;
}

Eigenvalues MatchBranches(const Eigenvalues &previous, const Eigenvalues &next)
{
  std::array<std::size_t, 4> perm = {0, 1, 2, 3};
  std::array<std::size_t, 4> best = perm;
  double best_cost = std::numeric_limits<double>::infinity();
  do
  {
    double cost = 0.0;
    for (std::size_t i = 0; i < 4; i++)
    {
      cost += std::abs(previous[i] - next[perm[i]]);
    }
    if (cost < best_cost)
    {
      best_cost = cost;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  Eigenvalues out{};
  for (std::size_t i = 0; i < 4; i++)
  {
    out[i] = next[best[i]];
  }
  return out;
}

BranchSweep TrackBranches(std::span<const SystemParams> sweep_points)
{
  if (sweep_points.size() < 2)
  {
    throw std::invalid_argument("branch tracking needs at least 2 sweep points");
  }

  std::optional<Knob> knob;
  for (std::size_t i = 1; i < sweep_points.size(); i++)
  {
    int differing = 0;
    for (Knob k : kAllKnobs)
    {
      if (sweep_points[i].Get(k) != sweep_points[i - 1].Get(k))
      {
        differing++;
        if (knob && *knob != k)
        {
          throw std::invalid_argument(fmt::format(
              "sweep varies both {} and {}", KnobName(*knob), KnobName(k)));
        }
        knob = k;
      }
    }
    if (differing > 1)
    {
      throw std::invalid_argument(
          fmt::format("sweep points {} and {} differ in more than one knob", i - 1, i));
    }
  }

  BranchSweep sweep;
  sweep.knob = knob.value_or(Knob::OmegaM);
  sweep.parameter_values.reserve(sweep_points.size());
  for (auto &b : sweep.branches)
  {
    b.reserve(sweep_points.size());
  }

  Eigenvalues current{};
  for (std::size_t i = 0; i < sweep_points.size(); i++)
  {
    const Eigenvalues eigs = ComputeSpectrum(BuildHamiltonian(sweep_points[i])).eigenvalues;
    current = i == 0 ? eigs : MatchBranches(current, eigs);
    sweep.parameter_values.push_back(sweep_points[i].Get(sweep.knob));
    for (std::size_t b = 0; b < 4; b++)
    {
      sweep.branches[b].push_back(current[b]);
    }
  }
  return sweep;
}

std::vector<double> Linspace(double lo, double hi, std::size_t n)
{
  std::vector<double> v(n);
  if (n == 1)
  {
    v[0] = lo;
    return v;
  }
  for (std::size_t i = 0; i < n; i++)
  {
    v[i] = lo + (hi - lo) * (static_cast<double>(i) / static_cast<double>(n - 1));
  }
  if (n > 0)
  {
    v[n - 1] = hi;
  }
  return v;
}

std::vector<SystemParams> SweepPoints(const SystemParams &base, Knob knob, double lo, double hi,
                                      std::size_t n)
{
  std::vector<SystemParams> points;
  points.reserve(n);
  for (double x : Linspace(lo, hi, n))
  {
    points.push_back(base.With(knob, x));
  }
  return points;
}

}  // namespace magnon
