#include "magnon/phase_diagram.hpp"

#include <cmath>
#include <fmt/format.h>

#include "magnon/hamiltonian.hpp"
#include "magnon/parallel.hpp"

namespace magnon
{

namespace
{

void RequireRange(double lo, double hi, std::size_t n, std::size_t min_n, const char *what)
{
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
  {
    throw std::invalid_argument(fmt::format("{}: need finite lo < hi (got {}, {})", what, lo, hi));
  }
  if (n < min_n)
  {
    throw std::invalid_argument(fmt::format("{}: need at least {} points (got {})", what, min_n, n));
  }
}

void RequireResonance(const SystemParams &p)
{
  const double tol = 1e-12 * std::max(1.0, std::abs(p.omega_c()));
  if (std::abs(p.omega_m() - p.omega_c()) > tol)
  {
    throw std::invalid_argument(fmt::format(
        "resonance gap needs omega_m = omega_c (omega_m = {}, omega_c = {})", p.omega_m(),
        p.omega_c()));
  }
}

}  // namespace

Axis Axis::Uniform(Knob knob, double lo, double hi, std::size_t n)
{
  RequireRange(lo, hi, n, 2, "axis");
  return Axis{knob, Linspace(lo, hi, n)};
}

Classification ClassifyParams(const SystemParams &p, double epsilon_real)
{
  return ComputeSpectrum(BuildHamiltonian(p), epsilon_real).classification;
}

LineScanResult ScanLine(const SystemParams &base, Knob knob, double lo, double hi,
                        std::size_t n, const ScanOptions &options)
{
  RequireRange(lo, hi, n, 3, "line scan");

  LineScanResult r;
  r.knob = knob;
  r.parameter_values = Linspace(lo, hi, n);
  r.classifications.reserve(n);
  for (double x : r.parameter_values)
  {
    r.classifications.push_back(ClassifyParams(base.With(knob, x), options.epsilon_real));
  }

  const double width = (hi - lo) * kBisectionRelativeWidth;
  for (std::size_t i = 0; i + 1 < n; i++)
  {
    const Classification left = r.classifications[i];
    if (left == r.classifications[i + 1])
    {
      continue;
    }
    double a = r.parameter_values[i];
    double b = r.parameter_values[i + 1];
    while (b - a > width)
    {
      const double mid = 0.5 * (a + b);
      if (ClassifyParams(base.With(knob, mid), options.epsilon_real) == left)
      {
        a = mid;
      }
      else
      {
        b = mid;
      }
    }
    r.ep_brackets.emplace_back(a, b);
    r.ep_locations.push_back(0.5 * (a + b));
  }
  r.transition_count = r.ep_locations.size();
  return r;
}

PhaseDiagramGrid ScanPlane(const SystemParams &base, const Axis &x, const Axis &y,
                           const ScanOptions &options)
{
  if (x.values.size() < 2 || y.values.size() < 2)
  {
    throw std::invalid_argument("plane scan needs at least 2 points per axis");
  }
  PhaseDiagramGrid grid{x, y, {}};
  const std::size_t nx = x.values.size();
  grid.classification.resize(nx * y.values.size());
  ParallelFor(grid.classification.size(), options.threads,
              [&](std::size_t cell)
              {
                const SystemParams p = base.With(x.knob, x.values[cell % nx])
                                           .With(y.knob, y.values[cell / nx]);
                grid.classification[cell] = ClassifyParams(p, options.epsilon_real);
              });
  return grid;
}

bool HasRealPoint(const SystemParams &base, double omega_m_lo, double omega_m_hi,
                  std::size_t n, double epsilon_real)
{
  for (double w : Linspace(omega_m_lo, omega_m_hi, n))
  {
    if (ClassifyParams(base.With(Knob::OmegaM, w), epsilon_real) == Classification::AllReal)
    {
      return true;
    }
  }
  return false;
}

CriticalGammaResult CriticalGamma(const SystemParams &base, double omega_m_lo,
                                  double omega_m_hi, const CriticalGammaOptions &options)
{
  RequireRange(omega_m_lo, omega_m_hi, options.omega_m_points, 2, "critical gamma");
  if (!(options.tolerance > 0.0))
  {
    throw std::invalid_argument("critical gamma tolerance must be > 0");
  }
  auto has_real = [&](double gamma)
  {
    return HasRealPoint(base.With(Knob::Gamma, gamma), omega_m_lo, omega_m_hi,
                        options.omega_m_points, options.epsilon_real);
  };

  if (!has_real(0.0))
  {
    throw NoRealRegion(fmt::format(
        "no all-real point for gamma = 0 on omega_m in [{}, {}] (theta = {} rad)", omega_m_lo,
        omega_m_hi, base.theta()));
  }
  double lower = 0.0;
  double upper = options.initial_upper;
  while (has_real(upper))
  {
    lower = upper;
    upper *= 2.0;
    if (upper > options.max_upper)
    {
      throw std::runtime_error(
          fmt::format("real region persists beyond gamma = {}", options.max_upper));
    }
  }
  while (upper - lower > options.tolerance)
  {
    const double mid = 0.5 * (lower + upper);
    if (has_real(mid))
    {
      lower = mid;
    }
    else
    {
      upper = mid;
    }
  }
  return {0.5 * (lower + upper), lower, upper};
}

double ResonanceGap(const SystemParams &p, double epsilon_real)
{
  RequireResonance(p);
  const Spectrum s = ComputeSpectrum(BuildHamiltonian(p), epsilon_real);
  if (s.classification == Classification::Complex)
  {
    return 0.0;
  }
  return s.eigenvalues[2].real() - s.eigenvalues[1].real();
}

GapMap ComputeGapMap(const SystemParams &base, double theta_lo, double theta_hi,
                     std::size_t n_theta, double gamma_lo, double gamma_hi, std::size_t n_gamma,
                     const ScanOptions &options)
{
  RequireRange(theta_lo, theta_hi, n_theta, 2, "gap map theta axis");
  RequireRange(gamma_lo, gamma_hi, n_gamma, 2, "gap map gamma axis");
  return ComputeGapMap(base, Linspace(theta_lo, theta_hi, n_theta),
                       Linspace(gamma_lo, gamma_hi, n_gamma), options);
}

GapMap ComputeGapMap(const SystemParams &base, std::vector<double> theta_values,
                     std::vector<double> gamma_values, const ScanOptions &options)
{
  RequireResonance(base);
  if (theta_values.size() < 2 || gamma_values.size() < 2)
  {
    throw std::invalid_argument("gap map needs at least 2 points per axis");
  }

  GapMap map;
  map.theta_values = std::move(theta_values);
  map.gamma_values = std::move(gamma_values);
  const std::size_t n_theta = map.theta_values.size();
  map.delta_omega.resize(n_theta * map.gamma_values.size());
  ParallelFor(map.delta_omega.size(), options.threads,
              [&](std::size_t cell)
              {
                const SystemParams p = base.With(Knob::Theta, map.theta_values[cell % n_theta])
                                           .With(Knob::Gamma, map.gamma_values[cell / n_theta]);
                map.delta_omega[cell] = ResonanceGap(p, options.epsilon_real);
              });
  return map;
}

}  // namespace magnon
