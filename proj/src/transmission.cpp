#include "magnon/transmission.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <span>

#include "magnon/parallel.hpp"
#include "magnon/spectral.hpp"

namespace magnon
{

namespace
{

void RequireRange(double lo, double hi, std::size_t n, const char *what)
{
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi) || n < 2)
  {
    throw std::invalid_argument(
        fmt::format("{}: need finite lo < hi and >= 2 points (got [{}, {}] x {})", what, lo, hi,
                    n));
  }
}

void NormalizeToMax(std::span<double> values)
{
  const double peak = *std::max_element(values.begin(), values.end());
  if (peak > 0.0)
  {
    for (double &v : values)
    {
      v = v == peak ? 1.0 : v / peak;
    }
  }
}

}  // namespace

TransmissionParams::TransmissionParams(const SystemParams &system, double beta)
  : system_(system), beta_(beta)
{
  if (!std::isfinite(beta) || !(beta > 0.0))
  {
    throw InvalidParameters(fmt::format("beta must be > 0 (got {})", beta));
  }
}

Complex S21(const TransmissionParams &tp, double omega)
{
  const SystemParams &p = tp.system();
  const double g = p.g();
  const double w = omega / g;
  const double wm = p.omega_m() / g;
  const double wc1 = p.omega_c1() / g;
  const double wc2 = p.omega_c2() / g;
  const double gamma = p.gamma() / g;
  const double cos_t = std::cos(p.theta());
  const double sin_t = std::sin(p.theta());
  const Complex i_beta(0.0, tp.beta());

  const Complex e(w - wm, gamma);
  const Complex f(w - wm, -gamma);
  if (std::abs(e) < kPoleThreshold || std::abs(f) < kPoleThreshold)
  {
    throw PoleAtInput(fmt::format("probe omega = {} sits on the magnon pole", omega));
  }
  const Complex inv_e = 1.0 / e;
  const Complex inv_f = 1.0 / f;

  const Complex d1 = (w - wc1) + i_beta - inv_e - inv_f;
  const Complex d2 = (w - wc2) + i_beta - inv_e - inv_f;
  const Complex cross = i_beta - inv_e - cos_t * inv_f;
  const Complex phase = sin_t * inv_f;
  const Complex denom = d1 * d2 - cross * cross - phase * phase;
  if (std::abs(denom) < kPoleThreshold)
  {
    throw PoleAtInput(fmt::format("probe omega = {} sits on a pole of S21", omega));
  }

  const Complex numer = ((2.0 - 2.0 * cos_t) * inv_f - 2.0 * w + wc1 + wc2) * i_beta;
  return numer / denom;
}

TransmissionGrid TransmissionMap(const TransmissionParams &tp, double omega_lo, double omega_hi,
                                 std::size_t n_omega, double omega_m_lo, double omega_m_hi,
                                 std::size_t n_omega_m, const TransmissionMapOptions &options)
{
  RequireRange(omega_lo, omega_hi, n_omega, "transmission omega axis");
  RequireRange(omega_m_lo, omega_m_hi, n_omega_m, "transmission omega_m axis");

  TransmissionGrid grid;
  grid.omega_values = Linspace(omega_lo, omega_hi, n_omega);
  grid.omega_m_values = Linspace(omega_m_lo, omega_m_hi, n_omega_m);
  grid.magnitude.resize(n_omega * n_omega_m);
  grid.normalized = options.normalize;
  std::vector<char> pole(grid.magnitude.size(), 0);

  ParallelFor(n_omega_m, options.threads,
              [&](std::size_t im)
              {
                const TransmissionParams column(
                    tp.system().With(Knob::OmegaM, grid.omega_m_values[im]), tp.beta());
                const std::span<double> out(grid.magnitude.data() + im * n_omega, n_omega);
                for (std::size_t iw = 0; iw < n_omega; iw++)
                {
                  try
                  {
                    out[iw] = std::abs(S21(column, grid.omega_values[iw]));
                  }
                  catch (const PoleAtInput &)
                  {
                    out[iw] = kPoleCeiling;
                    pole[im * n_omega + iw] = 1;
                  }
                }
                if (options.normalize)
                {
                  NormalizeToMax(out);
                }
              });

  for (std::size_t i = 0; i < pole.size(); i++)
  {
    if (pole[i])
    {
      grid.pole_cells.push_back(i);
    }
  }
  return grid;
}

std::vector<LineCutSample> LineCut(const TransmissionParams &tp, double delta, double omega_lo,
                                   double omega_hi, std::size_t n)
{
  RequireRange(omega_lo, omega_hi, n, "line cut");
  const SystemParams &base = tp.system();
  const TransmissionParams shifted(base.With(Knob::OmegaM, base.omega_c() + delta * base.g()),
                                   tp.beta());
  const std::vector<double> omegas = Linspace(omega_lo, omega_hi, n);
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; i++)
  {
    values[i] = std::abs(S21(shifted, omegas[i]));
  }
  NormalizeToMax(values);

  std::vector<LineCutSample> cut(n);
  for (std::size_t i = 0; i < n; i++)
  {
    cut[i] = {omegas[i], values[i]};
  }
  return cut;
}

}  // namespace magnon
