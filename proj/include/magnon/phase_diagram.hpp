#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "magnon/params.hpp"
#include "magnon/spectral.hpp"

namespace magnon
{

/// Even gamma = 0 has no real point on the scanned line.
class NoRealRegion : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct ScanOptions
{
  double epsilon_real = kDefaultEpsilonReal;
  /// Workers for plane and gap-map scans. Results do not depend on this.
  unsigned threads = 1;
};

struct Axis
{
  Knob knob = Knob::OmegaM;
  std::vector<double> values;

  static Axis Uniform(Knob knob, double lo, double hi, std::size_t n);
};

struct LineScanResult
{
  Knob knob = Knob::OmegaM;
  std::vector<double> parameter_values;
  std::vector<Classification> classifications;
  std::size_t transition_count = 0;
  /// Midpoints of the refined brackets, one per transition.
  std::vector<double> ep_locations;
  /// Final bisection brackets; the endpoints classify differently.
  std::vector<std::pair<double, double>> ep_brackets;
};

struct PhaseDiagramGrid
{
  Axis x;
  Axis y;
  /// Row-major: classification[iy * nx + ix].
  std::vector<Classification> classification;

  Classification At(std::size_t ix, std::size_t iy) const
  {
    return classification[iy * x.values.size() + ix];
  }
};

struct GapMap
{
  std::vector<double> theta_values;
  std::vector<double> gamma_values;
  /// Row-major: delta_omega[igamma * ntheta + itheta].
  std::vector<double> delta_omega;

  double At(std::size_t itheta, std::size_t igamma) const
  {
    return delta_omega[igamma * theta_values.size() + itheta];
  }
};

/// Classification of the spectrum of BuildHamiltonian(p).
Classification ClassifyParams(const SystemParams &p, double epsilon_real = kDefaultEpsilonReal);

/// Relative bracket width for EP refinement along a line.
inline constexpr double kBisectionRelativeWidth = 1e-6;

/// Classifies n evenly spaced points of `knob` in [lo, hi] and refines every
/// classification change by bisection to a bracket of (hi - lo) * 1e-6.
LineScanResult ScanLine(const SystemParams &base, Knob knob, double lo, double hi,
                        std::size_t n, const ScanOptions &options = {});

/// Classification over a rectangular grid; each cell is independent.
PhaseDiagramGrid ScanPlane(const SystemParams &base, const Axis &x, const Axis &y,
                           const ScanOptions &options = {});

struct CriticalGammaOptions
{
  std::size_t omega_m_points = 2001;
  double tolerance = 1e-4;
  double epsilon_real = kDefaultEpsilonReal;
  /// Upper gamma brackets are doubled from here until no real point remains.
  double initial_upper = 2.0;
  double max_upper = 1024.0;
};

/// True if any point of the omega_m line at base's gamma has an all-real spectrum.
bool HasRealPoint(const SystemParams &base, double omega_m_lo, double omega_m_hi,
                  std::size_t n, double epsilon_real = kDefaultEpsilonReal);

struct CriticalGammaResult
{
  double p = 0.0;
  /// HasRealPoint is true at lower and false at upper.
  double lower = 0.0;
  double upper = 0.0;
};

/// Largest gamma/g whose omega_m line still contains an all-real point, by bisection.
/// Uses base's cavity frequencies, g and theta. Throws NoRealRegion if gamma = 0 fails.
CriticalGammaResult CriticalGamma(const SystemParams &base, double omega_m_lo,
                                  double omega_m_hi, const CriticalGammaOptions &options = {});

/// Gap between the 2nd and 3rd sorted real eigenvalues at omega_m = omega_c, or 0
/// if the spectrum is complex. Requires base.omega_m() == base.omega_c().
double ResonanceGap(const SystemParams &p, double epsilon_real = kDefaultEpsilonReal);

/// ResonanceGap over a (theta, gamma) grid at resonance.
GapMap ComputeGapMap(const SystemParams &base, double theta_lo, double theta_hi,
                     std::size_t n_theta, double gamma_lo, double gamma_hi, std::size_t n_gamma,
                     const ScanOptions &options = {});

/// Same, over explicit axis values (theta in radians).
GapMap ComputeGapMap(const SystemParams &base, std::vector<double> theta_values,
                     std::vector<double> gamma_values, const ScanOptions &options = {});

}  // namespace magnon
