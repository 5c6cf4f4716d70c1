#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "magnon/matrix.hpp"
#include "magnon/params.hpp"

namespace magnon
{

/// The probe frequency sits on a pole of the closed-form transmission.
class PoleAtInput : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultBeta = 0.1;
inline constexpr double kPoleThreshold = 1e-14;
/// |S21| recorded for pole cells in map mode.
inline constexpr double kPoleCeiling = 1e6;

class TransmissionParams
{
public:
  /// beta is the cavity leakage rate in units of g; must be > 0.
  TransmissionParams(const SystemParams &system, double beta = kDefaultBeta);

  const SystemParams &system() const { return system_; }
  double beta() const { return beta_; }

private:
  SystemParams system_;
  double beta_;
};

/// Closed-form forward transmission S21 at probe frequency omega (same units as g).
///
/// With E = (w - wm + i y)/g, F = (w - wm - i y)/g:
///
///   S21 = i beta ((2 - 2 cos t)/F - 2w/g + (wc1 + wc2)/g) / f(E, F)
///   f   = prod_i ((w - wc_i)/g + i beta - 1/E - 1/F)
///         - (i beta - 1/E - cos t / F)^2 - (sin t / F)^2
///
/// Throws PoleAtInput when |E|, |F| or |f| falls below 1e-14.
Complex S21(const TransmissionParams &tp, double omega);

struct TransmissionGrid
{
  std::vector<double> omega_values;
  std::vector<double> omega_m_values;
  /// Column-major by omega_m: magnitude[im * n_omega + iw].
  std::vector<double> magnitude;
  bool normalized = false;
  /// Flat indices of cells clamped to kPoleCeiling.
  std::vector<std::size_t> pole_cells;

  double At(std::size_t iw, std::size_t im) const
  {
    return magnitude[im * omega_values.size() + iw];
  }
};

struct TransmissionMapOptions
{
  bool normalize = false;
  unsigned threads = 1;
};

/// |S21| over (omega, omega_m). With normalize, each omega_m column is divided by
/// its maximum so the maximum is exactly 1.
TransmissionGrid TransmissionMap(const TransmissionParams &tp, double omega_lo, double omega_hi,
                                 std::size_t n_omega, double omega_m_lo, double omega_m_hi,
                                 std::size_t n_omega_m,
                                 const TransmissionMapOptions &options = {});

struct LineCutSample
{
  double omega;
  double value;
};

/// Normalized |S21| along omega at omega_m = omega_c + delta * g.
std::vector<LineCutSample> LineCut(const TransmissionParams &tp, double delta, double omega_lo,
                                   double omega_hi, std::size_t n);

}  // namespace magnon
