#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "magnon/params.hpp"
#include "magnon/sampling.hpp"

namespace test
{

inline constexpr double kDeg = 3.14159265358979323846 / 180.0;

/// Reference configuration: cavities at 24 and 26, units of g.
inline magnon::SystemParams Reference(double omega_m, double gamma, double theta)
{
  return magnon::SystemParams(24.0, 26.0, omega_m, gamma, 1.0, theta);
}

inline std::vector<magnon::SystemParams> RandomParams(std::size_t n, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::vector<magnon::SystemParams> out;
  for (std::size_t i = 0; i < n; i++)
  {
    out.push_back(magnon::SampleParams(rng));
  }
  return out;
}

struct Peak
{
  std::size_t index;
  double value;
};

/// Interior local maxima whose prominence (height above the higher of the two
/// flanking minima) is at least min_prominence.
inline std::vector<Peak> FindPeaks(const std::vector<double> &y, double min_prominence)
{
  std::vector<Peak> peaks;
  for (std::size_t i = 1; i + 1 < y.size(); i++)
  {
    if (!(y[i] > y[i - 1] && y[i] >= y[i + 1]))
    {
      continue;
    }
    double left = y[i];
    for (std::size_t j = i; j-- > 0;)
    {
      if (y[j] > y[i])
      {
        break;
      }
      left = std::min(left, y[j]);
    }
    double right = y[i];
    for (std::size_t j = i + 1; j < y.size(); j++)
    {
      if (y[j] > y[i])
      {
        break;
      }
      right = std::min(right, y[j]);
    }
    if (y[i] - std::max(left, right) >= min_prominence)
    {
      peaks.push_back({i, y[i]});
    }
  }
  return peaks;
}

}  // namespace test
