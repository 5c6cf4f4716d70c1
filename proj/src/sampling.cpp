#include "magnon/sampling.hpp"

namespace magnon
{

double UniformUnit(std::mt19937_64 &rng)
{
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

SystemParams SampleParams(std::mt19937_64 &rng)
{
  const double omega_c1 = 20.0 + 10.0 * UniformUnit(rng);
  const double omega_c2 = 20.0 + 10.0 * UniformUnit(rng);
  const double omega_m = 20.0 + 10.0 * UniformUnit(rng);
  const double gamma = 2.0 * UniformUnit(rng);
  const double theta = kTwoPi * UniformUnit(rng);
  return SystemParams(omega_c1, omega_c2, omega_m, gamma, 1.0, theta);
}

}  // namespace magnon
