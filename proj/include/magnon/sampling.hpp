#pragma once

#include <cstdint>
#include <random>

#include "magnon/params.hpp"

namespace magnon
{

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double UniformUnit(std::mt19937_64 &rng);

/// Random valid parameters in units of g: cavity and magnon frequencies in
/// [20, 30], gamma in [0, 2], theta in [0, 2pi).
SystemParams SampleParams(std::mt19937_64 &rng);

}  // namespace magnon
