#include "magnon/params.hpp"

#include <cmath>
#include <fmt/format.h>

namespace magnon
{

namespace
{

constexpr std::array<std::string_view, 6> kKnobNames = {"omega_c1", "omega_c2", "omega_m",
                                                        "gamma",    "g",        "theta"};

void RequireFinite(double value, std::string_view name)
{
  if (!std::isfinite(value))
  {
    throw InvalidParameters(fmt::format("{} must be finite (got {})", name, value));
  }
}

}  // namespace

std::string_view KnobName(Knob knob)
{
  return kKnobNames[static_cast<std::size_t>(knob)];
}

std::optional<Knob> KnobFromName(std::string_view name)
{
  for (Knob knob : kAllKnobs)
  {
    if (KnobName(knob) == name)
    {
      return knob;
    }
  }
  return std::nullopt;
}

bool IsFrequencyKnob(Knob knob)
{
  return knob != Knob::Theta;
}

double NormalizeAngle(double theta)
{
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0)
  {
    t += kTwoPi;
  }
  // fmod of a value just below a multiple of 2pi can round up to exactly 2pi.
  if (t >= kTwoPi)
  {
    t = 0.0;
  }
  return t;
}

SystemParams::SystemParams(double omega_c1, double omega_c2, double omega_m, double gamma,
                           double g, double theta)
  : omega_c1_(omega_c1), omega_c2_(omega_c2), omega_m_(omega_m), gamma_(gamma), g_(g),
    theta_(0.0)
{
  RequireFinite(omega_c1, "omega_c1");
  RequireFinite(omega_c2, "omega_c2");
  RequireFinite(omega_m, "omega_m");
  RequireFinite(gamma, "gamma");
  RequireFinite(g, "g");
  RequireFinite(theta, "theta");
  if (!(g > 0.0))
  {
    throw InvalidParameters(fmt::format("g must be > 0 (got {})", g));
  }
  if (gamma < 0.0)
  {
    throw InvalidParameters(fmt::format("gamma must be >= 0 (got {})", gamma));
  }
  theta_ = NormalizeAngle(theta);
}

double SystemParams::Get(Knob knob) const
{
  switch (knob)
  {
    case Knob::OmegaC1:
      return omega_c1_;
    case Knob::OmegaC2:
      return omega_c2_;
    case Knob::OmegaM:
      return omega_m_;
    case Knob::Gamma:
      return gamma_;
    case Knob::G:
      return g_;
    case Knob::Theta:
      return theta_;
  }
  return 0.0;
}

SystemParams SystemParams::With(Knob knob, double value) const
{
  double v[6] = {omega_c1_, omega_c2_, omega_m_, gamma_, g_, theta_};
  v[static_cast<std::size_t>(knob)] = value;
  return SystemParams(v[0], v[1], v[2], v[3], v[4], v[5]);
}

SystemParams SystemParams::Normalized() const
{
  return SystemParams(omega_c1_ / g_, omega_c2_ / g_, omega_m_ / g_, gamma_ / g_, 1.0, theta_);
}

}  // namespace magnon
