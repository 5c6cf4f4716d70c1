#pragma once

#include <array>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace magnon
{

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Thrown when a parameter set violates its invariants.
class InvalidParameters : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// The scalar knobs a sweep can vary.
enum class Knob
{
  OmegaC1,
  OmegaC2,
  OmegaM,
  Gamma,
  G,
  Theta
};

inline constexpr std::array kAllKnobs = {Knob::OmegaC1, Knob::OmegaC2, Knob::OmegaM,
                                         Knob::Gamma,   Knob::G,       Knob::Theta};

std::string_view KnobName(Knob knob);
std::optional<Knob> KnobFromName(std::string_view name);

// Knobs measured in frequency units (scaled by g when normalizing).
bool IsFrequencyKnob(Knob knob);

/// Physical parameters of the two-cavity / two-magnon model.
///
/// Frequencies and gamma are in the same units as g. The coupling phase is
/// stored in radians and normalized into [0, 2pi).
class SystemParams
{
public:
  SystemParams(double omega_c1, double omega_c2, double omega_m, double gamma, double g,
               double theta);

  double omega_c1() const { return omega_c1_; }
  double omega_c2() const { return omega_c2_; }
  double omega_m() const { return omega_m_; }
  double gamma() const { return gamma_; }
  double g() const { return g_; }
  double theta() const { return theta_; }

  // Mean cavity frequency and half the cavity detuning.
  double omega_c() const { return 0.5 * (omega_c2_ + omega_c1_); }
  double delta_c() const { return 0.5 * (omega_c2_ - omega_c1_); }

  double Get(Knob knob) const;
  SystemParams With(Knob knob, double value) const;

  /// Same physics expressed in units of g (g becomes exactly 1).
  SystemParams Normalized() const;

  bool operator==(const SystemParams &) const = default;

private:
  double omega_c1_;
  double omega_c2_;
  double omega_m_;
  double gamma_;
  double g_;
  double theta_;
};

/// Maps any finite angle into [0, 2pi).
double NormalizeAngle(double theta);

}  // namespace magnon
