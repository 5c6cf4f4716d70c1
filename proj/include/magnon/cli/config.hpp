#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "magnon/params.hpp"

namespace magnon::cli
{

/// Malformed document, wrong field type, or unknown key.
class ParseError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Well-formed document whose values violate an invariant.
class ValidationError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

enum class Command
{
  Spectrum,
  PhaseDiagram,
  Transmission,
  LineCut,
  GapMap,
  CriticalGamma,
  Verify
};

std::string_view CommandName(Command command);
std::optional<Command> CommandFromName(std::string_view name);

/// Evenly spaced samples; lo/hi in config units (degrees for angles, units of g otherwise).
struct RangeSpec
{
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;

  std::vector<double> Values() const;
};

struct SweepSpec
{
  Knob knob = Knob::OmegaM;
  RangeSpec range;

  /// Config-unit sample values (degrees for theta).
  std::vector<double> DisplayValues() const { return range.Values(); }
  /// Same samples in internal units (radians for theta).
  std::vector<double> InternalValues() const;
};

double DegreesToRadians(double degrees);

struct Tolerances
{
  double epsilon_real = 1e-7;
  double critical_gamma = 1e-4;
};

/// Fully validated run description. Frequencies are in units of g (params.g() == 1).
struct RunConfig
{
  Command command = Command::Spectrum;
  SystemParams params{24.0, 26.0, 25.0, 0.0, 1.0, 0.0};
  double theta_deg = 0.0;
  double beta = 0.1;

  /// The coupling the raw config values were divided by (1 when already in units of g).
  double g_reference = 1.0;
  std::optional<double> g_hz;

  std::optional<SweepSpec> sweep;         // spectrum
  std::optional<SweepSpec> x;             // phase-diagram
  std::optional<SweepSpec> y;             // phase-diagram
  std::optional<RangeSpec> omega_range;   // transmission, line-cut
  std::optional<RangeSpec> omega_m_range; // transmission, critical-gamma
  std::optional<RangeSpec> theta_range;   // gap-map (degrees)
  std::optional<RangeSpec> gamma_range;   // gap-map
  std::vector<double> deltas;             // line-cut
  bool normalize = false;

  Tolerances tolerances;
  unsigned threads = 1;
  std::uint64_t seed = 42;
  std::size_t trials = 1000;

  std::filesystem::path output_dir;
};

/// Parses a JSON config, applies `key=value` overrides (dotted keys, JSON or bare
/// string values) and validates the result. If `command` is given it must agree with
/// the document's "command" field when present. `source` names the document in
/// diagnostics.
RunConfig ParseConfig(std::string_view document, std::span<const std::string> overrides,
                      std::optional<Command> command = std::nullopt,
                      std::string_view source = "<config>");

}  // namespace magnon::cli
