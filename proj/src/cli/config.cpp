#include "magnon/cli/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fmt/format.h>
#include <json.hpp>
#include <numbers>

#include "magnon/parallel.hpp"
#include "magnon/spectral.hpp"

namespace magnon::cli
{

using nlohmann::json;

namespace
{

constexpr std::array<std::string_view, 7> kCommandNames = {
    "spectrum", "phase-diagram", "transmission", "line-cut", "gap-map", "critical-gamma",
    "verify"};

constexpr std::array<std::string_view, 22> kTopLevelKeys = {
    "command",     "omega_c1",      "omega_c2",    "omega_m",     "gamma",
    "g",           "theta",         "beta",        "g_hz",        "sweep",
    "x",           "y",             "omega_range", "omega_m_range", "theta_range",
    "gamma_range", "deltas",        "normalize",   "tolerances",  "threads",
    "seed",        "trials"};

constexpr std::array<std::string_view, 4> kSweepKeys = {"knob", "lo", "hi", "count"};
constexpr std::array<std::string_view, 3> kRangeKeys = {"lo", "hi", "count"};
constexpr std::array<std::string_view, 2> kToleranceKeys = {"epsilon_real", "critical_gamma"};

constexpr std::size_t kMaxCount = 10'000'000;

template <std::size_t N>
bool Contains(const std::array<std::string_view, N> &keys, std::string_view key)
{
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

// Field access with "<source>: field 'a.b'" context on type errors.
class Reader
{
public:
  explicit Reader(std::string_view source) : source_(source) {}

  [[noreturn]] void ParseFail(std::string_view field, std::string_view what) const
  {
    throw ParseError(fmt::format("{}: field '{}': {}", source_, field, what));
  }

  [[noreturn]] void Invalid(std::string_view field, std::string_view what) const
  {
    throw ValidationError(fmt::format("{}: field '{}': {}", source_, field, what));
  }

  template <std::size_t N>
  void CheckKeys(const json &obj, std::string_view prefix,
                 const std::array<std::string_view, N> &allowed) const
  {
    for (const auto &[key, value] : obj.items())
    {
      if (!Contains(allowed, key))
      {
        const std::string full = prefix.empty() ? key : fmt::format("{}.{}", prefix, key);
        throw ParseError(fmt::format("{}: unknown key '{}'", source_, full));
      }
    }
  }

  std::optional<double> Number(const json &obj, std::string_view key,
                               std::string_view field) const
  {
    const auto it = obj.find(key);
    if (it == obj.end() || it->is_null())
    {
      return std::nullopt;
    }
    if (!it->is_number())
    {
      ParseFail(field, fmt::format("expected a number, got {}", it->type_name()));
    }
    const double v = it->get<double>();
    if (!std::isfinite(v))
    {
      Invalid(field, "must be finite");
    }
    return v;
  }

  double RequiredNumber(const json &obj, std::string_view key, std::string_view field) const
  {
    auto v = Number(obj, key, field);
    if (!v)
    {
      Invalid(field, "is required");
    }
    return *v;
  }

  std::optional<std::uint64_t> Integer(const json &obj, std::string_view key,
                                       std::string_view field) const
  {
    const auto it = obj.find(key);
    if (it == obj.end() || it->is_null())
    {
      return std::nullopt;
    }
    if (!it->is_number())
    {
      ParseFail(field, fmt::format("expected an integer, got {}", it->type_name()));
    }
    if (it->is_number_unsigned())
    {
      return it->get<std::uint64_t>();
    }
    if (it->is_number_integer())
    {
      const auto v = it->get<std::int64_t>();
      if (v < 0)
      {
        Invalid(field, fmt::format("must be non-negative (got {})", v));
      }
      return static_cast<std::uint64_t>(v);
    }
    const double d = it->get<double>();
    if (!(d >= 0.0) || d != std::floor(d) || d > 9.0e15)
    {
      Invalid(field, fmt::format("must be a non-negative integer (got {})", d));
    }
    return static_cast<std::uint64_t>(d);
  }

  std::optional<std::string> String(const json &obj, std::string_view key,
                                    std::string_view field) const
  {
    const auto it = obj.find(key);
    if (it == obj.end() || it->is_null())
    {
      return std::nullopt;
    }
    if (!it->is_string())
    {
      ParseFail(field, fmt::format("expected a string, got {}", it->type_name()));
    }
    return it->get<std::string>();
  }

  std::optional<bool> Bool(const json &obj, std::string_view key, std::string_view field) const
  {
    const auto it = obj.find(key);
    if (it == obj.end() || it->is_null())
    {
      return std::nullopt;
    }
    if (!it->is_boolean())
    {
      ParseFail(field, fmt::format("expected a boolean, got {}", it->type_name()));
    }
    return it->get<bool>();
  }

  const json *Object(const json &obj, std::string_view key) const
  {
    const auto it = obj.find(key);
    if (it == obj.end() || it->is_null())
    {
      return nullptr;
    }
    if (!it->is_object())
    {
      ParseFail(key, fmt::format("expected an object, got {}", it->type_name()));
    }
    return &*it;
  }

  std::string_view source() const { return source_; }

private:
  std::string source_;
};

std::size_t ReadCount(const Reader &r, const json &obj, std::string_view prefix)
{
  const std::string field = fmt::format("{}.count", prefix);
  const auto count = r.Integer(obj, "count", field);
  if (!count)
  {
    r.Invalid(field, "is required");
  }
  if (*count < 2)
  {
    r.Invalid(field, fmt::format("must be >= 2 (got {})", *count));
  }
  if (*count > kMaxCount)
  {
    r.Invalid(field, fmt::format("must be <= {} (got {})", kMaxCount, *count));
  }
  return static_cast<std::size_t>(*count);
}

RangeSpec ReadRange(const Reader &r, const json &obj, std::string_view prefix, double scale)
{
  r.CheckKeys(obj, prefix, kRangeKeys);
  RangeSpec range;
  range.lo = r.RequiredNumber(obj, "lo", fmt::format("{}.lo", prefix)) / scale;
  range.hi = r.RequiredNumber(obj, "hi", fmt::format("{}.hi", prefix)) / scale;
  range.count = ReadCount(r, obj, prefix);
  if (!(range.lo < range.hi))
  {
    r.Invalid(prefix, fmt::format("needs lo < hi (got lo = {}, hi = {})", range.lo, range.hi));
  }
  return range;
}

SweepSpec ReadSweep(const Reader &r, const json &obj, std::string_view prefix, double g_ref)
{
  r.CheckKeys(obj, prefix, kSweepKeys);
  const std::string knob_field = fmt::format("{}.knob", prefix);
  const auto name = r.String(obj, "knob", knob_field);
  if (!name)
  {
    r.Invalid(knob_field, "is required");
  }
  const auto knob = KnobFromName(*name);
  if (!knob)
  {
    r.Invalid(knob_field,
              fmt::format("unknown knob '{}' (expected one of omega_c1, omega_c2, omega_m, "
                          "gamma, g, theta)",
                          *name));
  }

  SweepSpec sweep;
  sweep.knob = *knob;
  sweep.range.lo = r.RequiredNumber(obj, "lo", fmt::format("{}.lo", prefix));
  sweep.range.hi = r.RequiredNumber(obj, "hi", fmt::format("{}.hi", prefix));
  sweep.range.count = ReadCount(r, obj, prefix);
  if (IsFrequencyKnob(*knob))
  {
    sweep.range.lo /= g_ref;
    sweep.range.hi /= g_ref;
  }
  if (!(sweep.range.lo < sweep.range.hi))
  {
    r.Invalid(prefix, fmt::format("needs lo < hi (got lo = {}, hi = {})", sweep.range.lo,
                                  sweep.range.hi));
  }
  if (*knob == Knob::Gamma && sweep.range.lo < 0.0)
  {
    r.Invalid(prefix, "gamma sweep must have lo >= 0");
  }
  if (*knob == Knob::G && !(sweep.range.lo > 0.0))
  {
    r.Invalid(prefix, "g sweep must have lo > 0");
  }
  return sweep;
}

json ParseOverrideValue(const std::string &text)
{
  try
  {
    return json::parse(text);
  }
  catch (const json::parse_error &)
  {
    return text;
  }
}

void ApplyOverride(json &doc, const std::string &assignment, std::string_view source)
{
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
  {
    throw ParseError(
        fmt::format("{}: override '{}': expected key=value", source, assignment));
  }
  const std::string key = assignment.substr(0, eq);
  json *node = &doc;
  std::size_t start = 0;
  while (true)
  {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? dot : dot - start);
    if (part.empty())
    {
      throw ParseError(fmt::format("{}: override '{}': empty key segment", source, key));
    }
    if (!node->is_object())
    {
      throw ParseError(fmt::format("{}: override '{}': parent is not an object", source, key));
    }
    if (dot == std::string::npos)
    {
      (*node)[part] = ParseOverrideValue(assignment.substr(eq + 1));
      return;
    }
    node = &(*node)[part];
    if (node->is_null())
    {
      *node = json::object();
    }
    start = dot + 1;
  }
}

std::pair<std::size_t, std::size_t> LineAndColumn(std::string_view text, std::size_t byte)
{
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); i++)
  {
    if (text[i] == '\n')
    {
      line++;
      col = 1;
    }
    else
    {
      col++;
    }
  }
  return {line, col};
}

}  // namespace

std::string_view CommandName(Command command)
{
  return kCommandNames[static_cast<std::size_t>(command)];
}

std::optional<Command> CommandFromName(std::string_view name)
{
  for (std::size_t i = 0; i < kCommandNames.size(); i++)
  {
    if (kCommandNames[i] == name)
    {
      return static_cast<Command>(i);
    }
  }
  return std::nullopt;
}

std::vector<double> RangeSpec::Values() const
{
  return Linspace(lo, hi, count);
}

double DegreesToRadians(double degrees)
{
  return degrees * (std::numbers::pi / 180.0);
}

std::vector<double> SweepSpec::InternalValues() const
{
  std::vector<double> v = range.Values();
  if (knob == Knob::Theta)
  {
    for (double &x : v)
    {
      x = DegreesToRadians(x);
    }
  }
  return v;
}

RunConfig ParseConfig(std::string_view document, std::span<const std::string> overrides,
                      std::optional<Command> command, std::string_view source)
{
  json doc;
  try
  {
    doc = json::parse(document.begin(), document.end(), nullptr, true, true);
  }
  catch (const json::parse_error &e)
  {
    const auto [line, col] = LineAndColumn(document, e.byte);
    std::string what = e.what();
    if (const auto pos = what.find(": "); pos != std::string::npos)
    {
      what = what.substr(pos + 2);
    }
    throw ParseError(fmt::format("{}:{}:{}: invalid JSON: {}", source, line, col, what));
  }
  if (!doc.is_object())
  {
    throw ParseError(fmt::format("{}: top level must be a JSON object", source));
  }
  for (const std::string &o : overrides)
  {
    ApplyOverride(doc, o, source);
  }

  const Reader r(source);
  r.CheckKeys(doc, "", kTopLevelKeys);
  for (std::string_view key : {"sweep", "x", "y"})
  {
    if (const json *o = r.Object(doc, key))
    {
      r.CheckKeys(*o, key, kSweepKeys);
    }
  }
  for (std::string_view key : {"omega_range", "omega_m_range", "theta_range", "gamma_range"})
  {
    if (const json *o = r.Object(doc, key))
    {
      r.CheckKeys(*o, key, kRangeKeys);
    }
  }
  if (const json *o = r.Object(doc, "tolerances"))
  {
    r.CheckKeys(*o, "tolerances", kToleranceKeys);
  }

  RunConfig cfg;

  const auto doc_command = r.String(doc, "command", "command");
  std::optional<Command> parsed_command;
  if (doc_command)
  {
    parsed_command = CommandFromName(*doc_command);
    if (!parsed_command)
    {
      r.Invalid("command", fmt::format("unknown command '{}'", *doc_command));
    }
  }
  if (command && parsed_command && *command != *parsed_command)
  {
    r.Invalid("command", fmt::format("document says '{}' but '{}' was requested",
                                     CommandName(*parsed_command), CommandName(*command)));
  }
  if (!command && !parsed_command)
  {
    throw ValidationError(fmt::format("{}: no command given", source));
  }
  cfg.command = command ? *command : *parsed_command;

  cfg.g_reference = r.Number(doc, "g", "g").value_or(1.0);
  if (!(cfg.g_reference > 0.0))
  {
    r.Invalid("g", fmt::format("must be > 0 (got {})", cfg.g_reference));
  }
  const double gr = cfg.g_reference;
  cfg.g_hz = r.Number(doc, "g_hz", "g_hz");
  if (cfg.g_hz && !(*cfg.g_hz > 0.0))
  {
    r.Invalid("g_hz", "must be > 0");
  }

  const double omega_c1 = r.Number(doc, "omega_c1", "omega_c1").value_or(24.0 * gr) / gr;
  const double omega_c2 = r.Number(doc, "omega_c2", "omega_c2").value_or(26.0 * gr) / gr;
  const double omega_c = 0.5 * (omega_c1 + omega_c2);
  const auto omega_m_raw = r.Number(doc, "omega_m", "omega_m");
  double omega_m = omega_m_raw ? *omega_m_raw / gr : omega_c;
  const double gamma = r.Number(doc, "gamma", "gamma").value_or(0.0) / gr;
  cfg.theta_deg = r.Number(doc, "theta", "theta").value_or(0.0);
  if (gamma < 0.0)
  {
    r.Invalid("gamma", fmt::format("must be >= 0 (got {})", gamma));
  }
  cfg.beta = r.Number(doc, "beta", "beta").value_or(0.1 * gr) / gr;
  if (!(cfg.beta > 0.0))
  {
    r.Invalid("beta", fmt::format("must be > 0 (got {})", cfg.beta));
  }

  if (cfg.command == Command::GapMap)
  {
    if (omega_m_raw && std::abs(omega_m - omega_c) > 1e-12 * std::max(1.0, std::abs(omega_c)))
    {
      r.Invalid("omega_m",
                fmt::format("gap-map runs at resonance; omega_m must equal omega_c = {} or be "
                            "omitted (got {})",
                            omega_c, omega_m));
    }
    omega_m = omega_c;
  }
  try
  {
    cfg.params =
        SystemParams(omega_c1, omega_c2, omega_m, gamma, 1.0, DegreesToRadians(cfg.theta_deg));
  }
  catch (const InvalidParameters &e)
  {
    throw ValidationError(fmt::format("{}: {}", source, e.what()));
  }

  if (const json *o = r.Object(doc, "sweep"))
  {
    cfg.sweep = ReadSweep(r, *o, "sweep", gr);
  }
  if (const json *o = r.Object(doc, "x"))
  {
    cfg.x = ReadSweep(r, *o, "x", gr);
  }
  if (const json *o = r.Object(doc, "y"))
  {
    cfg.y = ReadSweep(r, *o, "y", gr);
  }
  if (const json *o = r.Object(doc, "omega_range"))
  {
    cfg.omega_range = ReadRange(r, *o, "omega_range", gr);
  }
  if (const json *o = r.Object(doc, "omega_m_range"))
  {
    cfg.omega_m_range = ReadRange(r, *o, "omega_m_range", gr);
  }
  if (const json *o = r.Object(doc, "theta_range"))
  {
    cfg.theta_range = ReadRange(r, *o, "theta_range", 1.0);
  }
  if (const json *o = r.Object(doc, "gamma_range"))
  {
    cfg.gamma_range = ReadRange(r, *o, "gamma_range", gr);
    if (cfg.gamma_range->lo < 0.0)
    {
      r.Invalid("gamma_range.lo", "must be >= 0");
    }
  }

  if (const auto it = doc.find("deltas"); it != doc.end() && !it->is_null())
  {
    if (!it->is_array())
    {
      r.ParseFail("deltas", fmt::format("expected an array, got {}", it->type_name()));
    }
    for (std::size_t i = 0; i < it->size(); i++)
    {
      const json &v = (*it)[i];
      if (!v.is_number())
      {
        r.ParseFail(fmt::format("deltas[{}]", i), "expected a number");
      }
      const double d = v.get<double>();
      if (!std::isfinite(d))
      {
        r.Invalid(fmt::format("deltas[{}]", i), "must be finite");
      }
      cfg.deltas.push_back(d);
    }
  }
  cfg.normalize = r.Bool(doc, "normalize", "normalize").value_or(false);

  if (const json *o = r.Object(doc, "tolerances"))
  {
    cfg.tolerances.epsilon_real =
        r.Number(*o, "epsilon_real", "tolerances.epsilon_real").value_or(1e-7);
    cfg.tolerances.critical_gamma =
        r.Number(*o, "critical_gamma", "tolerances.critical_gamma").value_or(1e-4);
  }
  if (!(cfg.tolerances.epsilon_real > 0.0))
  {
    r.Invalid("tolerances.epsilon_real", "must be > 0");
  }
  if (!(cfg.tolerances.critical_gamma > 0.0))
  {
    r.Invalid("tolerances.critical_gamma", "must be > 0");
  }

  const auto threads = r.Integer(doc, "threads", "threads");
  if (threads && (*threads < 1 || *threads > 4096))
  {
    r.Invalid("threads", fmt::format("must be in [1, 4096] (got {})", *threads));
  }
  cfg.threads = threads ? static_cast<unsigned>(*threads) : DefaultThreadCount();
  cfg.seed = r.Integer(doc, "seed", "seed").value_or(42);
  const auto trials = r.Integer(doc, "trials", "trials").value_or(1000);
  if (trials < 1 || trials > kMaxCount)
  {
    r.Invalid("trials", fmt::format("must be in [1, {}] (got {})", kMaxCount, trials));
  }
  cfg.trials = static_cast<std::size_t>(trials);

  auto require = [&](bool present, std::string_view field)
  {
    if (!present)
    {
      r.Invalid(field, fmt::format("is required for '{}'", CommandName(cfg.command)));
    }
  };
  switch (cfg.command)
  {
    case Command::Spectrum:
      require(cfg.sweep.has_value(), "sweep");
      break;
    case Command::PhaseDiagram:
      require(cfg.x.has_value(), "x");
      require(cfg.y.has_value(), "y");
      if (cfg.x->knob == cfg.y->knob)
      {
        r.Invalid("y.knob", "must differ from x.knob");
      }
      break;
    case Command::Transmission:
      require(cfg.omega_range.has_value(), "omega_range");
      require(cfg.omega_m_range.has_value(), "omega_m_range");
      break;
    case Command::LineCut:
      require(cfg.omega_range.has_value(), "omega_range");
      require(!cfg.deltas.empty(), "deltas");
      break;
    case Command::GapMap:
      require(cfg.theta_range.has_value(), "theta_range");
      require(cfg.gamma_range.has_value(), "gamma_range");
      break;
    case Command::CriticalGamma:
      if (!cfg.omega_m_range)
      {
        cfg.omega_m_range = RangeSpec{20.0, 30.0, 2001};
      }
      break;
    case Command::Verify:
      break;
  }
  return cfg;
}

}  // namespace magnon::cli
