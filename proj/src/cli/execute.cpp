#include "magnon/cli/execute.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fmt/chrono.h>
#include <fmt/format.h>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <ostream>
#include <random>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>
#include <sstream>

#include "magnon/cli/csv.hpp"
#include "magnon/hamiltonian.hpp"
#include "magnon/parallel.hpp"
#include "magnon/phase_diagram.hpp"
#include "magnon/sampling.hpp"
#include "magnon/spectral.hpp"
#include "magnon/transmission.hpp"

#ifndef MAGNON_VERSION
#define MAGNON_VERSION "0.0.0"
#endif

namespace magnon::cli
{

using nlohmann::json;
using nlohmann::ordered_json;

namespace
{

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

/// Computation output held in memory until everything succeeded.
struct Artifact
{
  std::string file_name;
  CsvTable table;
  ordered_json results = ordered_json::object();
};

ordered_json RangeJson(const RangeSpec &r)
{
  return {{"lo", r.lo}, {"hi", r.hi}, {"count", r.count}};
}

ordered_json SweepJson(const SweepSpec &s)
{
  ordered_json j = {{"knob", KnobName(s.knob)}};
  j.update(RangeJson(s.range));
  j["unit"] = s.knob == Knob::Theta ? "deg" : "g";
  return j;
}

ScanOptions ScanOpts(const RunConfig &c)
{
  return {c.tolerances.epsilon_real, c.threads};
}

Artifact RunSpectrum(const RunConfig &c)
{
  const SweepSpec &sweep = *c.sweep;
  const std::vector<double> display = sweep.DisplayValues();
  const std::vector<double> internal = sweep.InternalValues();
  std::vector<SystemParams> points;
  points.reserve(internal.size());
  for (double v : internal)
  {
    points.push_back(c.params.With(sweep.knob, v));
  }
  const BranchSweep branches = TrackBranches(points);

  Artifact a{"spectrum.csv", CsvTable({std::string(KnobName(sweep.knob)), "branch", "re_omega",
                                       "im_omega"})};
  for (std::size_t i = 0; i < display.size(); i++)
  {
    for (std::size_t b = 0; b < 4; b++)
    {
      const Complex z = branches.branches[b][i];
      a.table.AddRow({display[i], b, z.real(), z.imag()});
    }
  }
  std::size_t all_real = 0;
  for (const SystemParams &p : points)
  {
    all_real += ClassifyParams(p, c.tolerances.epsilon_real) == Classification::AllReal;
  }
  a.results["points"] = points.size();
  a.results["all_real_points"] = all_real;
  return a;
}

Artifact RunPhaseDiagram(const RunConfig &c)
{
  const Axis x{c.x->knob, c.x->InternalValues()};
  const Axis y{c.y->knob, c.y->InternalValues()};
  const PhaseDiagramGrid grid = ScanPlane(c.params, x, y, ScanOpts(c));
  const std::vector<double> xd = c.x->DisplayValues();
  const std::vector<double> yd = c.y->DisplayValues();

  Artifact a{"phase_diagram.csv", CsvTable({"x", "y", "classification"})};
  std::size_t real_cells = 0;
  for (std::size_t iy = 0; iy < yd.size(); iy++)
  {
    for (std::size_t ix = 0; ix < xd.size(); ix++)
    {
      const bool real = grid.At(ix, iy) == Classification::AllReal;
      real_cells += real;
      a.table.AddRow({xd[ix], yd[iy], real ? "real" : "complex"});
    }
  }
  a.results["cells"] = grid.classification.size();
  a.results["real_cells"] = real_cells;
  a.results["complex_cells"] = grid.classification.size() - real_cells;
  return a;
}

Artifact RunTransmission(const RunConfig &c)
{
  const RangeSpec &w = *c.omega_range;
  const RangeSpec &wm = *c.omega_m_range;
  const TransmissionGrid grid =
      TransmissionMap(TransmissionParams(c.params, c.beta), w.lo, w.hi, w.count, wm.lo, wm.hi,
                      wm.count, {c.normalize, c.threads});

  Artifact a{"transmission.csv", CsvTable({"omega_m", "omega", "s21_abs"})};
  for (std::size_t im = 0; im < grid.omega_m_values.size(); im++)
  {
    for (std::size_t iw = 0; iw < grid.omega_values.size(); iw++)
    {
      a.table.AddRow({grid.omega_m_values[im], grid.omega_values[iw], grid.At(iw, im)});
    }
  }
  a.results["normalized"] = grid.normalized;
  a.results["pole_cells"] = grid.pole_cells.size();
  return a;
}

Artifact RunLineCut(const RunConfig &c)
{
  const RangeSpec &w = *c.omega_range;
  const TransmissionParams tp(c.params, c.beta);
  Artifact a{"line_cut.csv", CsvTable({"delta", "omega", "s21_norm"})};
  for (double delta : c.deltas)
  {
    for (const LineCutSample &s : LineCut(tp, delta, w.lo, w.hi, w.count))
    {
      a.table.AddRow({delta, s.omega, s.value});
    }
  }
  a.results["cuts"] = c.deltas.size();
  return a;
}

Artifact RunGapMap(const RunConfig &c)
{
  const std::vector<double> theta_deg = c.theta_range->Values();
  std::vector<double> theta_rad;
  theta_rad.reserve(theta_deg.size());
  for (double t : theta_deg)
  {
    theta_rad.push_back(DegreesToRadians(t));
  }
  const GapMap map =
      ComputeGapMap(c.params, std::move(theta_rad), c.gamma_range->Values(), ScanOpts(c));

  Artifact a{"gap_map.csv", CsvTable({"theta", "gamma", "delta_omega"})};
  std::size_t zero_cells = 0;
  double max_gap = 0.0;
  for (std::size_t ig = 0; ig < map.gamma_values.size(); ig++)
  {
    for (std::size_t it = 0; it < theta_deg.size(); it++)
    {
      const double gap = map.At(it, ig);
      zero_cells += gap == 0.0;
      max_gap = std::max(max_gap, gap);
      a.table.AddRow({theta_deg[it], map.gamma_values[ig], gap});
    }
  }
  a.results["cells"] = map.delta_omega.size();
  a.results["zero_cells"] = zero_cells;
  a.results["max_delta_omega"] = max_gap;
  return a;
}

Artifact RunCriticalGamma(const RunConfig &c)
{
  const RangeSpec &wm = *c.omega_m_range;
  CriticalGammaOptions opts;
  opts.omega_m_points = wm.count;
  opts.tolerance = c.tolerances.critical_gamma;
  opts.epsilon_real = c.tolerances.epsilon_real;
  const CriticalGammaResult r = CriticalGamma(c.params, wm.lo, wm.hi, opts);

  Artifact a{"critical_gamma.csv", CsvTable({"theta", "p"})};
  a.table.AddRow({c.theta_deg, r.p});
  a.results["p"] = r.p;
  a.results["p_lower"] = r.lower;
  a.results["p_upper"] = r.upper;
  return a;
}

Artifact RunVerify(const RunConfig &c)
{
  std::mt19937_64 rng(c.seed);
  std::vector<SystemParams> samples;
  samples.reserve(c.trials);
  for (std::size_t i = 0; i < c.trials; i++)
  {
    samples.push_back(SampleParams(rng));
  }

  struct Row
  {
    double residual, relative, charpoly_imag;
  };
  std::vector<Row> rows(samples.size());
  ParallelFor(samples.size(), c.threads,
              [&](std::size_t i)
              {
                const ComplexMatrix4 h = BuildHamiltonian(samples[i]);
                const double residual = PseudoHermiticityResidual(h, BuildEta(samples[i]));
                const auto poly = CharacteristicPolynomial(h);
                double imag = 0.0;
                double scale = 0.0;
                for (const Complex &k : poly)
                {
                  imag = std::max(imag, std::abs(k.imag()));
                  scale = std::max(scale, std::abs(k));
                }
                rows[i] = {residual, residual / h.FrobeniusNorm(), imag / scale};
              });

  Artifact a{"verify.csv", CsvTable({"trial", "omega_c1", "omega_c2", "omega_m", "gamma", "theta",
                                     "residual", "relative_residual", "charpoly_imag_rel"})};
  double max_res = 0.0;
  double max_rel = 0.0;
  double max_imag = 0.0;
  for (std::size_t i = 0; i < samples.size(); i++)
  {
    const SystemParams &p = samples[i];
    const Row &r = rows[i];
    a.table.AddRow({i, p.omega_c1(), p.omega_c2(), p.omega_m(), p.gamma(),
                    p.theta() * kRadToDeg, r.residual, r.relative, r.charpoly_imag});
    max_res = std::max(max_res, r.residual);
    max_rel = std::max(max_rel, r.relative);
    max_imag = std::max(max_imag, r.charpoly_imag);
  }
  a.results["trials"] = c.trials;
  a.results["seed"] = c.seed;
  a.results["max_residual"] = max_res;
  a.results["max_relative_residual"] = max_rel;
  a.results["max_charpoly_imag_rel"] = max_imag;
  return a;
}

Artifact Compute(const RunConfig &c)
{
  switch (c.command)
  {
    case Command::Spectrum:
      return RunSpectrum(c);
    case Command::PhaseDiagram:
      return RunPhaseDiagram(c);
    case Command::Transmission:
      return RunTransmission(c);
    case Command::LineCut:
      return RunLineCut(c);
    case Command::GapMap:
      return RunGapMap(c);
    case Command::CriticalGamma:
      return RunCriticalGamma(c);
    case Command::Verify:
      return RunVerify(c);
  }
  throw std::logic_error("unhandled command");
}

ordered_json ParamsJson(const RunConfig &c)
{
  const SystemParams &p = c.params;
  ordered_json j = {{"omega_c1", p.omega_c1()},
                    {"omega_c2", p.omega_c2()},
                    {"omega_m", p.omega_m()},
                    {"gamma", p.gamma()},
                    {"g", p.g()},
                    {"theta_deg", c.theta_deg},
                    {"theta_rad", p.theta()},
                    {"omega_c", p.omega_c()},
                    {"delta_c", p.delta_c()},
                    {"beta", c.beta},
                    {"g_reference", c.g_reference}};
  j["g_hz"] = c.g_hz ? json(*c.g_hz) : json(nullptr);
  return j;
}

ordered_json AxesJson(const RunConfig &c)
{
  ordered_json j = ordered_json::object();
  if (c.sweep)
  {
    j["sweep"] = SweepJson(*c.sweep);
  }
  if (c.x)
  {
    j["x"] = SweepJson(*c.x);
  }
  if (c.y)
  {
    j["y"] = SweepJson(*c.y);
  }
  if (c.omega_range)
  {
    j["omega_range"] = RangeJson(*c.omega_range);
  }
  if (c.omega_m_range)
  {
    j["omega_m_range"] = RangeJson(*c.omega_m_range);
  }
  if (c.theta_range)
  {
    j["theta_range"] = RangeJson(*c.theta_range);
    j["theta_range"]["unit"] = "deg";
  }
  if (c.gamma_range)
  {
    j["gamma_range"] = RangeJson(*c.gamma_range);
  }
  if (!c.deltas.empty())
  {
    j["deltas"] = c.deltas;
  }
  return j;
}

std::string OneLine(std::string s)
{
  for (char &ch : s)
  {
    if (ch == '\n' || ch == '\r')
    {
      ch = ' ';
    }
  }
  while (!s.empty() && s.back() == ' ')
  {
    s.pop_back();
  }
  return s;
}

}  // namespace

ExecutionResult Execute(const RunConfig &config, const std::string &config_path)
{
  const auto start = std::chrono::steady_clock::now();
  spdlog::debug("running {} with {} thread(s)", CommandName(config.command), config.threads);
  Artifact artifact = Compute(config);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  ordered_json manifest;
  manifest["tool"] = kToolName;
  manifest["version"] = MAGNON_VERSION;
  manifest["command"] = CommandName(config.command);
  manifest["config"] = config_path;
  manifest["params"] = ParamsJson(config);
  manifest["axes"] = AxesJson(config);
  manifest["normalize"] = config.normalize;
  manifest["tolerances"] = {{"epsilon_real", config.tolerances.epsilon_real},
                            {"critical_gamma", config.tolerances.critical_gamma}};
  manifest["threads"] = config.threads;
  manifest["outputs"] = {artifact.file_name};
  manifest["rows"] = artifact.table.rows();
  manifest["results"] = artifact.results;
  manifest["wall_time_s"] = wall;
  manifest["timestamp"] = fmt::format("{:%Y-%m-%dT%H:%M:%SZ}",
                                      fmt::gmtime(std::chrono::system_clock::to_time_t(
                                          std::chrono::system_clock::now())));

  ExecutionResult result;
  result.manifest = manifest.dump(2) + "\n";

  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec)
  {
    throw std::runtime_error(fmt::format("cannot create output directory '{}': {}",
                                         config.output_dir.string(), ec.message()));
  }
  const auto csv_path = config.output_dir / artifact.file_name;
  artifact.table.Write(csv_path);
  result.outputs.push_back(csv_path);

  const auto manifest_path = config.output_dir / "manifest.json";
  std::ofstream mf(manifest_path, std::ios::binary | std::ios::trunc);
  mf << result.manifest;
  mf.close();
  if (!mf)
  {
    throw std::runtime_error(fmt::format("cannot write '{}'", manifest_path.string()));
  }
  result.outputs.push_back(manifest_path);
  spdlog::debug("wrote {} rows to {}", artifact.table.rows(), csv_path.string());
  return result;
}

int RunCli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
  auto fail = [&](int code, const std::string &message)
  {
    err << kToolName << ": error: " << OneLine(message) << '\n';
    err.flush();
    return code;
  };

  CLI::App app{"Spectral and transmission analysis of a two-cavity, two-magnon loop",
               kToolName};
  std::string command_name;
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  bool verbose = false;
  app.add_option("command", command_name,
                 "spectrum | phase-diagram | transmission | line-cut | gap-map | "
                 "critical-gamma | verify")
      ->required();
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--set", overrides, "Override a config field, key=value (repeatable)")
      ->allow_extra_args(false);
  app.add_option("--out", out_dir, "Output directory")->required();
  app.add_flag("-v,--verbose", verbose, "Debug logging on stderr");
  app.set_version_flag("--version", std::string(MAGNON_VERSION));

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::CallForHelp &)
  {
    out << app.help();
    return 0;
  }
  catch (const CLI::CallForVersion &)
  {
    out << MAGNON_VERSION << '\n';
    return 0;
  }
  catch (const CLI::ParseError &e)
  {
    return fail(2, e.what());
  }

  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto logger = std::make_shared<spdlog::logger>(kToolName, sink);
  logger->set_pattern("%n: %l: %v");
  logger->set_level(verbose ? spdlog::level::debug : spdlog::level::off);
  const auto previous = spdlog::default_logger();
  spdlog::set_default_logger(logger);
  struct Restore
  {
    std::shared_ptr<spdlog::logger> logger;
    ~Restore() { spdlog::set_default_logger(logger); }
  } restore{previous};

  const auto command = CommandFromName(command_name);
  if (!command)
  {
    return fail(2, fmt::format("unknown command '{}'", command_name));
  }

  std::ifstream in(config_path, std::ios::binary);
  if (!in)
  {
    return fail(2, fmt::format("cannot read config '{}'", config_path));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();

  RunConfig config;
  try
  {
    config = ParseConfig(buffer.str(), overrides, command, config_path);
  }
  catch (const ParseError &e)
  {
    return fail(2, e.what());
  }
  catch (const ValidationError &e)
  {
    return fail(2, e.what());
  }
  config.output_dir = out_dir;

  try
  {
    const ExecutionResult result = Execute(config, config_path);
    for (const auto &p : result.outputs)
    {
      out << p.string() << '\n';
    }
  }
  catch (const std::exception &e)
  {
    return fail(1, fmt::format("{}: {}", config_path, e.what()));
  }
  return 0;
}

}  // namespace magnon::cli
