#include "nslab/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "nslab/experiments.hpp"
#include "nslab/nsf_io.hpp"
#include "nslab/projection.hpp"
#include "nslab/spectral.hpp"
#include "nslab/tables.hpp"

namespace nslab::cli {

namespace {

namespace fs = std::filesystem;

struct ConfigError : std::runtime_error {
  ConfigError(const std::string& flag, const std::string& msg) : std::runtime_error(flag + ": " + msg) {}
};

struct CliConfig {
  std::string subcommand;
  std::string scheme = "lri";
  double mu = 0.5;
  std::string grid = "64";
  /// Empty means the subcommand's default: 256 steps for `run`, 64 for
  /// `conv-space`, the 32..256 ladder otherwise.
  std::string steps;
  double tmax = kDefaultFinalTime;
  std::string ic = "paper";
  double m = kDefaultExponent;
  double tol = 1e-10;
  int max_iter = 500;
  int restart = 30;
  std::string solver = "krylov";
  std::string out;
  std::string format = "csv";
  bool dump_fields = false;
  std::uint64_t seed = 1;
  double perturb = 0.0;
  int refine = 64;
};

std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      values.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError(flag, "expected an integer or comma-separated integers, got '" + text + "'");
    }
  }
  if (values.empty()) throw ConfigError(flag, "no value given");
  return values;
}

std::string steps_text(const CliConfig& c) {
  if (!c.steps.empty()) return c.steps;
  if (c.subcommand == "run") return "256";
  if (c.subcommand == "conv-space") return "64";
  return "32,64,128,256";
}

int single_int(const std::string& text, const std::string& flag) {
  const auto values = parse_int_list(text, flag);
  if (values.size() != 1) throw ConfigError(flag, "this subcommand takes a single value");
  return values.front();
}

GridSpec make_grid(int n, const std::string& flag) {
  try {
    return GridSpec(n);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(flag, e.what());
  }
}

void require_doubling_flag(const std::vector<int>& values, const std::string& flag) {
  try {
    require_doubling(values, flag.c_str());
  } catch (const std::invalid_argument&) {
    throw ConfigError(flag, "values must be positive and double from entry to entry");
  }
}

SolverConfig solver_config(const CliConfig& c) {
  SolverConfig s;
  s.rel_tol = c.tol;
  s.max_iter = c.max_iter;
  s.restart = c.restart;
  s.method = c.solver == "fixed-point" ? SolverMethod::FixedPoint : SolverMethod::Krylov;
  return s;
}

void validate_common(const CliConfig& c) {
  if (!(c.mu >= 0.0) || !std::isfinite(c.mu)) throw ConfigError("--mu", "must be a finite number >= 0");
  if (!(c.tmax > 0.0) || !std::isfinite(c.tmax)) throw ConfigError("--tmax", "must be positive");
  if (!(c.m > 1.0)) throw ConfigError("--m", "must exceed 1");
  if (!(c.tol > 0.0 && c.tol < 1.0)) throw ConfigError("--tol", "must lie in (0, 1)");
  if (c.max_iter < 1) throw ConfigError("--max-iter", "must be >= 1");
  if (c.restart < 1) throw ConfigError("--restart", "must be >= 1");
  if (c.refine < 64) throw ConfigError("--refine", "must be >= 64");
  if (!(c.perturb >= 0.0)) throw ConfigError("--perturb", "must be >= 0");
  if (c.ic != "paper" && c.ic != "taylor-green" && c.ic.rfind("file:", 0) != 0) {
    throw ConfigError("--ic", "expected paper, taylor-green or file:<path>");
  }
}

SpectralField initial_field(const CliConfig& c, const GridSpec& g) {
  if (c.ic == "paper") return sin_power_initial_condition(c.m, g);
  if (c.ic == "taylor-green") return taylor_green(0.0, c.mu, g);
  const fs::path path = c.ic.substr(5);
  PhysicalField f{g};
  try {
    f = read_nsf(path);
  } catch (const std::exception& e) {
    throw ConfigError("--ic", e.what());
  }
  if (!(f.grid == g)) {
    throw ConfigError("--ic", "field file has n=" + std::to_string(f.grid.n()) + " but --grid is " +
                                  std::to_string(g.n()));
  }
  return leray_project(forward(f, g));
}

void write_output(const CliConfig& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream os(c.out, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + c.out + " for writing");
  os << text;
}

fs::path dump_stem(const CliConfig& c) {
  if (c.out.empty()) return fs::path("nslab_" + c.subcommand);
  fs::path p(c.out);
  return p.parent_path() / p.stem();
}

std::string fmt_number(double x) {
  if (!std::isfinite(x)) return "NAN";
  std::ostringstream os;
  os << std::setprecision(6) << std::scientific << x;
  return os.str();
}

int cmd_run(const CliConfig& c, std::ostream& out, std::ostream& err) {
  const GridSpec g = make_grid(single_int(c.grid, "--grid"), "--grid");
  const int N = single_int(steps_text(c), "--steps");
  if (N < 0) throw ConfigError("--steps", "must be >= 0");
  const SchemeKind scheme = parse_scheme(c.scheme);
  const SpectralField u0 = initial_field(c, g);
  const RunResult r = run(RunConfig::uniform(scheme, c.mu, g, c.tmax, N, solver_config(c)), u0);
  write_output(c, diagnostics_json(r.diagnostics), out);
  if (c.dump_fields) {
    const fs::path stem = dump_stem(c);
    write_nsf(fs::path(stem.string() + ".u0.nsf"), inverse(u0, g));
    if (r.finite) write_nsf(fs::path(stem.string() + ".final.nsf"), inverse(r.final_field, g));
  }
  err << c.scheme << " steps=" << r.diagnostics.size() << " energy="
      << fmt_number(r.finite ? l2_norm(r.final_field) : NAN) << " finite=" << (r.finite ? "true" : "false")
      << "\n";
  return kExitOk;
}

int cmd_conv_time(const CliConfig& c, std::ostream& out, std::ostream& err) {
  const GridSpec g = make_grid(single_int(c.grid, "--grid"), "--grid");
  const auto N_list = parse_int_list(steps_text(c), "--steps");
  require_doubling_flag(N_list, "--steps");
  const SchemeKind scheme = parse_scheme(c.scheme);
  RunObserver observer;
  if (c.dump_fields) {
    const fs::path stem = dump_stem(c);
    observer = [stem, g](int steps, const RunResult& r) {
      if (r.finite) {
        write_nsf(fs::path(stem.string() + ".N" + std::to_string(steps) + ".nsf"),
                  inverse(r.final_field, g));
      }
    };
  }
  const ConvergenceTable t = time_self_convergence(scheme, c.mu, g, c.tmax, N_list, initial_field(c, g),
                                                   solver_config(c), observer);
  write_output(c, render(std::span(&t, 1), parse_table_format(c.format)), out);
  const auto rate = t.headline_rate();
  err << c.scheme << " mu=" << c.mu << " n=" << g.n() << " rate="
      << (rate ? fmt_number(*rate) : std::string("-")) << "\n";
  return kExitOk;
}

int cmd_conv_space(const CliConfig& c, std::ostream& out, std::ostream&) {
  const auto n_list = parse_int_list(c.grid, "--grid");
  require_doubling_flag(n_list, "--grid");
  for (int n : n_list) make_grid(n, "--grid");
  const int N = single_int(steps_text(c), "--steps");
  if (N < 1) throw ConfigError("--steps", "must be >= 1");
  if (c.ic.rfind("file:", 0) == 0) throw ConfigError("--ic", "file input is tied to one grid size");
  const SchemeKind scheme = parse_scheme(c.scheme);
  const InitialBuilder initial = [&c](const GridSpec& g) { return initial_field(c, g); };
  const SpatialTable t = spatial_resolution_study(scheme, c.mu, c.tmax, N, n_list, initial, solver_config(c));
  write_output(c, render_spatial(t, parse_table_format(c.format)), out);
  return kExitOk;
}

int cmd_taylor_green(const CliConfig& c, std::ostream& out, std::ostream& err) {
  const GridSpec g = make_grid(single_int(c.grid, "--grid"), "--grid");
  const auto N_list = parse_int_list(steps_text(c), "--steps");
  require_doubling_flag(N_list, "--steps");
  const SchemeKind scheme = parse_scheme(c.scheme);
  const ConvergenceTable t =
      taylor_green_convergence(scheme, c.mu, g, c.tmax, N_list, c.perturb, c.seed, solver_config(c));
  write_output(c, render(std::span(&t, 1), parse_table_format(c.format)), out);
  err << c.scheme << " max error=";
  double worst = 0.0;
  for (const auto& row : t.rows) worst = std::isfinite(row.error) ? std::max(worst, row.error) : NAN;
  err << fmt_number(worst) << "\n";
  return kExitOk;
}

int cmd_truncation(const CliConfig& c, std::ostream& out, std::ostream&) {
  const GridSpec g = make_grid(single_int(c.grid, "--grid"), "--grid");
  const auto N_list = parse_int_list(steps_text(c), "--steps");
  for (int N : N_list) {
    if (N < 1) throw ConfigError("--steps", "must be >= 1");
  }
  const SchemeKind scheme = parse_scheme(c.scheme);
  const SpectralField u0 = initial_field(c, g);
  nlohmann::json rows = nlohmann::json::array();
  std::string csv = "N,tau,probe,ratio\n";
  double prev = NAN;
  char buf[128];
  for (int N : N_list) {
    const double tau = c.tmax / N;
    const double probe = local_truncation_probe(scheme, u0, tau, c.mu, c.refine, solver_config(c));
    const double ratio = prev / probe;
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,", N, tau, probe);
    csv += buf;
    if (std::isfinite(ratio)) {
      std::snprintf(buf, sizeof buf, "%.17g", ratio);
      csv += buf;
    }
    csv += "\n";
    rows.push_back({{"N", N}, {"tau", tau}, {"probe", probe},
                    {"ratio", std::isfinite(ratio) ? nlohmann::json(ratio) : nlohmann::json(nullptr)}});
    prev = probe;
  }
  write_output(c, c.format == "json" ? rows.dump(2) + "\n" : csv, out);
  return kExitOk;
}

void add_common_options(CLI::App* sub, CliConfig& c) {
  sub->add_option("--scheme", c.scheme, "time integrator")
      ->check(CLI::IsMember({"lri", "explicit-lri", "semi-euler", "exp-euler"}));
  sub->add_option("--mu", c.mu, "viscosity");
  sub->add_option("--grid", c.grid, "modes per dimension (comma list for conv-space)");
  sub->add_option("--steps", c.steps, "number of time steps, or a comma list");
  sub->add_option("--tmax", c.tmax, "final time");
  sub->add_option("--ic", c.ic, "initial condition: paper, taylor-green or file:<path>");
  sub->add_option("--m", c.m, "exponent of the sin^m initial condition");
  sub->add_option("--tol", c.tol, "relative residual of implicit solves");
  sub->add_option("--max-iter", c.max_iter, "iteration cap of implicit solves");
  sub->add_option("--restart", c.restart, "GMRES restart length");
  sub->add_option("--solver", c.solver, "implicit solver")->check(CLI::IsMember({"krylov", "fixed-point"}));
  sub->add_option("--out", c.out, "output file (default: stdout)");
  sub->add_option("--format", c.format, "table format")->check(CLI::IsMember({"csv", "markdown", "json"}));
  sub->add_flag("--dump-fields", c.dump_fields, "write NSF1 dumps of initial/final fields");
  sub->add_option("--seed", c.seed, "seed of the Taylor-Green perturbation");
  sub->add_option("--perturb", c.perturb, "L2 norm of the Taylor-Green perturbation (taylor-green)");
  sub->add_option("--refine", c.refine, "reference substeps per step (truncation)");
}

}  // namespace

std::string diagnostics_json(std::span<const StepDiagnostics> diags) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& d : diags) {
    arr.push_back({{"n", d.n},
                   {"energy", d.energy},
                   {"divergence_inf", d.divergence_inf},
                   {"solver_iterations", d.solver_iterations},
                   {"solver_residual", d.solver_residual},
                   {"finite", d.finite}});
  }
  return arr.dump(2) + "\n";
}

void write_diagnostics(std::span<const StepDiagnostics> diags, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << diagnostics_json(diags);
  if (!os) throw std::runtime_error("write to " + path.string() + " failed");
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig c;
  CLI::App app{"Pseudo-spectral Navier-Stokes time-integrator laboratory", "nslab"};
  app.require_subcommand(1);
  const std::pair<const char*, const char*> subcommands[] = {
      {"run", "single run; writes step diagnostics as JSON"},
      {"conv-time", "temporal self-convergence table"},
      {"conv-space", "spatial resolution study"},
      {"taylor-green", "global error against the Taylor-Green vortex"},
      {"truncation", "local truncation probe"},
  };
  for (const auto& [name, help] : subcommands) {
    add_common_options(app.add_subcommand(name, help), c);
  }

  std::vector<const char*> argv;
  argv.push_back("nslab");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    if (auto nl = msg.find('\n'); nl != std::string::npos) msg.resize(nl);
    err << "error: " << msg << "\n";
    return kExitConfigError;
  }
  for (const auto* sub : app.get_subcommands()) c.subcommand = sub->get_name();

  try {
    validate_common(c);
    if (c.subcommand == "run") return cmd_run(c, out, err);
    if (c.subcommand == "conv-time") return cmd_conv_time(c, out, err);
    if (c.subcommand == "conv-space") return cmd_conv_space(c, out, err);
    if (c.subcommand == "taylor-green") return cmd_taylor_green(c, out, err);
    if (c.subcommand == "truncation") return cmd_truncation(c, out, err);
    err << "error: unknown subcommand\n";
    return kExitConfigError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  }
}

}  // namespace nslab::cli
