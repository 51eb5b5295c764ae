#pragma once

// Command-line front end. Header-only so the tests can drive parse_args/run
// in-process; tools/fluxbound.cpp is a thin main().

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fluxbound/ab_spectrum.hpp"
#include "fluxbound/ac_spectrum.hpp"
#include "fluxbound/errors.hpp"
#include "fluxbound/extension.hpp"
#include "fluxbound/oracle.hpp"

namespace fluxbound::cli {

class UsageError : public DomainError {
 public:
  using DomainError::DomainError;
  const char* reason() const noexcept override { return "usage"; }
};

/// --help was given; what() holds the formatted help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { ab_solve, ab_sweep, ab_density, ab_wavefunction, ac_solve, ac_sweep, oracle_check };

inline const char* to_string(Command c) {
  switch (c) {
    case Command::ab_solve: return "ab-solve";
    case Command::ab_sweep: return "ab-sweep";
    case Command::ab_density: return "ab-density";
    case Command::ab_wavefunction: return "ab-wavefunction";
    case Command::ac_solve: return "ac-solve";
    case Command::ac_sweep: return "ac-sweep";
    case Command::oracle_check: return "oracle-check";
  }
  return "?";
}

enum class Format { csv, json };

/// Uniform grid "lo:hi:n", endpoints included.
struct Grid {
  double lo = 0.0;
  double hi = 0.0;
  int n = 0;

  std::vector<double> points() const {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
    return out;
  }
};

inline Grid parse_grid(const std::string& text, const std::string& flag) {
  Grid g;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &g.lo, &g.hi, &g.n, &tail) != 3)
    throw UsageError(flag + ": expected lo:hi:n, got '" + text + "'");
  if (!std::isfinite(g.lo) || !std::isfinite(g.hi))
    throw UsageError(flag + ": grid bounds must be finite");
  if (g.n < 2) throw UsageError(flag + ": grid needs at least 2 points");
  return g;
}

struct RunSpec {
  Command command = Command::ab_solve;
  double mass = 1.0;
  int l = 0;
  int s = -1;
  double mu = 0.0;
  int zeta = 1;
  double coupling = 0.0;
  std::optional<double> gamma;
  Extension ext = Extension::from_xi(-1.0);
  std::optional<Grid> beta_grid;
  long long flux_integer = 0;
  std::optional<Grid> gamma_grid;
  std::optional<Grid> coupling_grid;
  std::optional<Grid> energy_grid;
  std::optional<Grid> r_grid;
  std::optional<double> energy;
  std::string level_eq = "master";
  std::string sector = "dirac";
  Format format = Format::csv;
  std::string output;
};

// ---------------------------------------------------------------------------
// Tables

using Cell = std::variant<long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

namespace schema {
inline const std::vector<std::string> sweep{"beta", "l",  "s",        "mu",            "nu",
                                            "tau",  "xi", "E_over_m", "lambda_over_m", "residual"};
inline const std::vector<std::string> ac{"gamma", "l",        "zeta",         "coupling",
                                         "xi",    "E_over_m", "kappa_over_m", "residual"};
inline const std::vector<std::string> density{"E_over_m", "density"};
inline const std::vector<std::string> wavefunction{"r_times_m", "f1", "f2"};
inline const std::vector<std::string> oracle{"sector",           "E_analytic_over_m",
                                             "E_oracle_over_m",  "abs_diff",
                                             "match_residual",   "r_min_sensitivity"};
}  // namespace schema

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string emit_table(const Table& t, Format format) {
  for (const auto& row : t.rows)
    if (row.size() != t.columns.size()) throw std::logic_error("emit_table: row width mismatch");
  if (format == Format::csv) {
    std::string out;
    for (std::size_t c = 0; c < t.columns.size(); ++c) out += (c ? "," : "") + t.columns[c];
    out += '\n';
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out += ',';
        if (const auto* i = std::get_if<long long>(&row[c]))
          out += std::to_string(*i);
        else if (const auto* d = std::get_if<double>(&row[c]))
          out += format_double(*d);
        else
          out += std::get<std::string>(row[c]);
      }
      out += '\n';
    }
    return out;
  }
  auto doc = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::visit([&](const auto& v) { obj[t.columns[c]] = v; }, row[c]);
    }
    doc.push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Parsing

/// Parses argv into a validated RunSpec. Throws UsageError or HelpRequested.
inline RunSpec parse_args(int argc, const char* const* argv) {
  CLI::App app{"Bound states and spectral densities of point-flux fermion problems", "fluxbound"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key = value file; explicit flags win");

  RunSpec spec;
  std::optional<double> xi;
  std::optional<double> theta;
  std::string beta_grid, gamma_grid, coupling_grid, energy_grid, r_grid;
  std::string format = "csv";

  app.add_option("--mass", spec.mass, "fermion mass (energy unit)");
  app.add_option("--l", spec.l, "orbital quantum number");
  app.add_option("--s", spec.s, "spin label +1/-1");
  app.add_option("--mu", spec.mu, "flux in units of the flux quantum");
  app.add_option("--zeta", spec.zeta, "AC spin projection +1/-1");
  app.add_option("--coupling", spec.coupling, "AC coupling Ma");
  app.add_option("--gamma", spec.gamma, "AC index (sets l=0, zeta=+1, Ma=-gamma)");
  auto* xi_opt = app.add_option("--xi", xi, "extension parameter");
  auto* theta_opt = app.add_option("--theta", theta, "extension angle, xi = tan(theta/2)");
  xi_opt->excludes(theta_opt);
  theta_opt->excludes(xi_opt);
  app.add_option("--beta-grid", beta_grid, "fractional flux grid lo:hi:n");
  app.add_option("--flux-integer", spec.flux_integer, "integer part of the flux for sweeps");
  app.add_option("--gamma-grid", gamma_grid, "AC index grid lo:hi:n");
  app.add_option("--coupling-grid", coupling_grid, "AC coupling grid lo:hi:n");
  app.add_option("--energy-grid", energy_grid, "E/m grid lo:hi:n");
  app.add_option("--r-grid", r_grid, "m r grid lo:hi:n");
  app.add_option("--energy", spec.energy, "E/m of a continuum wave function");
  app.add_option("--level-eq", spec.level_eq, "level equation")
      ->check(CLI::IsMember({"master", "wr00", "levab", "lev0lev1"}));
  app.add_option("--sector", spec.sector, "oracle sector")->check(CLI::IsMember({"dirac", "ac"}));
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output", spec.output, "output file (default stdout)");

  const std::vector<std::pair<Command, std::string>> commands{
      {Command::ab_solve, "bound level of one Dirac channel"},
      {Command::ab_sweep, "bound level over a fractional-flux grid"},
      {Command::ab_density, "continuum spectral density over an energy grid"},
      {Command::ab_wavefunction, "radial doublet on an r grid"},
      {Command::ac_solve, "bound level of one AC channel"},
      {Command::ac_sweep, "AC level over a gamma or coupling grid"},
      {Command::oracle_check, "analytic level against the shooting solver"}};
  for (const auto& [cmd, help] : commands) {
    auto* sub = app.add_subcommand(to_string(cmd), help);
    sub->fallthrough();
    sub->callback([&spec, c = cmd] { spec.command = c; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (xi && theta) throw UsageError("--xi and --theta are mutually exclusive");
  if (!xi && !theta) throw UsageError("one of --xi or --theta is required");
  spec.ext = xi ? Extension::from_xi(*xi) : Extension::from_theta(*theta);
  spec.format = format == "json" ? Format::json : Format::csv;
  if (!beta_grid.empty()) spec.beta_grid = parse_grid(beta_grid, "--beta-grid");
  if (!gamma_grid.empty()) spec.gamma_grid = parse_grid(gamma_grid, "--gamma-grid");
  if (!coupling_grid.empty()) spec.coupling_grid = parse_grid(coupling_grid, "--coupling-grid");
  if (!energy_grid.empty()) spec.energy_grid = parse_grid(energy_grid, "--energy-grid");
  if (!r_grid.empty()) spec.r_grid = parse_grid(r_grid, "--r-grid");

  switch (spec.command) {
    case Command::ab_sweep:
      if (!spec.beta_grid) throw UsageError("ab-sweep needs --beta-grid");
      break;
    case Command::ab_density:
      if (!spec.energy_grid) throw UsageError("ab-density needs --energy-grid");
      break;
    case Command::ab_wavefunction:
      if (!spec.r_grid) throw UsageError("ab-wavefunction needs --r-grid");
      break;
    case Command::ac_sweep:
      if (!spec.gamma_grid == !spec.coupling_grid)
        throw UsageError("ac-sweep needs exactly one of --gamma-grid or --coupling-grid");
      break;
    default:
      break;
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Execution

/// Worker count: hardware concurrency capped by FLUXBOUND_THREADS.
inline unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FLUXBOUND_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

/// Evaluates f(i) for i < n on a thread pool; results and the first failure
/// (by index) are reported in index order.
template <class F>
auto parallel_map(std::size_t n, F&& f) -> std::vector<decltype(f(std::size_t{}))> {
  using R = decltype(f(std::size_t{}));
  std::vector<std::optional<R>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  const unsigned workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(n, 1));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) {
        try {
          slots[i] = f(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  std::vector<R> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

namespace detail {

using Row = std::vector<Cell>;

inline std::optional<ab::BoundLevel> solve_level(const ab::DiracChannel& ch, const Extension& ext,
                                                 const std::string& level_eq) {
  if (level_eq == "master") return ab::solve_bound_energy(ch, ext);
  if (level_eq == "wr00") return ab::solve_paper_equation(ch, ext, ab::PaperEquation::wr00);
  if (level_eq == "levab") return ab::solve_paper_equation(ch, ext, ab::PaperEquation::levab);
  const auto beta = ab::flux_decompose(ch.mu).beta;
  return ab::solve_paper_equation(ch, ext, beta < 0.5 ? ab::PaperEquation::lev0 : ab::PaperEquation::lev1);
}

inline Row sweep_row(const ab::DiracChannel& ch, const ab::BoundLevel& level) {
  const auto idx = ab::classify_channel(ch);
  const double m = ch.mass;
  return {idx.flux.beta, static_cast<long long>(ch.l), static_cast<long long>(ch.s), ch.mu,
          idx.nu,        static_cast<long long>(idx.tau), level.xi, level.E / m,
          level.lambda / m, level.residual};
}

inline Row ac_row(const ac::ACLevel& level) {
  const auto idx = ac::ac_classify(level.channel);
  const double m = level.channel.mass;
  return {idx.gamma,
          static_cast<long long>(level.channel.l),
          static_cast<long long>(level.channel.zeta),
          level.channel.coupling,
          level.xi,
          level.E_n / m,
          level.kappa / m,
          level.residual};
}

inline ab::DiracChannel dirac_channel(const RunSpec& spec) {
  return ab::DiracChannel{spec.mass, spec.l, spec.s, spec.mu};
}

inline ac::ACChannel ac_channel(const RunSpec& spec) {
  if (spec.gamma) return ac::channel_for_gamma(*spec.gamma, spec.mass);
  return ac::ACChannel{spec.mass, spec.coupling, spec.l, spec.zeta};
}

inline Table ab_solve(const RunSpec& spec) {
  const auto ch = dirac_channel(spec);
  if (spec.level_eq == "master") ab::require_extended(ch, "ab-solve");
  Table t{schema::sweep, {}};
  if (auto level = solve_level(ch, spec.ext, spec.level_eq)) t.rows.push_back(sweep_row(ch, *level));
  return t;
}

inline Table ab_sweep(const RunSpec& spec) {
  const auto betas = spec.beta_grid->points();
  auto rows = parallel_map(betas.size(), [&](std::size_t i) -> std::optional<Row> {
    ab::DiracChannel ch = dirac_channel(spec);
    ch.mu = static_cast<double>(spec.flux_integer) + betas[i];
    if (ab::classify_channel(ch).regime != ab::Regime::Extended) return std::nullopt;
    auto level = solve_level(ch, spec.ext, spec.level_eq);
    if (!level) return std::nullopt;
    return sweep_row(ch, *level);
  });
  Table t{schema::sweep, {}};
  for (auto& r : rows)
    if (r) t.rows.push_back(std::move(*r));
  return t;
}

inline Table ab_density(const RunSpec& spec) {
  const auto ch = dirac_channel(spec);
  ab::require_extended(ch, "ab-density");
  const auto energies = spec.energy_grid->points();
  auto rows = parallel_map(energies.size(), [&](std::size_t i) -> Row {
    const auto p = ab::spectral_density(ch, spec.ext, energies[i] * ch.mass);
    return {energies[i], p.density * ch.mass};
  });
  return Table{schema::density, std::move(rows)};
}

inline Table ab_wavefunction(const RunSpec& spec) {
  const auto ch = dirac_channel(spec);
  RadialDoublet d;
  if (spec.energy) {
    d = ab::continuum_doublet(ch, spec.ext, *spec.energy * ch.mass);
  } else {
    ab::require_extended(ch, "ab-wavefunction");
    const auto level = ab::solve_bound_energy(ch, spec.ext);
    if (!level) throw DomainError("ab-wavefunction: no bound state for xi >= 0; pass --energy");
    d = ab::bound_doublet(*level);
  }
  Table t{schema::wavefunction, {}};
  for (double x : spec.r_grid->points()) {
    if (!(x > 0.0)) throw DomainError("ab-wavefunction: r grid must be positive");
    const auto f = d(x / ch.mass);
    t.rows.push_back({x, f[0], f[1]});
  }
  return t;
}

inline Table ac_solve(const RunSpec& spec) {
  const auto ch = ac_channel(spec);
  Table t{schema::ac, {}};
  if (auto level = ac::ac_bound_energy(ch, spec.ext)) t.rows.push_back(ac_row(*level));
  return t;
}

inline Table ac_sweep(const RunSpec& spec) {
  const bool by_gamma = spec.gamma_grid.has_value();
  const auto values = by_gamma ? spec.gamma_grid->points() : spec.coupling_grid->points();
  auto rows = parallel_map(values.size(), [&](std::size_t i) -> std::optional<Row> {
    ac::ACChannel ch = by_gamma ? ac::channel_for_gamma(values[i], spec.mass)
                                : ac::ACChannel{spec.mass, values[i], spec.l, spec.zeta};
    if (ac::ac_classify(ch).regime == ac::ACRegime::Regular) return std::nullopt;
    auto level = ac::ac_bound_energy(ch, spec.ext);
    if (!level) return std::nullopt;
    return ac_row(*level);
  });
  Table t{schema::ac, {}};
  for (auto& r : rows)
    if (r) t.rows.push_back(std::move(*r));
  return t;
}

inline Table oracle_check(const RunSpec& spec) {
  Table t{schema::oracle, {}};
  std::optional<double> analytic;
  std::optional<oracle::OracleResult> shot;
  double m = spec.mass;
  if (spec.sector == "dirac") {
    const auto ch = dirac_channel(spec);
    ab::require_extended(ch, "oracle-check");
    if (auto level = ab::solve_bound_energy(ch, spec.ext)) analytic = level->E;
    shot = oracle::dirac_shoot(ch, spec.ext);
  } else {
    const auto ch = ac_channel(spec);
    const auto idx = ac::ac_classify(ch);
    if (idx.regime != ac::ACRegime::Extended)
      throw RegimeError("oracle-check: AC channel regime is " + std::string(ac::to_string(idx.regime)),
                        ac::to_string(idx.regime));
    if (auto level = ac::ac_bound_energy(ch, spec.ext)) analytic = level->E_n;
    shot = oracle::schrodinger_shoot(ch, spec.ext);
  }
  if (!analytic || !shot) return t;
  t.rows.push_back({spec.sector, *analytic / m, shot->E / m, std::abs(*analytic - shot->E) / m,
                    shot->match_residual / m, shot->r_min_sensitivity / m});
  return t;
}

}  // namespace detail

/// Executes a RunSpec and returns its serialized table.
inline std::string execute(const RunSpec& spec) {
  switch (spec.command) {
    case Command::ab_solve: return emit_table(detail::ab_solve(spec), spec.format);
    case Command::ab_sweep: return emit_table(detail::ab_sweep(spec), spec.format);
    case Command::ab_density: return emit_table(detail::ab_density(spec), spec.format);
    case Command::ab_wavefunction: return emit_table(detail::ab_wavefunction(spec), spec.format);
    case Command::ac_solve: return emit_table(detail::ac_solve(spec), spec.format);
    case Command::ac_sweep: return emit_table(detail::ac_sweep(spec), spec.format);
    case Command::oracle_check: return emit_table(detail::oracle_check(spec), spec.format);
  }
  throw std::logic_error("unknown command");
}

inline void report_error(std::ostream& err, const char* reason, const std::string& message,
                         const std::string& regime = {}) {
  nlohmann::ordered_json j;
  j["error"] = reason;
  if (!regime.empty()) j["regime"] = regime;
  j["message"] = message;
  err << j.dump() << '\n';
}

/// Runs a parsed spec: 0 on success, 2 on domain errors, 1 otherwise.
inline int run(const RunSpec& spec, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  try {
    const std::string bytes = execute(spec);
    if (spec.output.empty()) {
      out << bytes;
      out.flush();
    } else {
      std::ofstream file(spec.output, std::ios::binary);
      if (!file) throw std::runtime_error("cannot open " + spec.output);
      file << bytes;
      if (!file) throw std::runtime_error("write failed: " + spec.output);
    }
    return 0;
  } catch (const RegimeError& e) {
    report_error(err, e.reason(), e.what(), e.regime());
    return 2;
  } catch (const DomainError& e) {
    report_error(err, e.reason(), e.what());
    return 2;
  } catch (const std::exception& e) {
    report_error(err, "internal", e.what());
    return 1;
  }
}

inline int main(int argc, const char* const* argv, std::ostream& out = std::cout,
                std::ostream& err = std::cerr) {
  RunSpec spec;
  try {
    spec = parse_args(argc, argv);
  } catch (const HelpRequested& h) {
    out << h.what();
    return 0;
  } catch (const DomainError& e) {
    report_error(err, e.reason(), e.what());
    return 2;
  }
  return run(spec, out, err);
}

}  // namespace fluxbound::cli
