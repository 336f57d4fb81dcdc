#include "gkrevival/cli.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

#include "gkrevival/errors.hpp"
#include "gkrevival/gkstate.hpp"
#include "gkrevival/measure.hpp"
#include "gkrevival/revival.hpp"
#include "gkrevival/spectrum.hpp"

namespace gkr::cli {
namespace {

constexpr std::array<std::pair<Command, const char*>, 8> kNames = {{
    {Command::weights, "weights"},
    {Command::mandel, "mandel"},
    {Command::autocorr, "autocorr"},
    {Command::survival, "survival"},
    {Command::survival_intensity, "survival-intensity"},
    {Command::unity, "unity"},
    {Command::overlap, "overlap"},
    {Command::timescales, "timescales"},
}};

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

void add_param(csv::Table& t, const std::string& key, double v) { t.params.emplace_back(key, csv::format_number(v)); }
void add_param(csv::Table& t, const std::string& key, long v) { t.params.emplace_back(key, std::to_string(v)); }

csv::Table preamble(const RunConfig& c) {
  csv::Table t;
  t.params.emplace_back("command", command_name(c.command));
  add_param(t, "alpha", c.alpha);
  add_param(t, "mu", c.mu);
  switch (c.command) {
    case Command::weights:
      add_param(t, "J", c.j);
      add_param(t, "tail_tol", c.tail_tol);
      break;
    case Command::mandel:
      add_param(t, "J_max", c.j_max);
      add_param(t, "points", static_cast<long>(c.points));
      break;
    case Command::autocorr:
      add_param(t, "J", c.j);
      add_param(t, "t_max", c.t_max);
      add_param(t, "points", static_cast<long>(c.points));
      add_param(t, "tail_tol", c.tail_tol);
      break;
    case Command::survival:
      add_param(t, "J", c.j);
      add_param(t, "q", static_cast<long>(c.q));
      add_param(t, "delta", static_cast<long>(c.delta));
      add_param(t, "t_max", c.t_max);
      add_param(t, "points", static_cast<long>(c.points));
      add_param(t, "tail_tol", c.tail_tol);
      break;
    case Command::survival_intensity:
      add_param(t, "J", c.j);
      add_param(t, "q", static_cast<long>(c.q));
      add_param(t, "t_max", c.t_max);
      add_param(t, "points", static_cast<long>(c.points));
      add_param(t, "tail_tol", c.tail_tol);
      break;
    case Command::unity:
      add_param(t, "n_max", c.n_max);
      add_param(t, "abs_tol", c.abs_tol);
      add_param(t, "rel_tol", c.rel_tol);
      break;
    case Command::overlap:
      add_param(t, "J", c.j);
      add_param(t, "gamma", c.gamma);
      add_param(t, "J2", c.j2);
      add_param(t, "gamma2", c.gamma2);
      add_param(t, "tail_tol", c.tail_tol);
      break;
    case Command::timescales:
      add_param(t, "J", c.j);
      add_param(t, "tail_tol", c.tail_tol);
      break;
  }
  if (c.command == Command::autocorr || c.command == Command::survival || c.command == Command::survival_intensity)
    t.params.emplace_back("time_unit", "t_rev");
  t.header = schema(c.command);
  return t;
}

void push_complex_row(csv::Table& t, double time, std::complex<double> v) {
  t.rows.push_back({time, v.real(), v.imag(), std::norm(v)});
}

}  // namespace

std::string command_name(Command c) {
  for (const auto& [cmd, name] : kNames)
    if (cmd == c) return name;
  return "unknown";
}

std::optional<Command> parse_command(const std::string& name) {
  for (const auto& [cmd, n] : kNames)
    if (name == n) return cmd;
  return std::nullopt;
}

std::vector<std::string> schema(Command c) {
  switch (c) {
    case Command::weights:
      return {"n", "weight"};
    case Command::mandel:
      return {"J", "mean_n", "Q"};
    case Command::autocorr:
    case Command::survival:
      return {"t", "re", "im", "abs2"};
    case Command::survival_intensity:
      return {"t", "abs2", "diagonal", "interference"};
    case Command::unity:
      return {"n", "integral", "rho_n", "rel_err"};
    case Command::overlap:
      return {"J", "gamma", "J2", "gamma2", "re", "im", "abs2"};
    case Command::timescales:
      return {"alpha", "mu", "J", "n_bar", "t_classical", "t_revival", "ratio"};
  }
  return {};
}

void RunConfig::validate() const {
  require(finite_positive(alpha), "--alpha must be finite and > 0");
  require(finite_positive(mu), "--mu must be finite and > 0");
  require(std::isfinite(j) && j >= 0.0, "--j must be finite and >= 0");
  require(std::isfinite(j2) && j2 >= 0.0, "--j2 must be finite and >= 0");
  require(std::isfinite(gamma) && std::isfinite(gamma2), "--gamma/--gamma2 must be finite");
  require(finite_positive(t_max), "--t-max must be finite and > 0");
  require(points >= 2, "--points must be >= 2");
  require(tail_tol > 0.0 && tail_tol <= 1e-6, "--tail-tol must lie in (0, 1e-6]");
  require(finite_positive(abs_tol) && finite_positive(rel_tol), "--abs-tol/--rel-tol must be > 0");
  require(q >= 2, "--q must be >= 2");
  require(delta >= 0 && delta < q, "--delta must lie in [0, q)");
  require(n_max >= 0 && n_max <= kMaxMomentOrder, "--n-max must lie in [0, 20]");
  require(finite_positive(j_max), "--j-max must be finite and > 0");
  if (command == Command::survival || command == Command::survival_intensity || command == Command::autocorr)
    require(points <= 10'000'000, "--points is unreasonably large");
}

csv::Table run(const RunConfig& c) {
  c.validate();
  const SpectrumParams params(c.alpha, c.mu);
  csv::Table table = preamble(c);

  switch (c.command) {
    case Command::weights: {
      const CoherentState s = build_state(c.j, 0.0, params, c.tail_tol);
      for (long n = 0; n <= s.n_max(); ++n) table.rows.push_back({static_cast<double>(n), s.weight(n)});
      break;
    }
    case Command::mandel: {
      std::vector<double> actions(static_cast<std::size_t>(c.points));
      for (int i = 0; i < c.points; ++i)
        actions[static_cast<std::size_t>(i)] = c.j_max * static_cast<double>(i + 1) / static_cast<double>(c.points);
      for (const auto& row : photon_statistics_sweep(actions, params))
        table.rows.push_back({row.action, row.mean_n, row.mandel_q});
      break;
    }
    case Command::autocorr: {
      const CoherentState s = build_state(c.j, 0.0, params, c.tail_tol);
      const auto grid = make_time_grid(c.t_max, c.points);
      const auto series = autocorrelation_samples(s, grid);
      for (std::size_t i = 0; i < grid.size(); ++i) push_complex_row(table, grid[i], series.values[i]);
      break;
    }
    case Command::survival: {
      const CoherentState s = build_state(c.j, 0.0, params, c.tail_tol);
      const auto grid = make_time_grid(c.t_max, c.points);
      const auto decomposition = fractional_decomposition(s, c.q, grid);
      const auto& fraction = decomposition.fractions[static_cast<std::size_t>(c.delta)];
      for (std::size_t i = 0; i < grid.size(); ++i) push_complex_row(table, grid[i], fraction[i]);
      break;
    }
    case Command::survival_intensity: {
      const CoherentState s = build_state(c.j, 0.0, params, c.tail_tol);
      const auto grid = make_time_grid(c.t_max, c.points);
      const auto series = survival_intensity_series(s, c.q, grid);
      for (std::size_t i = 0; i < grid.size(); ++i)
        table.rows.push_back({grid[i], series[i].abs2, series[i].diagonal, series[i].interference});
      break;
    }
    case Command::unity: {
      QuadratureConfig qc;
      qc.abs_tol = c.abs_tol;
      qc.rel_tol = c.rel_tol;
      for (const auto& r : moment_table(c.n_max, params, qc))
        table.rows.push_back({static_cast<double>(r.n), r.integral, r.rho_n, r.rel_err});
      break;
    }
    case Command::overlap: {
      const CoherentState bra = build_state(c.j, c.gamma, params, c.tail_tol);
      const CoherentState ket = build_state(c.j2, c.gamma2, params, c.tail_tol);
      const auto v = overlap(bra, ket);
      table.rows.push_back({c.j, c.gamma, c.j2, c.gamma2, v.real(), v.imag(), std::norm(v)});
      break;
    }
    case Command::timescales: {
      const CoherentState s = build_state(c.j, 0.0, params, c.tail_tol);
      const double n_bar = mean_n(s);
      const TimeScales ts = time_scales(n_bar, params);
      table.rows.push_back({c.alpha, c.mu, c.j, n_bar, ts.t_classical, ts.t_revival, ts.t_revival / ts.t_classical});
      break;
    }
  }
  return table;
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  csv::Table table;
  try {
    table = run(config);
  } catch (const DomainError& e) {
    err << "gkrev: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConvergenceError& e) {
    err << "gkrev: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  if (config.out_path.empty() || config.out_path == "-") {
    csv::write(out, table);
    return kExitOk;
  }
  std::ofstream file(config.out_path);
  if (!file) {
    err << "gkrev: cannot open " << config.out_path << " for writing\n";
    return kExitUsage;
  }
  csv::write(file, table);
  return kExitOk;
}

Command figure_command(int figure_id) {
  switch (figure_id) {
    case 1:
      return Command::weights;
    case 2:
      return Command::mandel;
    case 3:
      return Command::autocorr;
    case 4:
    case 5:
      return Command::survival;
    case 6:
    case 7:
      return Command::survival_intensity;
    default:
      throw DomainError("figure id must lie in [1, 7]");
  }
}

std::vector<std::filesystem::path> figure_bundle(int figure_id, const std::filesystem::path& out_dir, int points) {
  const Command command = figure_command(figure_id);
  struct Curve {
    std::string file;
    RunConfig config;
  };
  std::vector<Curve> curves;
  auto base = [&](double mu) {
    RunConfig c;
    c.command = command;
    c.j = 10.0;
    c.mu = mu;
    c.q = 4;
    c.points = points;
    return c;
  };
  const std::string fig = "fig" + std::to_string(figure_id);
  switch (figure_id) {
    case 1:
    case 2: {
      const std::string what = figure_id == 1 ? "_weights" : "_mandel";
      for (double mu : {28.0, 80.0}) curves.push_back({fig + what + "_mu" + std::to_string(int(mu)) + ".csv", base(mu)});
      break;
    }
    case 3: {
      const std::array<std::pair<char, double>, 3> panels = {{{'a', 1.0}, {'b', 28.0}, {'c', 80.0}}};
      for (const auto& [panel, mu] : panels)
        curves.push_back({fig + panel + "_autocorr_mu" + std::to_string(int(mu)) + ".csv", base(mu)});
      break;
    }
    case 4:
    case 5: {
      const double mu = figure_id == 4 ? 28.0 : 80.0;
      for (int d = 0; d < 4; ++d) {
        RunConfig c = base(mu);
        c.delta = d;
        curves.push_back({fig + "_survival_mu" + std::to_string(int(mu)) + "_delta" + std::to_string(d) + ".csv", c});
      }
      break;
    }
    case 6:
    case 7: {
      const std::string what = figure_id == 6 ? "_diagonal" : "_interference";
      curves.push_back({fig + "a" + what + "_mu28.csv", base(28.0)});
      curves.push_back({fig + "b" + what + "_mu80.csv", base(80.0)});
      break;
    }
  }

  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  for (auto& curve : curves) {
    const auto path = out_dir / curve.file;
    csv::Table table = run(curve.config);
    table.params.insert(table.params.begin(), {"figure", std::to_string(figure_id)});
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot open " + path.string() + " for writing");
    csv::write(file, table);
    written.push_back(path);
  }
  return written;
}

}  // namespace gkr::cli
