// gkrev: coherent-state revival datasets as CSV.
//
//   gkrev weights --j 10 --mu 28
//   gkrev autocorr --j 10 --mu 80 --t-max 1 --points 2001 --out a.csv
//   gkrev unity --mu 2 --n-max 5
//   gkrev figure --id 4 --out-dir figs

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "gkrevival/cli.hpp"
#include "gkrevival/errors.hpp"

namespace {

using gkr::cli::Command;
using gkr::cli::RunConfig;

void add_state_flags(CLI::App* sub, RunConfig& c) {
  sub->add_option("--j", c.j, "Action J (>= 0)")->capture_default_str();
  sub->add_option("--tail-tol", c.tail_tol, "Truncation tolerance for the weights")->capture_default_str();
}

void add_time_flags(CLI::App* sub, RunConfig& c) {
  sub->add_option("--t-max", c.t_max, "End of the time grid, in units of t_rev")->capture_default_str();
  sub->add_option("--points", c.points, "Number of grid points (>= 2)")->capture_default_str();
}

void add_order_flags(CLI::App* sub, RunConfig& c) {
  sub->add_option("--q", c.q, "Revival order (>= 2)")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gazeau-Klauder coherent states of the nonlinear oscillator: revival datasets"};
  app.require_subcommand(1);

  RunConfig config;
  int figure_id = 0;
  std::string figure_dir = ".";
  int figure_points = 2001;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--mu", config.mu, "Deformation parameter mu = 2/|Lambda| (> 0)")->capture_default_str();
    sub->add_option("--alpha", config.alpha, "Oscillator frequency alpha (> 0)")->capture_default_str();
    sub->add_option("--out", config.out_path, "Output CSV path (default: standard output)");
  };

  std::vector<std::pair<CLI::App*, Command>> commands;
  auto make = [&](Command cmd, const std::string& help) {
    CLI::App* sub = app.add_subcommand(gkr::cli::command_name(cmd), help);
    add_common(sub);
    commands.emplace_back(sub, cmd);
    return sub;
  };

  add_state_flags(make(Command::weights, "Weighting distribution |c_n|^2"), config);

  CLI::App* mandel = make(Command::mandel, "<n> and Mandel Q over J in (0, J_max]");
  mandel->add_option("--j-max", config.j_max, "Upper end of the J sweep")->capture_default_str();
  mandel->add_option("--points", config.points, "Number of J samples")->capture_default_str();

  CLI::App* autocorr = make(Command::autocorr, "Autocorrelation A(t)");
  add_state_flags(autocorr, config);
  add_time_flags(autocorr, config);

  CLI::App* survival = make(Command::survival, "Packet fraction P_delta(t)");
  add_state_flags(survival, config);
  add_time_flags(survival, config);
  add_order_flags(survival, config);
  survival->add_option("--delta", config.delta, "Residue class delta in [0, q)")->capture_default_str();

  CLI::App* intensity = make(Command::survival_intensity, "|A(t)|^2 split into diagonal and interference terms");
  add_state_flags(intensity, config);
  add_time_flags(intensity, config);
  add_order_flags(intensity, config);

  CLI::App* unity = make(Command::unity, "Moment integrals behind the resolution of unity");
  unity->add_option("--n-max", config.n_max, "Highest moment order (<= 20)")->capture_default_str();
  unity->add_option("--abs-tol", config.abs_tol, "Quadrature absolute tolerance")->capture_default_str();
  unity->add_option("--rel-tol", config.rel_tol, "Quadrature relative tolerance")->capture_default_str();

  CLI::App* ov = make(Command::overlap, "Overlap <J,gamma|J2,gamma2>");
  add_state_flags(ov, config);
  ov->add_option("--gamma", config.gamma, "Angle of the bra state")->capture_default_str();
  ov->add_option("--j2", config.j2, "Action of the ket state")->capture_default_str();
  ov->add_option("--gamma2", config.gamma2, "Angle of the ket state")->capture_default_str();

  add_state_flags(make(Command::timescales, "Classical period and revival time at <n>"), config);

  CLI::App* figure = app.add_subcommand("figure", "Write the datasets behind one figure");
  figure->add_option("--id", figure_id, "Figure number (1-7)")->required();
  figure->add_option("--out-dir", figure_dir, "Output directory")->capture_default_str();
  figure->add_option("--points", figure_points, "Grid points per curve")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return gkr::cli::kExitUsage;
  }

  if (figure->parsed()) {
    try {
      if (figure_points < 2) throw gkr::DomainError("--points must be >= 2");
      for (const auto& path : gkr::cli::figure_bundle(figure_id, figure_dir, figure_points))
        std::cerr << "wrote " << path.string() << '\n';
      return gkr::cli::kExitOk;
    } catch (const gkr::DomainError& e) {
      std::cerr << "gkrev: " << e.what() << '\n';
      return gkr::cli::kExitUsage;
    } catch (const gkr::ConvergenceError& e) {
      std::cerr << "gkrev: numerical failure: " << e.what() << '\n';
      return gkr::cli::kExitNumerical;
    } catch (const std::exception& e) {
      std::cerr << "gkrev: " << e.what() << '\n';
      return gkr::cli::kExitUsage;
    }
  }

  for (const auto& [sub, cmd] : commands) {
    if (sub->parsed()) {
      config.command = cmd;
      return gkr::cli::execute(config, std::cout, std::cerr);
    }
  }
  return gkr::cli::kExitUsage;
}
