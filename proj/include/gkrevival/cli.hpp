#pragma once

// Dataset generation behind the gkrev command-line tool.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gkrevival/csv.hpp"

namespace gkr::cli {

enum class Command { weights, mandel, autocorr, survival, survival_intensity, unity, overlap, timescales };

std::string command_name(Command c);
std::optional<Command> parse_command(const std::string& name);

struct RunConfig {
  Command command = Command::weights;
  double j = 10.0;
  double mu = 28.0;
  double alpha = 1.0;
  int q = 4;
  int delta = 0;
  double t_max = 1.0;  // t_rev units
  int points = 2001;
  double tail_tol = 1e-14;
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  long n_max = 5;       // unity
  double j_max = 20.0;  // mandel sweep upper end
  double j2 = 10.0;     // overlap ket
  double gamma = 0.0;
  double gamma2 = 0.0;
  std::string out_path;  // empty: standard output

  // Throws DomainError naming the offending flag.
  void validate() const;
};

// Computes the dataset for one command. Throws DomainError for invalid
// configuration, ConvergenceError on numerical failure.
csv::Table run(const RunConfig& config);

// Exit status contract of the tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

// Runs and writes the table to out_path (or `out`). Diagnostics go to `err`.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

// Documented column layout per command.
std::vector<std::string> schema(Command c);

// Writes the CSV files behind figure `figure_id` (1..7) into out_dir and
// returns their paths. Curves use J = 10, mu in {1, 28, 80}, q = 4.
std::vector<std::filesystem::path> figure_bundle(int figure_id, const std::filesystem::path& out_dir,
                                                 int points = 2001);

// Command each figure's files were generated with (for schema checks).
Command figure_command(int figure_id);

}  // namespace gkr::cli
