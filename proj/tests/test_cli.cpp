#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gkrevival/cli.hpp"
#include "gkrevival/errors.hpp"

namespace fs = std::filesystem;
using gkr::cli::Command;
using gkr::cli::RunConfig;

namespace {

RunConfig config(Command c) {
  RunConfig r;
  r.command = c;
  return r;
}

std::string body(const std::string& csv_text) {
  std::string out;
  std::istringstream in(csv_text);
  std::string line;
  while (std::getline(in, line))
    if (line.empty() || line.front() != '#') out += line + '\n';
  return out;
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("gkrev_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_binary(const std::string& args) { return std::system((std::string(GKREV_BIN) + " " + args).c_str()); }

}  // namespace

TEST_CASE("csv write/read round trip preserves values and preamble") {
  gkr::csv::Table t;
  t.params = {{"command", "autocorr"}, {"mu", "28"}};
  t.header = {"t", "x"};
  t.rows = {{0.0, 1.0 / 3.0}, {1e-300, -2.5e17}, {0.1, 6.02214076e23}};
  std::istringstream in(gkr::csv::to_string(t));
  const auto back = gkr::csv::read(in);
  CHECK(back.params == t.params);
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);
  CHECK(back.column("x") == 1);
  CHECK_THROWS_AS((void)back.column("y"), std::out_of_range);
}

TEST_CASE("csv reader rejects malformed input") {
  std::istringstream ragged("a,b\n1,2\n3\n");
  CHECK_THROWS_AS(gkr::csv::read(ragged), std::runtime_error);
  std::istringstream junk("a\nxyz\n");
  CHECK_THROWS_AS(gkr::csv::read(junk), std::runtime_error);
  std::istringstream empty("# k=v\n");
  CHECK_THROWS_AS(gkr::csv::read(empty), std::runtime_error);
}

TEST_CASE("command names round trip") {
  for (Command c : {Command::weights, Command::mandel, Command::autocorr, Command::survival,
                    Command::survival_intensity, Command::unity, Command::overlap, Command::timescales})
    CHECK(gkr::cli::parse_command(gkr::cli::command_name(c)) == c);
  CHECK_FALSE(gkr::cli::parse_command("bogus").has_value());
}

TEST_CASE("every command produces its documented schema") {
  for (Command c : {Command::weights, Command::mandel, Command::autocorr, Command::survival,
                    Command::survival_intensity, Command::unity, Command::overlap, Command::timescales}) {
    RunConfig r = config(c);
    r.points = 11;
    const auto table = gkr::cli::run(r);
    CHECK(table.header == gkr::cli::schema(c));
    CHECK_FALSE(table.rows.empty());
    for (const auto& row : table.rows) CHECK(row.size() == table.header.size());
    CHECK(table.params.front().second == gkr::cli::command_name(c));
  }
}

TEST_CASE("weights command reproduces the weighting distribution") {
  RunConfig r = config(Command::weights);
  r.j = 10.0;
  r.mu = 28.0;
  const auto table = gkr::cli::run(r);
  double total = 0.0;
  for (const auto& row : table.rows) total += row[1];
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(table.rows.front()[0] == 0.0);
}

TEST_CASE("autocorr command: full revival at t = 1 for mu = 1") {
  RunConfig r = config(Command::autocorr);
  r.mu = 1.0;
  r.points = 2001;
  const auto table = gkr::cli::run(r);
  REQUIRE(table.rows.size() == 2001);
  CHECK(table.rows.back()[0] == 1.0);
  CHECK(table.rows.back()[3] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("unity command: all relative errors below 1e-6") {
  RunConfig r = config(Command::unity);
  r.mu = 2.0;
  r.n_max = 5;
  const auto table = gkr::cli::run(r);
  REQUIRE(table.rows.size() == 6);
  for (const auto& row : table.rows) CHECK(row[3] < 1e-6);
}

TEST_CASE("validation errors and exit codes") {
  std::ostringstream out;
  std::ostringstream err;
  RunConfig r = config(Command::autocorr);
  r.points = 1;
  CHECK(gkr::cli::execute(r, out, err) == gkr::cli::kExitUsage);
  CHECK(out.str().empty());
  CHECK(err.str().find("--points") != std::string::npos);

  r = config(Command::survival);
  r.delta = 4;
  CHECK(gkr::cli::execute(r, out, err) == gkr::cli::kExitUsage);
  r = config(Command::weights);
  r.tail_tol = 0.1;
  CHECK(gkr::cli::execute(r, out, err) == gkr::cli::kExitUsage);
  r = config(Command::unity);
  r.n_max = 21;
  CHECK(gkr::cli::execute(r, out, err) == gkr::cli::kExitUsage);

  // Unreachable quadrature tolerance -> numerical failure.
  r = config(Command::unity);
  r.mu = 0.5;
  r.abs_tol = 1e-300;
  r.rel_tol = 1e-300;
  std::ostringstream out2;
  CHECK(gkr::cli::execute(r, out2, err) == gkr::cli::kExitNumerical);
  CHECK(out2.str().empty());
}

TEST_CASE("binary exit codes") {
  const auto dir = scratch_dir("exit");
  const auto out = (dir / "w.csv").string();
  CHECK(run_binary("weights --j 10 --mu 28 --out " + out + " 2>/dev/null") == 0);
  CHECK(fs::exists(out));
  CHECK(WEXITSTATUS(run_binary("weights --j -1 2>/dev/null")) == 2);
  CHECK(WEXITSTATUS(run_binary("autocorr --points notanumber 2>/dev/null")) == 2);
  CHECK(WEXITSTATUS(run_binary("nosuchcommand 2>/dev/null")) == 2);
  CHECK(WEXITSTATUS(run_binary("unity --mu 0.5 --abs-tol 1e-300 --rel-tol 1e-300 >/dev/null 2>&1")) == 3);
  CHECK(WEXITSTATUS(run_binary("figure --id 9 --out-dir " + dir.string() + " 2>/dev/null")) == 2);
}

TEST_CASE("identical configurations give byte-identical output") {
  RunConfig r = config(Command::survival_intensity);
  r.mu = 80.0;
  r.points = 301;
  const std::string a = gkr::csv::to_string(gkr::cli::run(r));
  const std::string b = gkr::csv::to_string(gkr::cli::run(r));
  CHECK(a == b);
  CHECK(body(a) == body(b));
}

TEST_CASE("figure bundles re-parse with their documented schemas") {
  const auto dir = scratch_dir("figs");
  const std::size_t expected_files[] = {0, 2, 2, 3, 4, 4, 2, 2};
  for (int id = 1; id <= 7; ++id) {
    const auto files = gkr::cli::figure_bundle(id, dir, 201);
    CHECK(files.size() == expected_files[id]);
    const auto cols = gkr::cli::schema(gkr::cli::figure_command(id));
    for (const auto& f : files) {
      const auto table = gkr::csv::read_file(f.string());
      CHECK(table.header == cols);
      CHECK_FALSE(table.rows.empty());
      CHECK(table.params.front() == std::pair<std::string, std::string>{"figure", std::to_string(id)});
    }
  }
  CHECK(fs::exists(dir / "fig4_survival_mu28_delta3.csv"));
  CHECK(fs::exists(dir / "fig3c_autocorr_mu80.csv"));
  CHECK_THROWS_AS(gkr::cli::figure_bundle(0, dir), gkr::DomainError);
}
