#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "interpsel/report_io.hpp"

using namespace interpsel;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "interpsel_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

CliResult run_cli(const std::string& args, const fs::path& scratch) {
  const fs::path out_file = scratch / "stdout.txt";
  const fs::path err_file = scratch / "stderr.txt";
  const std::string command = std::string(INTERPSEL_CLI_PATH) + " " + args +
                              " > " + out_file.string() + " 2> " +
                              err_file.string();
  const int status = std::system(command.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_file);
  result.err = slurp(err_file);
  return result;
}

std::size_t line_count(const std::string& text) {
  std::size_t count = 0;
  for (char c : text) count += c == '\n' ? 1 : 0;
  return count;
}

std::size_t count_occurrences(const std::string& text,
                              const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size()))
    ++count;
  return count;
}

// Extracts one named column from a table.csv row starting with `lambda,`.
std::string table_field(const std::string& csv, const std::string& lambda,
                        std::size_t column) {
  std::istringstream lines(csv);
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.starts_with(lambda + ",")) continue;
    std::istringstream fields(line);
    std::string field;
    for (std::size_t i = 0; i <= column; ++i) std::getline(fields, field, ',');
    return field;
  }
  return {};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("generate writes the dataset and a summary line") {
  const fs::path dir = fresh_dir("generate");
  const CliResult result =
      run_cli("--out-dir " + dir.string() + " generate", dir);
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("n = 1000") != std::string::npos);
  CHECK(result.out.find("class +1: 500") != std::string::npos);

  const std::string csv = slurp(dir / "data.csv");
  CHECK(csv.starts_with("x1,x2,y\n"));
  CHECK(line_count(csv) == 1001);  // header + 1000 samples
}

TEST_CASE("generate rejects a non-positive class size") {
  const fs::path dir = fresh_dir("generate_bad");
  const CliResult result = run_cli(
      "--out-dir " + dir.string() + " generate --n-per-class 0", dir);
  CHECK(result.exit_code != 0);
}

TEST_CASE("generate is byte-deterministic for a fixed seed") {
  const fs::path a = fresh_dir("generate_a");
  const fs::path b = fresh_dir("generate_b");
  CHECK(run_cli("--seed 9 --out-dir " + a.string() + " generate", a).exit_code == 0);
  CHECK(run_cli("--seed 9 --out-dir " + b.string() + " generate", b).exit_code == 0);
  CHECK(slurp(a / "data.csv") == slurp(b / "data.csv"));
}

TEST_CASE("select on generated data reports lambda = 1000") {
  const fs::path dir = fresh_dir("select");
  const CliResult result =
      run_cli("--out-dir " + dir.string() + " select --generate", dir);
  REQUIRE(result.exit_code == 0);
  CHECK(result.out.find("selected lambda = 1000") != std::string::npos);

  const std::string table = slurp(dir / "table.csv");
  CHECK(table.starts_with("lambda,delta,eta,zeta,mbm_1,mbm_2\n"));
  CHECK(line_count(table) == 12);  // header + 11 candidates
  CHECK(std::abs(std::stod(table_field(table, "1000", 2)) - 1.0) <= 1e-6);
  CHECK(table_field(table, "1000", 4) == "1");
  CHECK(table_field(table, "1000", 5) == "0");

  // The machine report round-trips through the library reader.
  const std::string report_bytes = slurp(dir / "report.json");
  const ReportFile parsed = read_report(dir / "report.json");
  CHECK(report_to_json(parsed) == report_bytes);
  CHECK(parsed.report.selected_lambda == 1000.0);
  CHECK(parsed.report.candidates.size() == 11);
  CHECK(parsed.report.candidates[0].replicate_mbms.size() == 50);
}

TEST_CASE("select signals an unreachable performance floor distinctly") {
  const fs::path dir = fresh_dir("select_floor");
  const CliResult result = run_cli(
      "--out-dir " + dir.string() + " select --generate --kappa 0.999", dir);
  CHECK(result.exit_code == 2);
  CHECK(result.err.find("performance floor") != std::string::npos);
}

TEST_CASE("select accepts a singleton grid") {
  const fs::path dir = fresh_dir("select_singleton");
  const CliResult result = run_cli(
      "--out-dir " + dir.string() + " select --generate --lambdas 0 --m 10",
      dir);
  REQUIRE(result.exit_code == 0);
  CHECK(line_count(slurp(dir / "table.csv")) == 2);
}

TEST_CASE("select runs are byte-identical across repeats and threads") {
  const fs::path a = fresh_dir("select_det_a");
  const fs::path b = fresh_dir("select_det_b");
  const fs::path c = fresh_dir("select_det_c");
  REQUIRE(run_cli("--out-dir " + a.string() + " select --generate", a).exit_code == 0);
  REQUIRE(run_cli("--out-dir " + b.string() + " select --generate", b).exit_code == 0);
  REQUIRE(run_cli("--out-dir " + c.string() + " select --generate --threads 4",
                  c).exit_code == 0);
  CHECK(slurp(a / "report.json") == slurp(b / "report.json"));
  CHECK(slurp(a / "table.csv") == slurp(b / "table.csv"));
  CHECK(slurp(a / "report.json") == slurp(c / "report.json"));
  CHECK(slurp(a / "table.csv") == slurp(c / "table.csv"));
}

TEST_CASE("select works from a csv with or without an explicit reference") {
  const fs::path dir = fresh_dir("select_csv");
  REQUIRE(run_cli("--out-dir " + dir.string() + " generate", dir).exit_code == 0);

  SUBCASE("explicit reference direction") {
    const CliResult result = run_cli(
        "--out-dir " + dir.string() + " select --data " +
            (dir / "data.csv").string() + " --reference 1,0 --m 10",
        dir);
    CHECK(result.exit_code == 0);
    CHECK(result.err.find("note:") == std::string::npos);
  }
  SUBCASE("reference inferred from the data, with a warning") {
    const CliResult result = run_cli(
        "--out-dir " + dir.string() + " select --data " +
            (dir / "data.csv").string() + " --m 10",
        dir);
    CHECK(result.exit_code == 0);
    CHECK(result.err.find("note:") != std::string::npos);
  }
  SUBCASE("missing dataset file fails") {
    const CliResult result = run_cli(
        "--out-dir " + dir.string() + " select --data does_not_exist.csv", dir);
    CHECK(result.exit_code != 0);
  }
}

TEST_CASE("config file values apply and flags override them") {
  const fs::path dir = fresh_dir("config_file");
  {
    std::ofstream config(dir / "run.ini");
    config << "[select]\nkappa=0.999\n";
  }
  const std::string base = "--out-dir " + dir.string() + " --config " +
                           (dir / "run.ini").string() + " select --generate";
  CHECK(run_cli(base, dir).exit_code == 2);           // file value used
  CHECK(run_cli(base + " --kappa 0.6", dir).exit_code == 0);  // flag wins
}

TEST_CASE("plot renders the expected elements") {
  const fs::path dir = fresh_dir("plot");
  REQUIRE(run_cli("--out-dir " + dir.string() + " select --generate", dir)
              .exit_code == 0);

  SUBCASE("with a report: reference plus model line") {
    const CliResult result = run_cli(
        "--out-dir " + dir.string() + " plot --data " +
            (dir / "data.csv").string() + " --report " +
            (dir / "report.json").string(),
        dir);
    REQUIRE(result.exit_code == 0);
    const std::string svg = slurp(dir / "figure.svg");
    CHECK(count_occurrences(svg, "<line ") == 2);
    CHECK(count_occurrences(svg, "<circle ") == 1000);
  }
  SUBCASE("without a report: reference line only") {
    const CliResult result = run_cli(
        "--out-dir " + dir.string() + " plot --data " +
            (dir / "data.csv").string() + " --out " +
            (dir / "bare.svg").string(),
        dir);
    REQUIRE(result.exit_code == 0);
    CHECK(count_occurrences(slurp(dir / "bare.svg"), "<line ") == 1);
  }
  SUBCASE("the best-delta line differs from the selected line") {
    REQUIRE(run_cli("--out-dir " + dir.string() + " plot --data " +
                        (dir / "data.csv").string() + " --report " +
                        (dir / "report.json").string() + " --out " +
                        (dir / "selected.svg").string(),
                    dir)
                .exit_code == 0);
    REQUIRE(run_cli("--out-dir " + dir.string() + " plot --data " +
                        (dir / "data.csv").string() + " --report " +
                        (dir / "report.json").string() +
                        " --model-line best-delta --out " +
                        (dir / "accurate.svg").string(),
                    dir)
                .exit_code == 0);
    CHECK(slurp(dir / "selected.svg") != slurp(dir / "accurate.svg"));
  }
  SUBCASE("plots are byte-deterministic") {
    const std::string args = "--out-dir " + dir.string() + " plot --data " +
                             (dir / "data.csv").string() + " --out ";
    REQUIRE(run_cli(args + (dir / "first.svg").string(), dir).exit_code == 0);
    REQUIRE(run_cli(args + (dir / "second.svg").string(), dir).exit_code == 0);
    CHECK(slurp(dir / "first.svg") == slurp(dir / "second.svg"));
  }
  SUBCASE("missing input file fails") {
    CHECK(run_cli("--out-dir " + dir.string() + " plot --data missing.csv",
                  dir).exit_code != 0);
  }
}

}  // TEST_SUITE
