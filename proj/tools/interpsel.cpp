// Command-line front end: toy data generation, interpretability-aware
// lambda selection, and a scatter plot of the result.

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "interpsel/dataset.hpp"
#include "interpsel/errors.hpp"
#include "interpsel/report_io.hpp"
#include "interpsel/rng.hpp"
#include "interpsel/selection.hpp"
#include "interpsel/svg_plot.hpp"

namespace {

namespace fs = std::filesystem;
using namespace interpsel;

std::vector<double> parse_list(const std::string& text,
                               const std::string& flag) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    const std::string field = text.substr(start, comma - start);
    double value = 0.0;
    const auto result =
        std::from_chars(field.data(), field.data() + field.size(), value);
    if (result.ec != std::errc{} || result.ptr != field.data() + field.size())
      throw ConfigError(flag + ": cannot parse '" + field + "' as a number");
    values.push_back(value);
    start = comma + 1;
  }
  return values;
}

std::string format_six(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

struct GenerateFlags {
  int n_per_class = 500;
  std::string offset = "1.5,0";
  std::string cov = "1.02,-0.3,-0.3,0.15";
};

// The --offset flag gives the +1 class mean; the -1 class mirrors it.
ToyConfig toy_config_from_flags(const GenerateFlags& flags,
                                std::uint64_t seed) {
  const std::vector<double> offset = parse_list(flags.offset, "--offset");
  const auto p = static_cast<Eigen::Index>(offset.size());
  const std::vector<double> cov = parse_list(flags.cov, "--cov");
  if (cov.size() != static_cast<std::size_t>(p * p))
    throw ConfigError("--cov needs " + std::to_string(p * p) +
                      " entries (row-major p x p) for a " + std::to_string(p) +
                      "-dimensional offset");

  ToyConfig config;
  config.n_per_class = flags.n_per_class;
  config.seed = seed;
  config.class_offsets[0] =
      Eigen::Map<const Eigen::VectorXd>(offset.data(), p);
  config.class_offsets[1] = -config.class_offsets[0];
  config.noise_covariance =
      Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                     Eigen::RowMajor>>(cov.data(), p, p);
  return config;
}

nlohmann::json toy_config_json(const ToyConfig& config) {
  nlohmann::json json;
  json["source"] = "generated";
  json["n_per_class"] = config.n_per_class;
  json["offset_positive_class"] = std::vector<double>(
      config.class_offsets[0].data(),
      config.class_offsets[0].data() + config.class_offsets[0].size());
  nlohmann::json cov = nlohmann::json::array();
  for (Eigen::Index i = 0; i < config.noise_covariance.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < config.noise_covariance.cols(); ++j)
      row.push_back(config.noise_covariance(i, j));
    cov.push_back(std::move(row));
  }
  json["covariance"] = std::move(cov);
  json["seed"] = config.seed;
  return json;
}

int run_generate(const GenerateFlags& flags, std::uint64_t seed,
                 const fs::path& out_dir, std::string out_path) {
  const ToyConfig config = toy_config_from_flags(flags, seed);
  const Dataset data = generate_toy(config);
  fs::create_directories(out_dir);
  const fs::path target =
      out_path.empty() ? out_dir / "data.csv" : fs::path(out_path);
  save_csv(data, target);

  Eigen::Index positives = 0;
  for (Eigen::Index i = 0; i < data.n(); ++i)
    if (data.y[i] > 0) ++positives;
  std::cout << "wrote " << target.string() << ": n = " << data.n()
            << ", p = " << data.p() << ", class +1: " << positives
            << ", class -1: " << (data.n() - positives) << "\n";
  return 0;
}

struct SelectFlags {
  std::string data_path;
  bool generate = false;
  GenerateFlags generator;
  std::string lambdas = "0,0.001,0.01,0.1,1,10,50,100,250,500,1000";
  int m = 50;
  double omega1 = 1.0;
  double omega2 = 1.0;
  double kappa = 0.6;
  double tol = 1e-8;
  int max_iter = 10000;
  std::string reference;
  int threads = 1;
};

int run_select(const SelectFlags& flags, std::uint64_t seed,
               const fs::path& out_dir) {
  fs::create_directories(out_dir);

  Dataset data;
  nlohmann::json data_config;
  std::optional<ToyConfig> toy_config;
  if (flags.generate) {
    toy_config = toy_config_from_flags(flags.generator, seed);
    data = generate_toy(*toy_config);
    save_csv(data, out_dir / "data.csv");
    data_config = toy_config_json(*toy_config);
  } else {
    if (flags.data_path.empty())
      throw ConfigError("either --data <csv> or --generate is required");
    data = load_csv(flags.data_path);
    data_config["source"] = "csv";
    data_config["path"] = flags.data_path;
  }

  // The reference map eta is measured against: an explicit --reference
  // vector, the noiseless generative solution when data was generated here,
  // or (last resort) the least-squares direction of the loaded data.
  ReferenceSolution reference;
  std::string reference_source;
  if (!flags.reference.empty()) {
    const std::vector<double> parsed = parse_list(flags.reference, "--reference");
    if (parsed.size() != static_cast<std::size_t>(data.p()))
      throw ConfigError("--reference length does not match feature count");
    reference.theta_star = Eigen::Map<const Eigen::VectorXd>(
        parsed.data(), static_cast<Eigen::Index>(parsed.size()));
    const double norm = reference.theta_star.norm();
    if (norm == 0.0) throw ConfigError("--reference must be non-zero");
    reference.mbm_star = reference.theta_star / norm;
    reference_source = "flag";
  } else if (toy_config.has_value()) {
    ToyConfig noiseless = *toy_config;
    noiseless.noise_covariance.setZero();
    reference = reference_solution(generate_toy(noiseless));
    reference_source = "generator-noiseless";
  } else {
    reference = reference_solution(data);
    reference_source = "data-least-squares";
    std::cerr << "note: no --reference given; using the least-squares "
                 "direction of the loaded data as the reference map\n";
  }

  GridSpec grid;
  grid.lambdas = parse_list(flags.lambdas, "--lambdas");
  grid.plan.m = flags.m;
  grid.plan.master_seed = seed;
  grid.metric.omega1 = flags.omega1;
  grid.metric.omega2 = flags.omega2;
  grid.metric.kappa = flags.kappa;
  grid.solver.tol = flags.tol;
  grid.solver.max_iter = flags.max_iter;

  const SelectionReport report = select(data, grid, reference, flags.threads);

  ReportFile file;
  file.config["data"] = std::move(data_config);
  file.config["lambdas"] = grid.lambdas;
  file.config["bootstrap"] = {{"m", grid.plan.m},
                              {"master_seed", grid.plan.master_seed}};
  file.config["metric"] = {{"omega1", grid.metric.omega1},
                           {"omega2", grid.metric.omega2},
                           {"kappa", grid.metric.kappa}};
  file.config["solver"] = {{"tol", grid.solver.tol},
                           {"max_iter", grid.solver.max_iter}};
  file.config["reference_source"] = reference_source;
  file.reference_mbm = reference.mbm_star;
  file.report = report;

  write_report(file, out_dir / "report.json");
  write_selection_table(report, out_dir / "table.csv");

  const CandidateEvaluation& best =
      report.candidates[static_cast<std::size_t>(report.selected_index)];
  std::cout << "selected lambda = " << format_six(report.selected_lambda)
            << " (delta = " << format_six(best.delta)
            << ", eta = " << format_six(best.eta)
            << ", zeta = " << format_six(best.zeta) << ")\n";
  if (report.tie_note.has_value())
    std::cout << "note: " << *report.tie_note << "\n";
  return 0;
}

struct PlotFlags {
  std::string data_path;
  std::string report_path;
  std::string reference;
  std::string model_line = "selected";
  std::string out_path;
};

int run_plot(const PlotFlags& flags, const fs::path& out_dir) {
  if (flags.data_path.empty()) throw ConfigError("--data <csv> is required");
  const Dataset data = load_csv(flags.data_path);

  SeparatorLines lines;
  std::optional<ReportFile> report;
  if (!flags.report_path.empty()) report = read_report(flags.report_path);

  if (!flags.reference.empty()) {
    const std::vector<double> parsed = parse_list(flags.reference, "--reference");
    if (parsed.size() != 2)
      throw ConfigError("--reference needs 2 components for a 2-D plot");
    lines.reference = Eigen::Vector2d(parsed[0], parsed[1]);
  } else if (report.has_value()) {
    if (report->reference_mbm.size() != 2)
      throw InputError("report reference map is not 2-dimensional");
    lines.reference = Eigen::Vector2d(report->reference_mbm[0],
                                      report->reference_mbm[1]);
  } else {
    const ReferenceSolution reference = reference_solution(data);
    lines.reference = Eigen::Vector2d(reference.mbm_star[0],
                                      reference.mbm_star[1]);
  }

  if (report.has_value()) {
    std::size_t index = static_cast<std::size_t>(report->report.selected_index);
    if (flags.model_line == "best-delta") {
      for (std::size_t i = 0; i < report->report.candidates.size(); ++i)
        if (report->report.candidates[i].delta >
            report->report.candidates[index].delta)
          index = i;
    } else if (flags.model_line != "selected") {
      throw ConfigError("--model-line must be 'selected' or 'best-delta'");
    }
    const auto& mbm = report->report.candidates[index].full_fit_mbm;
    if (!mbm.has_value())
      throw DegenerateModelError(
          "the chosen candidate has no direction to draw");
    if (mbm->direction.size() != 2)
      throw InputError("report maps are not 2-dimensional");
    lines.model = Eigen::Vector2d(mbm->direction[0], mbm->direction[1]);
  }

  const std::string svg = render_scatter_svg(data, lines);
  fs::create_directories(out_dir);
  const fs::path target = flags.out_path.empty() ? out_dir / "figure.svg"
                                                 : fs::path(flags.out_path);
  std::ofstream out(target);
  if (!out) throw ParseError("cannot open " + target.string() + " for writing");
  out << svg;
  if (!out) throw ParseError("failed writing " + target.string());
  return 0;
}

void add_generator_flags(CLI::App* cmd, GenerateFlags& flags) {
  cmd->add_option("--n-per-class", flags.n_per_class,
                  "samples per class")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--offset", flags.offset,
                  "comma-separated +1 class mean; the -1 class mirrors it")
      ->capture_default_str();
  cmd->add_option("--cov", flags.cov,
                  "comma-separated row-major noise covariance (p*p entries)")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interpretability-aware model selection for sparse linear decoders"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from an INI/TOML file");

  std::uint64_t seed = 2;
  std::string out_dir = ".";
  app.add_option("--seed", seed, "seed for data generation and bootstrap")
      ->capture_default_str();
  app.add_option("--out-dir", out_dir, "directory for output files")
      ->capture_default_str();

  GenerateFlags generate_flags;
  std::string generate_out;
  CLI::App* generate_cmd =
      app.add_subcommand("generate", "write a synthetic two-class CSV dataset");
  generate_cmd->fallthrough();
  add_generator_flags(generate_cmd, generate_flags);
  generate_cmd->add_option("--out", generate_out,
                           "output CSV path (default <out-dir>/data.csv)");

  SelectFlags select_flags;
  CLI::App* select_cmd = app.add_subcommand(
      "select", "run the lambda grid search and write report.json/table.csv");
  select_cmd->fallthrough();
  select_cmd->add_option("--data", select_flags.data_path,
                         "input dataset CSV");
  select_cmd->add_flag("--generate", select_flags.generate,
                       "generate the dataset in-process instead of --data");
  add_generator_flags(select_cmd, select_flags.generator);
  select_cmd->add_option("--lambdas", select_flags.lambdas,
                         "comma-separated ascending lambda grid")
      ->capture_default_str();
  select_cmd->add_option("--m", select_flags.m, "bootstrap replicate count")
      ->capture_default_str();
  select_cmd->add_option("--omega1", select_flags.omega1,
                         "interpretability weight")
      ->capture_default_str();
  select_cmd->add_option("--omega2", select_flags.omega2, "performance weight")
      ->capture_default_str();
  select_cmd->add_option("--kappa", select_flags.kappa, "performance floor")
      ->capture_default_str();
  select_cmd->add_option("--tol", select_flags.tol, "solver tolerance")
      ->capture_default_str();
  select_cmd->add_option("--max-iter", select_flags.max_iter,
                         "solver sweep limit")
      ->capture_default_str();
  select_cmd->add_option("--reference", select_flags.reference,
                         "comma-separated reference direction for eta");
  select_cmd->add_option("--threads", select_flags.threads,
                         "parallel candidate evaluations")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  PlotFlags plot_flags;
  CLI::App* plot_cmd = app.add_subcommand(
      "plot", "render the dataset and separators as an SVG scatter plot");
  plot_cmd->fallthrough();
  plot_cmd->add_option("--data", plot_flags.data_path, "input dataset CSV");
  plot_cmd->add_option("--report", plot_flags.report_path,
                       "report.json from a select run (adds the model line)");
  plot_cmd->add_option("--reference", plot_flags.reference,
                       "override the reference direction");
  plot_cmd->add_option("--model-line", plot_flags.model_line,
                       "which model to draw: selected or best-delta")
      ->capture_default_str();
  plot_cmd->add_option("--out", plot_flags.out_path,
                       "output SVG path (default <out-dir>/figure.svg)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate_cmd->parsed())
      return run_generate(generate_flags, seed, out_dir, generate_out);
    if (select_cmd->parsed()) return run_select(select_flags, seed, out_dir);
    return run_plot(plot_flags, out_dir);
  } catch (const SelectionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
