#include "interpsel/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "interpsel/errors.hpp"

namespace interpsel {

namespace {

nlohmann::json vector_to_json(const Eigen::VectorXd& vector) {
  nlohmann::json array = nlohmann::json::array();
  for (Eigen::Index i = 0; i < vector.size(); ++i) array.push_back(vector[i]);
  return array;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& array) {
  Eigen::VectorXd vector(array.size());
  for (std::size_t i = 0; i < array.size(); ++i)
    vector[static_cast<Eigen::Index>(i)] = array.at(i).get<double>();
  return vector;
}

nlohmann::json mbm_to_json(const std::optional<Mbm>& mbm) {
  if (!mbm.has_value()) return nullptr;
  return vector_to_json(mbm->direction);
}

std::optional<Mbm> mbm_from_json(const nlohmann::json& value) {
  if (value.is_null()) return std::nullopt;
  return Mbm{vector_from_json(value)};
}

std::string format_six(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

}  // namespace

std::string report_to_json(const ReportFile& file) {
  nlohmann::json root;
  root["config"] = file.config;
  root["reference_mbm"] = vector_to_json(file.reference_mbm);

  nlohmann::json candidates = nlohmann::json::array();
  for (const CandidateEvaluation& candidate : file.report.candidates) {
    nlohmann::json entry;
    entry["lambda"] = candidate.lambda;
    entry["delta"] = candidate.delta;
    entry["eta"] = candidate.eta;
    entry["zeta"] = candidate.zeta;
    entry["full_fit_mbm"] = mbm_to_json(candidate.full_fit_mbm);
    nlohmann::json replicate_mbms = nlohmann::json::array();
    for (const auto& mbm : candidate.replicate_mbms)
      replicate_mbms.push_back(mbm_to_json(mbm));
    entry["replicate_mbms"] = std::move(replicate_mbms);
    entry["degenerate_replicates"] = candidate.degenerate_replicates;
    candidates.push_back(std::move(entry));
  }
  root["candidates"] = std::move(candidates);

  root["selected_lambda"] = file.report.selected_lambda;
  root["pareto_indices"] = file.report.pareto_indices;
  root["tie_note"] = file.report.tie_note.has_value()
                         ? nlohmann::json(*file.report.tie_note)
                         : nlohmann::json(nullptr);
  return root.dump(2) + "\n";
}

ReportFile parse_report(const std::string& text) {
  try {
    const nlohmann::json root = nlohmann::json::parse(text);
    ReportFile file;
    file.config = root.at("config");
    file.reference_mbm = vector_from_json(root.at("reference_mbm"));

    for (const nlohmann::json& entry : root.at("candidates")) {
      CandidateEvaluation candidate;
      candidate.lambda = entry.at("lambda").get<double>();
      candidate.delta = entry.at("delta").get<double>();
      candidate.eta = entry.at("eta").get<double>();
      candidate.zeta = entry.at("zeta").get<double>();
      candidate.full_fit_mbm = mbm_from_json(entry.at("full_fit_mbm"));
      for (const nlohmann::json& mbm : entry.at("replicate_mbms"))
        candidate.replicate_mbms.push_back(mbm_from_json(mbm));
      candidate.degenerate_replicates =
          entry.at("degenerate_replicates").get<int>();
      file.report.candidates.push_back(std::move(candidate));
    }

    file.report.selected_lambda = root.at("selected_lambda").get<double>();
    file.report.pareto_indices =
        root.at("pareto_indices").get<std::vector<int>>();
    if (!root.at("tie_note").is_null())
      file.report.tie_note = root.at("tie_note").get<std::string>();

    file.report.selected_index = -1;
    for (std::size_t i = 0; i < file.report.candidates.size(); ++i)
      if (file.report.candidates[i].lambda == file.report.selected_lambda)
        file.report.selected_index = static_cast<int>(i);
    if (file.report.selected_index < 0)
      throw ParseError("selected_lambda does not match any candidate");
    return file;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
}

void write_report(const ReportFile& file, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path.string() + " for writing");
  out << report_to_json(file);
  if (!out) throw ParseError("failed writing " + path.string());
}

ReportFile read_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_report(buffer.str());
}

std::string selection_table_csv(const SelectionReport& report) {
  Eigen::Index p = 0;
  for (const CandidateEvaluation& candidate : report.candidates) {
    if (candidate.full_fit_mbm.has_value()) {
      p = candidate.full_fit_mbm->direction.size();
      break;
    }
    for (const auto& mbm : candidate.replicate_mbms)
      if (mbm.has_value()) {
        p = mbm->direction.size();
        break;
      }
    if (p > 0) break;
  }

  std::string csv = "lambda,delta,eta,zeta";
  for (Eigen::Index j = 0; j < p; ++j)
    csv += ",mbm_" + std::to_string(j + 1);
  csv += "\n";

  for (const CandidateEvaluation& candidate : report.candidates) {
    csv += format_six(candidate.lambda);
    csv += "," + format_six(candidate.delta);
    csv += "," + format_six(candidate.eta);
    csv += "," + format_six(candidate.zeta);
    for (Eigen::Index j = 0; j < p; ++j) {
      csv += ",";
      csv += candidate.full_fit_mbm.has_value()
                 ? format_six(candidate.full_fit_mbm->direction[j])
                 : "nan";
    }
    csv += "\n";
  }
  return csv;
}

void write_selection_table(const SelectionReport& report,
                           const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path.string() + " for writing");
  out << selection_table_csv(report);
  if (!out) throw ParseError("failed writing " + path.string());
}

}  // namespace interpsel
