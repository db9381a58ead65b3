#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "interpsel/selection.hpp"

namespace interpsel {

/// On-disk form of a selection run: the configuration that produced it, the
/// reference map eta was measured against, and the report itself.
struct ReportFile {
  nlohmann::json config;  // run provenance, echoed as given
  Eigen::VectorXd reference_mbm;
  SelectionReport report;
};

/// Serializes with round-trip-exact doubles; parse_report(report_to_json(r))
/// reconstructs r bit for bit.
std::string report_to_json(const ReportFile& file);
ReportFile parse_report(const std::string& text);

void write_report(const ReportFile& file, const std::filesystem::path& path);
ReportFile read_report(const std::filesystem::path& path);

/// One row per candidate: lambda,delta,eta,zeta,mbm_1,...,mbm_p with floats
/// printed to 6 significant digits.
std::string selection_table_csv(const SelectionReport& report);
void write_selection_table(const SelectionReport& report,
                           const std::filesystem::path& path);

}  // namespace interpsel
