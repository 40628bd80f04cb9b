#ifndef REVREC_REPORT_IO_HPP
#define REVREC_REPORT_IO_HPP

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "revrec/evaluation.hpp"

namespace revrec {

// One CSV row of an evaluation report. `iteration` is "1".."10" or "avg";
// metric values are percentages (0..100).
struct ReportRow {
  std::string project;
  std::string algorithm;
  std::string iteration;
  std::map<std::string, double> metrics;  // column name -> value
};

// Writes reports as CSV with columns
//   project,algo,iteration,top<k>...,mrr
// Rows are ordered by (project, algorithm, iteration, then the avg row),
// values fixed to four decimals, so identical reports serialize to
// identical bytes.
void write_report_csv(const std::filesystem::path& path,
                      const std::vector<EvaluationReport>& reports);

std::vector<ReportRow> read_report_csv(const std::filesystem::path& path);

// Extracts one metric column. rows = "avg" keeps only averaged rows keyed
// by project; rows = "iterations" keeps per-iteration rows keyed by
// "project#iteration". Missing metric -> Error.
std::map<std::string, double> metric_series(
    const std::vector<ReportRow>& rows, const std::string& metric,
    const std::string& row_kind);

// Per-project metric difference between two algorithms, for projects
// present in both maps (values are percentage points, a - b).
struct DeltaRow {
  std::string project;
  double value_a = 0.0;
  double value_b = 0.0;
  double delta = 0.0;
};

std::vector<DeltaRow> metric_deltas(const std::map<std::string, double>& a,
                                    const std::map<std::string, double>& b);

}  // namespace revrec

#endif  // REVREC_REPORT_IO_HPP
