#include "revrec/report_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace revrec {

namespace {

std::string format_percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", fraction * 100.0);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

void write_report_csv(const std::filesystem::path& path,
                      const std::vector<EvaluationReport>& reports) {
  if (reports.empty()) throw Error("no reports to write");

  const std::vector<std::size_t>& ks = reports.front().k_values;
  for (const EvaluationReport& r : reports) {
    if (r.k_values != ks) {
      throw Error("reports disagree on k values; cannot share one CSV");
    }
  }

  std::vector<const EvaluationReport*> ordered;
  for (const EvaluationReport& r : reports) ordered.push_back(&r);
  std::sort(ordered.begin(), ordered.end(),
            [](const EvaluationReport* a, const EvaluationReport* b) {
              if (a->project != b->project) return a->project < b->project;
              return a->algorithm < b->algorithm;
            });

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write report: " + path.string());

  out << "project,algo,iteration";
  for (std::size_t k : ks) out << ",top" << k;
  out << ",mrr\n";

  auto write_row = [&](const EvaluationReport& r, const std::string& iter,
                       const IterationMetrics& m) {
    out << r.project << ',' << r.algorithm << ',' << iter;
    for (double v : m.top_k) out << ',' << format_percent(v);
    out << ',' << format_percent(m.mrr) << '\n';
  };

  for (const EvaluationReport* r : ordered) {
    for (std::size_t i = 0; i < r->per_iteration.size(); ++i) {
      write_row(*r, std::to_string(i + 1), r->per_iteration[i]);
    }
    write_row(*r, "avg", r->averaged);
  }
}

std::vector<ReportRow> read_report_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open report: " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw Error("empty report: " + path.string());
  std::vector<std::string> header = split_csv_line(line);
  if (header.size() < 4 || header[0] != "project" || header[1] != "algo" ||
      header[2] != "iteration") {
    throw Error("unrecognized report header in " + path.string());
  }

  std::vector<ReportRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw Error(path.string() + ":" + std::to_string(line_no) +
                  ": wrong field count");
    }
    ReportRow row;
    row.project = fields[0];
    row.algorithm = fields[1];
    row.iteration = fields[2];
    for (std::size_t i = 3; i < fields.size(); ++i) {
      try {
        row.metrics[header[i]] = std::stod(fields[i]);
      } catch (const std::exception&) {
        throw Error(path.string() + ":" + std::to_string(line_no) +
                    ": bad number '" + fields[i] + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::map<std::string, double> metric_series(const std::vector<ReportRow>& rows,
                                            const std::string& metric,
                                            const std::string& row_kind) {
  if (row_kind != "avg" && row_kind != "iterations") {
    throw Error("row kind must be 'avg' or 'iterations'");
  }
  std::map<std::string, double> series;
  for (const ReportRow& row : rows) {
    const bool is_avg = row.iteration == "avg";
    if ((row_kind == "avg") != is_avg) continue;
    auto it = row.metrics.find(metric);
    if (it == row.metrics.end()) {
      throw Error("report has no metric column '" + metric + "'");
    }
    std::string key =
        is_avg ? row.project : row.project + "#" + row.iteration;
    series[key] = it->second;
  }
  return series;
}

std::vector<DeltaRow> metric_deltas(const std::map<std::string, double>& a,
                                    const std::map<std::string, double>& b) {
  std::vector<DeltaRow> deltas;
  for (const auto& [key, va] : a) {
    auto it = b.find(key);
    if (it == b.end()) continue;
    deltas.push_back(DeltaRow{key, va, it->second, va - it->second});
  }
  return deltas;
}

}  // namespace revrec
