#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace lptx {

/// One measured case of an estimate: named parameters plus the two sides of
/// the inequality and their ratio (rhs > 0).
struct CaseRow {
  std::vector<double> params;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct Provenance {
  std::uint64_t seed = 0;
  int grid_n = 0;
  int nt = 0;
  std::string operator_spec;
  std::string notes;
};

/// Measured constants, fitted growth parameters and a verdict for one
/// verified inequality. Reports are reproducible bit-for-bit from
/// (experiment, seed, grid, nt); the CSV never contains timestamps.
struct EstimateReport {
  std::string experiment;
  std::vector<std::string> param_names;
  std::vector<CaseRow> rows;
  std::vector<std::pair<std::string, double>> fits;
  std::vector<std::pair<std::string, double>> thresholds;
  std::vector<std::pair<std::string, bool>> checks;
  bool pass = false;
  Provenance provenance;

  void add_row(std::vector<double> params, double lhs, double rhs);
  void add_fit(const std::string& name, double value);
  void add_threshold(const std::string& name, double value);
  void add_check(const std::string& name, bool ok);
  /// Sorts rows by parameters and folds the named checks into `pass`.
  void finalize();
};

/// Shortest-exact decimal formatting used in every emitted file.
std::string format_double(double v);

/// experiment,<param names...>,lhs,rhs,ratio; one row per case, rows in
/// parameter order. Identical config and seed give byte-identical output.
void write_csv(const EstimateReport& report, const std::filesystem::path& file);
std::string csv_text(const EstimateReport& report);

/// Fits, thresholds, per-check verdicts and provenance; carries the single
/// timestamped line of a run.
void write_json_summary(const EstimateReport& report, const std::filesystem::path& file);
std::string json_summary_text(const EstimateReport& report, bool with_timestamp = true);

/// Least-squares line y = slope x + intercept with coefficient of
/// determination. A near-zero-variance sample counts as perfectly fit.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 1.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

double median(std::vector<double> values);

}  // namespace lptx
