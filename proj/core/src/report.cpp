#include "lptx/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace lptx {

void EstimateReport::add_row(std::vector<double> params, double lhs, double rhs) {
  if (params.size() != param_names.size())
    throw std::invalid_argument("EstimateReport: row parameter count mismatch");
  if (!(rhs > 0.0)) throw std::invalid_argument("EstimateReport: rhs must be positive");
  rows.push_back(CaseRow{std::move(params), lhs, rhs, lhs / rhs});
}

void EstimateReport::add_fit(const std::string& name, double value) { fits.emplace_back(name, value); }
void EstimateReport::add_threshold(const std::string& name, double value) { thresholds.emplace_back(name, value); }
void EstimateReport::add_check(const std::string& name, bool ok) { checks.emplace_back(name, ok); }

void EstimateReport::finalize() {
  std::sort(rows.begin(), rows.end(),
            [](const CaseRow& a, const CaseRow& b) { return a.params < b.params; });
  pass = !checks.empty();
  for (const auto& [name, ok] : checks) pass = pass && ok;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_text(const EstimateReport& r) {
  std::string out = "experiment";
  for (const auto& name : r.param_names) out += "," + name;
  out += ",lhs,rhs,ratio\n";
  for (const auto& row : r.rows) {
    out += r.experiment;
    for (double p : row.params) out += "," + format_double(p);
    out += "," + format_double(row.lhs) + "," + format_double(row.rhs) + "," + format_double(row.ratio) + "\n";
  }
  return out;
}

void write_csv(const EstimateReport& r, const std::filesystem::path& file) {
  std::ofstream os(file, std::ios::binary);
  if (!os) throw std::runtime_error("write_csv: cannot open " + file.string());
  os << csv_text(r);
}

std::string json_summary_text(const EstimateReport& r, bool with_timestamp) {
  nlohmann::ordered_json j;
  j["experiment"] = r.experiment;
  j["pass"] = r.pass;
  nlohmann::ordered_json fits;
  for (const auto& [k, v] : r.fits) fits[k] = v;
  j["fits"] = fits;
  nlohmann::ordered_json thresholds;
  for (const auto& [k, v] : r.thresholds) thresholds[k] = v;
  j["thresholds"] = thresholds;
  nlohmann::ordered_json checks;
  for (const auto& [k, v] : r.checks) checks[k] = v;
  j["checks"] = checks;
  j["cases"] = r.rows.size();
  nlohmann::ordered_json prov;
  prov["seed"] = r.provenance.seed;
  prov["grid"] = r.provenance.grid_n;
  prov["nt"] = r.provenance.nt;
  prov["operator"] = r.provenance.operator_spec;
  if (!r.provenance.notes.empty()) prov["notes"] = r.provenance.notes;
  if (with_timestamp) {
    auto now = std::chrono::system_clock::now();
    prov["timestamp_unix"] = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
  }
  j["provenance"] = prov;
  return j.dump(2) + "\n";
}

void write_json_summary(const EstimateReport& r, const std::filesystem::path& file) {
  std::ofstream os(file, std::ios::binary);
  if (!os) throw std::runtime_error("write_json_summary: cannot open " + file.string());
  os << json_summary_text(r);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line: need matching samples, >= 2");
  double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double det = n * sxx - sx * sx;
  if (det == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  LineFit f;
  f.slope = (n * sxy - sx * sy) / det;
  f.intercept = (sy - f.slope * sx) / n;
  double ss_res = 0, ss_tot = 0, mean = sy / n, scale = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double e = y[i] - (f.slope * x[i] + f.intercept);
    ss_res += e * e;
    ss_tot += (y[i] - mean) * (y[i] - mean);
    scale = std::max(scale, y[i] * y[i]);
  }
  // Zero-variance data is exactly fit by the constant model.
  f.r2 = ss_tot <= 1e-24 * std::max(scale, 1.0) ? 1.0 : 1.0 - ss_res / ss_tot;
  return f;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty sample");
  std::sort(values.begin(), values.end());
  std::size_t m = values.size() / 2;
  return values.size() % 2 == 1 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

}  // namespace lptx
