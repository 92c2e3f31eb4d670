#include "tsdiv/data_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tsdiv/errors.hpp"

namespace tsdiv {

namespace {

using nlohmann::json;

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',' || c == '\t' || c == ' ') {
      if (!cur.empty()) fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) fields.push_back(std::move(cur));
  return fields;
}

double parse_double(const std::string& field, std::size_t line_no) {
  if (field == "NaN" || field == "nan" || field == "NAN")
    return std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(field, &used);
  } catch (const std::exception&) {
    throw DataError("line " + std::to_string(line_no) + ": cannot parse field '" +
                    field + "'");
  }
  if (used != field.size())
    throw DataError("line " + std::to_string(line_no) + ": cannot parse field '" +
                    field + "'");
  return value;
}

long parse_label(const std::string& field, std::size_t line_no) {
  const double value = parse_double(field, line_no);
  const double rounded = std::round(value);
  if (!std::isfinite(value) || std::abs(value - rounded) > 1e-9)
    throw DataError("line " + std::to_string(line_no) + ": label '" + field +
                    "' is not an integer");
  return static_cast<long>(rounded);
}

void z_normalize_series(TimeSeries& s) {
  for (Index c = 0; c < s.cols(); ++c) {
    const double mean = s.col(c).mean();
    const double var = (s.col(c).array() - mean).square().mean();
    const double sd = std::sqrt(var);
    if (sd > 0.0)
      s.col(c) = (s.col(c).array() - mean) / sd;
    else
      s.col(c).array() -= mean;
  }
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& rows) {
  const Index m = static_cast<Index>(rows.size());
  const Index n = m > 0 ? static_cast<Index>(rows[0].size()) : 0;
  Matrix out(m, n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) out(i, j) = rows[static_cast<std::size_t>(i)]
                                                  [static_cast<std::size_t>(j)];
  return out;
}

bool double_eq(double a, double b) {
  return (std::isnan(a) && std::isnan(b)) || a == b;
}

} // namespace

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

LabeledDataset load_ucr(const std::string& path, bool z_normalize) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");

  LabeledDataset data;
  std::string line;
  std::size_t line_no = 0;
  Index dims = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("#", 0) == 0) {
      // optional multivariate header: "# d=<int>"
      const auto pos = line.find("d=");
      if (pos == std::string::npos)
        throw DataError("line 1: malformed header '" + line + "'");
      dims = static_cast<Index>(parse_label(line.substr(pos + 2), line_no));
      if (dims < 1) throw DataError("line 1: d must be positive");
      continue;
    }
    const auto fields = split_fields(line);
    if (fields.empty()) continue; // blank line
    if (fields.size() < 2)
      throw DataError("line " + std::to_string(line_no) +
                      ": expected a label and at least one observation");

    const long label = parse_label(fields[0], line_no);
    std::vector<double> values;
    values.reserve(fields.size() - 1);
    for (std::size_t f = 1; f < fields.size(); ++f)
      values.push_back(parse_double(fields[f], line_no));
    while (!values.empty() && std::isnan(values.back())) values.pop_back();
    if (values.empty())
      throw DataError("line " + std::to_string(line_no) + ": series is empty");
    for (double v : values)
      if (!std::isfinite(v))
        throw DataError("line " + std::to_string(line_no) +
                        ": non-finite observation inside the series");
    if (values.size() % static_cast<std::size_t>(dims) != 0)
      throw DataError("line " + std::to_string(line_no) +
                      ": observation count is not a multiple of d");

    const Index steps = static_cast<Index>(values.size()) / dims;
    TimeSeries series(steps, dims);
    for (Index t = 0; t < steps; ++t)
      for (Index c = 0; c < dims; ++c)
        series(t, c) = values[static_cast<std::size_t>(t * dims + c)];
    if (z_normalize) z_normalize_series(series);
    data.series.push_back(std::move(series));
    data.labels.push_back(label);
  }
  if (data.series.empty()) throw DataError("'" + path + "' contains no series");
  return data;
}

TimeSeries load_series_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) {
      const double v = parse_double(f, line_no);
      if (!std::isfinite(v))
        throw DataError("line " + std::to_string(line_no) + ": non-finite value");
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw DataError("line " + std::to_string(line_no) + ": ragged row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError("'" + path + "' contains no data");
  TimeSeries out(static_cast<Index>(rows.size()), static_cast<Index>(rows[0].size()));
  for (Index i = 0; i < out.rows(); ++i)
    for (Index j = 0; j < out.cols(); ++j)
      out(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return out;
}

void write_series_csv(const TimeSeries& series, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  for (Index i = 0; i < series.rows(); ++i) {
    for (Index j = 0; j < series.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(series(i, j));
    }
    out << '\n';
  }
  if (!out) throw DataError("failed while writing '" + path + "'");
}

bool operator==(const AccuracyRow& a, const AccuracyRow& b) {
  return a.dataset == b.dataset && a.method == b.method && a.kind == b.kind &&
         a.cost == b.cost && double_eq(a.gamma, b.gamma) && a.k == b.k &&
         a.accuracy == b.accuracy;
}

bool operator==(const ResultReport& a, const ResultReport& b) {
  if (!(a.command == b.command && a.dataset == b.dataset && a.kind == b.kind &&
        a.cost == b.cost && double_eq(a.gamma, b.gamma) && a.seed == b.seed &&
        double_eq(a.wall_time_sec, b.wall_time_sec) &&
        a.accuracies == b.accuracies &&
        a.divergence_values == b.divergence_values &&
        a.objective_traces == b.objective_traces))
    return false;
  if (a.barycenters.size() != b.barycenters.size()) return false;
  for (std::size_t i = 0; i < a.barycenters.size(); ++i) {
    const Matrix& x = a.barycenters[i];
    const Matrix& y = b.barycenters[i];
    if (x.rows() != y.rows() || x.cols() != y.cols() || x != y) return false;
  }
  return true;
}

void write_report(const ResultReport& report, ReportFormat format,
                  const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");

  if (format == ReportFormat::csv) {
    if (!report.accuracies.empty()) {
      out << "dataset,method,kind,cost,gamma,k,accuracy\n";
      for (const auto& row : report.accuracies) {
        out << csv_quote(row.dataset) << ',' << csv_quote(row.method) << ','
            << csv_quote(row.kind) << ',' << csv_quote(row.cost) << ','
            << (std::isnan(row.gamma) ? std::string("NA") : format_double(row.gamma))
            << ',' << row.k << ',' << row.accuracy << '\n';
      }
    } else if (!report.barycenters.empty()) {
      // one time step per row; multiple matrices separated by a blank line
      for (std::size_t b = 0; b < report.barycenters.size(); ++b) {
        if (b > 0) out << '\n';
        const Matrix& x = report.barycenters[b];
        for (Index i = 0; i < x.rows(); ++i) {
          for (Index j = 0; j < x.cols(); ++j) {
            if (j > 0) out << ',';
            out << format_double(x(i, j));
          }
          out << '\n';
        }
      }
    } else if (!report.divergence_values.empty()) {
      out << "kind,cost,gamma,value\n";
      for (double v : report.divergence_values)
        out << csv_quote(report.kind) << ',' << csv_quote(report.cost) << ','
            << (std::isnan(report.gamma) ? std::string("NA")
                                         : format_double(report.gamma))
            << ',' << format_double(v) << '\n';
    } else {
      throw std::invalid_argument("report has no tabular payload for CSV output");
    }
    if (!out) throw DataError("failed while writing '" + path + "'");
    return;
  }

  json j;
  j["command"] = report.command;
  j["dataset"] = report.dataset;
  j["kind"] = report.kind;
  j["cost"] = report.cost;
  if (!std::isnan(report.gamma)) j["gamma"] = report.gamma;
  j["seed"] = report.seed;
  if (report.wall_time_sec >= 0.0) j["wall_time_sec"] = report.wall_time_sec;
  if (!report.accuracies.empty()) {
    json rows = json::array();
    for (const auto& row : report.accuracies) {
      json r;
      r["dataset"] = row.dataset;
      r["method"] = row.method;
      r["kind"] = row.kind;
      r["cost"] = row.cost;
      if (!std::isnan(row.gamma)) r["gamma"] = row.gamma;
      r["k"] = row.k;
      r["accuracy"] = row.accuracy;
      rows.push_back(std::move(r));
    }
    j["accuracies"] = std::move(rows);
  }
  if (!report.barycenters.empty()) {
    json mats = json::array();
    for (const auto& m : report.barycenters) mats.push_back(matrix_to_json(m));
    j["barycenters"] = std::move(mats);
  }
  if (!report.divergence_values.empty()) j["values"] = report.divergence_values;
  if (!report.objective_traces.empty()) j["objective_traces"] = report.objective_traces;

  out << j.dump(2) << '\n';
  if (!out) throw DataError("failed while writing '" + path + "'");
}

ResultReport read_report_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError("cannot parse '" + path + "': " + e.what());
  }

  ResultReport report;
  report.command = j.value("command", "");
  report.dataset = j.value("dataset", "");
  report.kind = j.value("kind", "");
  report.cost = j.value("cost", "");
  report.gamma = j.contains("gamma") ? j["gamma"].get<double>()
                                     : std::numeric_limits<double>::quiet_NaN();
  report.seed = j.value("seed", std::uint64_t{0});
  report.wall_time_sec = j.value("wall_time_sec", -1.0);
  if (j.contains("accuracies")) {
    for (const auto& r : j["accuracies"]) {
      AccuracyRow row;
      row.dataset = r.value("dataset", "");
      row.method = r.value("method", "");
      row.kind = r.value("kind", "");
      row.cost = r.value("cost", "");
      row.gamma = r.contains("gamma") ? r["gamma"].get<double>()
                                      : std::numeric_limits<double>::quiet_NaN();
      row.k = r.value("k", 0);
      row.accuracy = r.value("accuracy", "");
      report.accuracies.push_back(std::move(row));
    }
  }
  if (j.contains("barycenters"))
    for (const auto& m : j["barycenters"]) report.barycenters.push_back(matrix_from_json(m));
  if (j.contains("values"))
    report.divergence_values = j["values"].get<std::vector<double>>();
  if (j.contains("objective_traces"))
    report.objective_traces = j["objective_traces"].get<std::vector<std::vector<double>>>();
  return report;
}

} // namespace tsdiv
