#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "tsdiv/classify.hpp"
#include "tsdiv/matrix.hpp"

namespace tsdiv {

/// Loads a UCR-archive text file: one series per line, the first field is
/// the integer class label, the remaining fields are univariate
/// observations. Comma, tab and whitespace delimiters are accepted and
/// trailing NaN padding is trimmed. A `# d=<int>` header line switches to
/// the multivariate layout (d values per time step, time-major).
/// z_normalize rescales each series (per dimension) to mean 0, variance 1.
LabeledDataset load_ucr(const std::string& path, bool z_normalize = false);

/// Single-series CSV: one time step per row, one column per dimension.
TimeSeries load_series_csv(const std::string& path);

void write_series_csv(const TimeSeries& series, const std::string& path);

enum class ReportFormat { csv, json };

struct AccuracyRow {
  std::string dataset;
  std::string method;
  std::string kind;
  std::string cost;
  double gamma = 0.0;   // NaN when not applicable
  int k = 0;
  std::string accuracy; // two-decimal percent, or "NA"
};

/// Structured run output. Metadata plus whichever payload fields the run
/// produced; empty payloads are omitted from the serialized form.
struct ResultReport {
  std::string command;
  std::string dataset;
  std::string kind;
  std::string cost;
  double gamma = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t seed = 0;
  /// Negative means unset; machine output then omits timing so equal runs
  /// stay byte-identical.
  double wall_time_sec = -1.0;

  std::vector<AccuracyRow> accuracies;
  std::vector<Matrix> barycenters;
  std::vector<double> divergence_values;
  std::vector<std::vector<double>> objective_traces;
};

/// Field-wise equality; NaN metadata compares equal to NaN so round trips
/// of unset fields hold.
bool operator==(const AccuracyRow& a, const AccuracyRow& b);
bool operator==(const ResultReport& a, const ResultReport& b);

/// CSV for tabular payloads (RFC-4180 quoting), JSON for nested ones.
/// Floating values are written with 17 significant digits.
void write_report(const ResultReport& report, ReportFormat format,
                  const std::string& path);

ResultReport read_report_json(const std::string& path);

/// %.17g formatting used across machine outputs.
std::string format_double(double value);

} // namespace tsdiv
