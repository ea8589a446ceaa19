#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dismetrics/dataset_io.hpp"
#include "dismetrics/metrics.hpp"

namespace dismetrics {

enum class Granularity { overall, per_component, per_fixed_value };

std::string_view to_string(Granularity g) noexcept;
Granularity parse_granularity(std::string_view name);

enum class TableFormat { csv, markdown };

std::string_view to_string(TableFormat f) noexcept;
TableFormat parse_table_format(std::string_view name);

// Every metric evaluated on one dataset.
struct TargetReport {
  std::string target;
  Provenance provenance;
  std::vector<MetricReport> metrics;
};

struct ReportDocument {
  Granularity granularity = Granularity::overall;
  std::vector<TargetReport> targets;
};

// JSON text of the document. Scores keep full precision; +inf is written
// as the string "inf".
std::string to_json_text(const ReportDocument& doc);
// Throws DatasetError(malformed) on anything that is not a report.
ReportDocument parse_report(std::string_view text);

// Throws DatasetError(io) on failure.
void save_report(const std::filesystem::path& path, const ReportDocument& doc);
ReportDocument load_report(const std::filesystem::path& path);

// One row of the flat record CSV. component is "all" for the overall score
// and the 1-based block number otherwise; fixed_value is the 0-based value
// index for per-value scores and empty otherwise.
struct ReportRecord {
  std::string target;
  std::string metric;
  std::string aggregator;
  std::string component;
  std::string fixed_value;
  double score = 0.0;

  friend bool operator==(const ReportRecord&, const ReportRecord&) = default;
};

// Records down to the given granularity, in document order.
std::vector<ReportRecord> flatten(const ReportDocument& doc, Granularity granularity);

inline constexpr std::string_view kRecordHeader =
    "target,metric,aggregator,component,fixed_value,score";

// Header plus one line per record, scores with 17 significant digits.
std::string records_csv(const std::vector<ReportRecord>& records);
// Inverse of records_csv. Throws DatasetError(malformed).
std::vector<ReportRecord> parse_records_csv(std::string_view text);

// A rendered table column: the metric report with this id and inner
// aggregator, optionally restricted to one component (1-based, 0 = overall).
struct TableColumn {
  std::string group;
  std::string label;
  MetricId metric;
  std::string inner;
  std::size_t component = 0;
};

// Approximation Rad./MAD/Var., Constancy Max/Mean, Left-inverse
// MME/MAE/MSE, Contraction Max/Mean.
std::vector<TableColumn> summary_columns();
// The five product columns repeated for components 1..n.
std::vector<TableColumn> componentwise_columns(std::size_t n_components);

// One row per target with scores to 2 decimals; missing cells are blank.
// overall renders summary_columns(), per_component renders
// componentwise_columns() and per_fixed_value renders the flat records.
std::string render_table(const ReportDocument& doc, Granularity granularity, TableFormat format);

// Score to 2 decimals ("inf" for +inf).
std::string format_fixed2(double value);

}  // namespace dismetrics
