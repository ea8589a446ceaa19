#include "dismetrics/report.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "dismetrics/error.hpp"

namespace dismetrics {

using nlohmann::json;

namespace {

constexpr std::string_view kFormat = "dismetrics-report";
constexpr int kVersion = 1;

json score_json(QValue q) {
  if (!q.is_finite()) return "inf";
  return q.value();
}

QValue score_from(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return QValue::bottom();
    throw DatasetError(DatasetError::Kind::malformed, "report: bad score '" +
                                                          j.get<std::string>() + "'");
  }
  if (!j.is_number()) throw DatasetError(DatasetError::Kind::malformed, "report: bad score");
  try {
    return QValue(j.get<double>());
  } catch (const InvalidArgument& e) {
    throw DatasetError(DatasetError::Kind::malformed, std::string("report: ") + e.what());
  }
}

json metric_json(const MetricReport& m) {
  json j;
  j["metric"] = std::string(to_string(m.metric));
  j["inner"] = m.inner;
  j["outer"] = m.outer ? json(std::string(to_string(*m.outer))) : json(nullptr);
  j["overall"] = score_json(m.overall);
  json comps = json::array();
  for (QValue q : m.per_component) comps.push_back(score_json(q));
  j["per_component"] = comps;
  json fixed = json::array();
  for (const auto& row : m.per_fixed_value) {
    json r = json::array();
    for (QValue q : row) r.push_back(score_json(q));
    fixed.push_back(r);
  }
  j["per_fixed_value"] = fixed;
  j["metadata"] = m.metadata;
  return j;
}

MetricReport metric_from(const json& j) {
  MetricReport m;
  m.metric = parse_metric(j.at("metric").get<std::string>());
  m.inner = j.at("inner").get<std::string>();
  if (!j.at("outer").is_null()) m.outer = parse_aggregator(j.at("outer").get<std::string>());
  m.overall = score_from(j.at("overall"));
  for (const auto& q : j.at("per_component")) m.per_component.push_back(score_from(q));
  for (const auto& row : j.at("per_fixed_value")) {
    std::vector<QValue> r;
    for (const auto& q : row) r.push_back(score_from(q));
    m.per_fixed_value.push_back(std::move(r));
  }
  m.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
  return m;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"') {
        if (k + 1 < line.size() && line[k + 1] == '"') {
          fields.back() += '"';
          ++k;
        } else {
          quoted = false;
        }
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw DatasetError(DatasetError::Kind::malformed, "records: unterminated quote");
  return fields;
}

std::string format_score(double v) { return std::isinf(v) ? "inf" : format_double(v); }

const MetricReport* find_metric(const TargetReport& t, MetricId id, const std::string& inner) {
  for (const MetricReport& m : t.metrics) {
    if (m.metric == id && m.inner == inner) return &m;
  }
  return nullptr;
}

std::string render_rows(const std::vector<std::string>& header,
                        const std::vector<std::vector<std::string>>& rows, TableFormat format) {
  std::ostringstream out;
  if (format == TableFormat::csv) {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t k = 0; k < cells.size(); ++k) {
        if (k) out << ',';
        out << csv_field(cells[k]);
      }
      out << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out.str();
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t k = 0; k < header.size(); ++k) width[k] = std::max<std::size_t>(3, header[k].size());
  for (const auto& r : rows) {
    for (std::size_t k = 0; k < r.size(); ++k) width[k] = std::max(width[k], r[k].size());
  }
  auto line = [&](const std::vector<std::string>& cells, bool left_first) {
    out << '|';
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const std::string pad(width[k] - cells[k].size(), ' ');
      out << ' ' << ((k == 0 && left_first) ? cells[k] + pad : pad + cells[k]) << " |";
    }
    out << '\n';
  };
  line(header, true);
  out << '|';
  for (std::size_t k = 0; k < header.size(); ++k) {
    out << ' ' << (k == 0 ? std::string(width[k], '-') : std::string(width[k] - 1, '-') + ':')
        << " |";
  }
  out << '\n';
  for (const auto& r : rows) line(r, true);
  return out.str();
}

}  // namespace

std::string_view to_string(Granularity g) noexcept {
  switch (g) {
    case Granularity::overall:
      return "overall";
    case Granularity::per_component:
      return "per_component";
    case Granularity::per_fixed_value:
      return "per_fixed_value";
  }
  return "overall";
}

Granularity parse_granularity(std::string_view name) {
  if (name == "overall") return Granularity::overall;
  if (name == "per_component") return Granularity::per_component;
  if (name == "per_fixed_value") return Granularity::per_fixed_value;
  throw InvalidArgument("unknown granularity '" + std::string(name) + "'");
}

std::string_view to_string(TableFormat f) noexcept {
  return f == TableFormat::csv ? "csv" : "markdown";
}

TableFormat parse_table_format(std::string_view name) {
  if (name == "csv") return TableFormat::csv;
  if (name == "markdown") return TableFormat::markdown;
  throw InvalidArgument("unknown format '" + std::string(name) + "'");
}

std::string to_json_text(const ReportDocument& doc) {
  json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["granularity"] = std::string(to_string(doc.granularity));
  json targets = json::array();
  for (const TargetReport& t : doc.targets) {
    json jt;
    jt["target"] = t.target;
    jt["provenance"] = {{"id", t.provenance.id},
                        {"generator", t.provenance.generator},
                        {"encoder", t.provenance.encoder},
                        {"seed", t.provenance.seed},
                        {"scale", t.provenance.scale}};
    json metrics = json::array();
    for (const MetricReport& m : t.metrics) metrics.push_back(metric_json(m));
    jt["metrics"] = metrics;
    targets.push_back(jt);
  }
  j["targets"] = targets;
  return j.dump(2) + "\n";
}

ReportDocument parse_report(std::string_view text) {
  try {
    const json j = json::parse(text);
    if (j.at("format") != kFormat || j.at("version") != kVersion) {
      throw DatasetError(DatasetError::Kind::malformed, "report: unsupported format or version");
    }
    ReportDocument doc;
    doc.granularity = parse_granularity(j.at("granularity").get<std::string>());
    for (const auto& jt : j.at("targets")) {
      TargetReport t;
      t.target = jt.at("target").get<std::string>();
      const auto& p = jt.at("provenance");
      t.provenance.id = p.at("id").get<std::string>();
      t.provenance.generator = p.at("generator").get<std::string>();
      t.provenance.encoder = p.at("encoder").get<std::string>();
      t.provenance.seed = p.at("seed").get<std::uint64_t>();
      t.provenance.scale = p.at("scale").get<double>();
      for (const auto& jm : jt.at("metrics")) t.metrics.push_back(metric_from(jm));
      doc.targets.push_back(std::move(t));
    }
    return doc;
  } catch (const json::exception& e) {
    throw DatasetError(DatasetError::Kind::malformed, std::string("report: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw DatasetError(DatasetError::Kind::malformed, std::string("report: ") + e.what());
  }
}

void save_report(const std::filesystem::path& path, const ReportDocument& doc) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  out << to_json_text(doc);
  if (!out) throw DatasetError(DatasetError::Kind::io, "cannot write " + path.string());
}

ReportDocument load_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError(DatasetError::Kind::io, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_report(buf.str());
}

std::vector<ReportRecord> flatten(const ReportDocument& doc, Granularity granularity) {
  std::vector<ReportRecord> out;
  for (const TargetReport& t : doc.targets) {
    for (const MetricReport& m : t.metrics) {
      const std::string metric(to_string(m.metric));
      out.push_back({t.target, metric, m.inner, "all", "", m.overall.value()});
      if (granularity == Granularity::overall) continue;
      for (std::size_t i = 0; i < m.per_component.size(); ++i) {
        out.push_back({t.target, metric, m.inner, std::to_string(i + 1), "",
                       m.per_component[i].value()});
        if (granularity != Granularity::per_fixed_value || i >= m.per_fixed_value.size()) {
          continue;
        }
        for (std::size_t v = 0; v < m.per_fixed_value[i].size(); ++v) {
          out.push_back({t.target, metric, m.inner, std::to_string(i + 1), std::to_string(v),
                         m.per_fixed_value[i][v].value()});
        }
      }
    }
  }
  return out;
}

std::string records_csv(const std::vector<ReportRecord>& records) {
  std::string out(kRecordHeader);
  out += '\n';
  for (const ReportRecord& r : records) {
    out += csv_field(r.target) + ',' + csv_field(r.metric) + ',' + csv_field(r.aggregator) + ',' +
           r.component + ',' + r.fixed_value + ',' + format_score(r.score) + '\n';
  }
  return out;
}

std::vector<ReportRecord> parse_records_csv(std::string_view text) {
  std::vector<ReportRecord> out;
  std::size_t pos = 0;
  bool header = true;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (header) {
      if (line != kRecordHeader) {
        throw DatasetError(DatasetError::Kind::malformed, "records: unexpected header");
      }
      header = false;
      continue;
    }
    const auto f = split_csv_line(line);
    if (f.size() != 6) {
      throw DatasetError(DatasetError::Kind::malformed,
                         "records: line " + std::to_string(line_no) + " has " +
                             std::to_string(f.size()) + " fields");
    }
    const double score = f[5] == "inf" ? std::numeric_limits<double>::infinity()
                                       : parse_double(f[5]);
    out.push_back({f[0], f[1], f[2], f[3], f[4], score});
  }
  if (header) throw DatasetError(DatasetError::Kind::malformed, "records: missing header");
  return out;
}

std::vector<TableColumn> summary_columns() {
  return {
      {"Approximation", "Rad.", MetricId::approximation, "max"},
      {"Approximation", "MAD", MetricId::approximation, "mean"},
      {"Approximation", "Var.", MetricId::approximation, "second_moment"},
      {"Constancy", "Max", MetricId::constancy, "max"},
      {"Constancy", "Mean", MetricId::constancy, "mean"},
      {"Left-inverse", "MME", MetricId::left_inverse, "minimax"},
      {"Left-inverse", "MAE", MetricId::left_inverse, "least_abs"},
      {"Left-inverse", "MSE", MetricId::left_inverse, "least_squares"},
      {"Contraction", "Max", MetricId::contraction, "max"},
      {"Contraction", "Mean", MetricId::contraction, "mean"},
  };
}

std::vector<TableColumn> componentwise_columns(std::size_t n_components) {
  std::vector<TableColumn> out;
  for (const TableColumn& c : summary_columns()) {
    if (c.metric != MetricId::approximation && c.metric != MetricId::constancy) continue;
    for (std::size_t i = 1; i <= n_components; ++i) {
      TableColumn col = c;
      col.label += " " + std::to_string(i);
      col.component = i;
      out.push_back(col);
    }
  }
  return out;
}

std::string format_fixed2(double value) {
  if (std::isinf(value)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

std::string render_table(const ReportDocument& doc, Granularity granularity,
                         TableFormat format) {
  if (granularity == Granularity::per_fixed_value) {
    const auto records = flatten(doc, granularity);
    std::vector<std::string> header{"target", "metric", "aggregator", "component", "fixed_value",
                                    "score"};
    std::vector<std::vector<std::string>> rows;
    for (const ReportRecord& r : records) {
      rows.push_back({r.target, r.metric, r.aggregator, r.component, r.fixed_value,
                      format_fixed2(r.score)});
    }
    return render_rows(header, rows, format);
  }

  std::vector<TableColumn> columns;
  if (granularity == Granularity::overall) {
    columns = summary_columns();
  } else {
    std::size_t n = 0;
    for (const TargetReport& t : doc.targets) {
      for (const MetricReport& m : t.metrics) n = std::max(n, m.per_component.size());
    }
    columns = componentwise_columns(n);
  }
  std::vector<std::string> header{"target"};
  for (const TableColumn& c : columns) header.push_back(c.group + " " + c.label);
  std::vector<std::vector<std::string>> rows;
  for (const TargetReport& t : doc.targets) {
    std::vector<std::string> row{t.target};
    for (const TableColumn& c : columns) {
      const MetricReport* m = find_metric(t, c.metric, c.inner);
      if (m == nullptr) {
        row.emplace_back();
      } else if (c.component == 0) {
        row.push_back(format_fixed2(m->overall.value()));
      } else if (c.component <= m->per_component.size()) {
        row.push_back(format_fixed2(m->per_component[c.component - 1].value()));
      } else {
        row.emplace_back();
      }
    }
    rows.push_back(std::move(row));
  }
  return render_rows(header, rows, format);
}

}  // namespace dismetrics
