#include "dismetrics/dataset_io.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "dismetrics/error.hpp"

namespace dismetrics {

namespace fs = std::filesystem;
using nlohmann::json;

const char* to_string(DatasetError::Kind kind) noexcept {
  switch (kind) {
    case DatasetError::Kind::io: return "io";
    case DatasetError::Kind::malformed: return "malformed";
    case DatasetError::Kind::schema_mismatch: return "schema_mismatch";
    case DatasetError::Kind::dimension_mismatch: return "dimension_mismatch";
    case DatasetError::Kind::row_count_mismatch: return "row_count_mismatch";
    case DatasetError::Kind::non_finite: return "non_finite";
    case DatasetError::Kind::partial_grid: return "partial_grid";
  }
  return "?";
}

namespace {

constexpr int kFormatVersion = 1;

[[noreturn]] void fail(DatasetError::Kind kind, const std::string& what) {
  throw DatasetError(kind, what);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

json factor_to_json(const Factor& f) {
  json values = json::array();
  for (const auto& v : f.values) {
    if (v.size() == 1) {
      values.push_back(v(0));
    } else {
      values.push_back(std::vector<double>(v.data(), v.data() + v.size()));
    }
  }
  return json{{"name", f.name}, {"values", values}};
}

Factor factor_from_json(const json& j) {
  Factor f;
  f.name = j.at("name").get<std::string>();
  for (const auto& v : j.at("values")) {
    if (v.is_number()) {
      f.values.push_back(Point::Constant(1, v.get<double>()));
    } else {
      const auto entries = v.get<std::vector<double>>();
      f.values.push_back(Eigen::Map<const Point>(entries.data(),
                                                 static_cast<Eigen::Index>(entries.size())));
    }
  }
  return f;
}

std::vector<std::string> code_column_names(Eigen::Index m) {
  std::vector<std::string> names;
  for (Eigen::Index j = 0; j < m; ++j) names.push_back("z" + std::to_string(j + 1));
  return names;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) {
    fail(DatasetError::Kind::malformed, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

void save_dataset(const fs::path& dir, const Dataset& dataset) {
  const auto& table = dataset.table;
  const auto& grid = table.grid();
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(DatasetError::Kind::io, "cannot create " + dir.string() + ": " + ec.message());

  json schema;
  schema["format"] = "dismetrics-dataset";
  schema["version"] = kFormatVersion;
  schema["factors"] = json::array();
  for (const auto& f : grid.factors()) schema["factors"].push_back(factor_to_json(f));
  schema["block_dims"] = table.partition().dims();
  schema["code_columns"] = code_column_names(table.partition().total_dim());
  schema["rows"] = grid.size();
  schema["data"] = std::string(kCodesFileName);
  schema["provenance"] = {{"id", dataset.provenance.id},
                          {"generator", dataset.provenance.generator},
                          {"encoder", dataset.provenance.encoder},
                          {"seed", dataset.provenance.seed},
                          {"scale", dataset.provenance.scale}};

  const fs::path schema_path = dir / kSchemaFileName;
  std::ofstream schema_out(schema_path, std::ios::binary);
  if (!schema_out) fail(DatasetError::Kind::io, "cannot write " + schema_path.string());
  schema_out << schema.dump(2) << '\n';

  const fs::path codes_path = dir / kCodesFileName;
  std::ofstream csv(codes_path, std::ios::binary);
  if (!csv) fail(DatasetError::Kind::io, "cannot write " + codes_path.string());
  for (std::size_t i = 0; i < grid.num_factors(); ++i) {
    csv << (i ? "," : "") << 'f' << (i + 1);
  }
  for (const auto& name : code_column_names(table.partition().total_dim())) csv << ',' << name;
  csv << '\n';
  for (std::size_t r = 0; r < grid.size(); ++r) {
    for (std::size_t i = 0; i < grid.num_factors(); ++i) {
      csv << (i ? "," : "") << grid.coordinate(r, i);
    }
    for (Eigen::Index j = 0; j < table.codes().cols(); ++j) {
      csv << ',' << format_double(table.codes()(static_cast<Eigen::Index>(r), j));
    }
    csv << '\n';
  }
  if (!csv) fail(DatasetError::Kind::io, "error while writing " + codes_path.string());
}

Dataset load_dataset(const fs::path& dir) {
  const fs::path schema_path = dir / kSchemaFileName;
  std::ifstream schema_in(schema_path, std::ios::binary);
  if (!schema_in) fail(DatasetError::Kind::io, "cannot open " + schema_path.string());

  json schema;
  std::vector<Factor> factors;
  std::vector<Eigen::Index> block_dims;
  std::vector<std::string> code_columns;
  std::size_t declared_rows = 0;
  Provenance provenance;
  try {
    schema = json::parse(schema_in);
    if (schema.at("format").get<std::string>() != "dismetrics-dataset") {
      fail(DatasetError::Kind::malformed, "unexpected format tag in " + schema_path.string());
    }
    for (const auto& f : schema.at("factors")) factors.push_back(factor_from_json(f));
    block_dims = schema.at("block_dims").get<std::vector<Eigen::Index>>();
    code_columns = schema.at("code_columns").get<std::vector<std::string>>();
    declared_rows = schema.at("rows").get<std::size_t>();
    const auto& p = schema.at("provenance");
    provenance.id = p.value("id", "");
    provenance.generator = p.value("generator", "");
    provenance.encoder = p.value("encoder", "");
    provenance.seed = p.value("seed", std::uint64_t{0});
    provenance.scale = p.value("scale", 1.0);
  } catch (const json::exception& e) {
    fail(DatasetError::Kind::malformed, schema_path.string() + ": " + e.what());
  }

  std::optional<FactorGrid> grid;
  std::optional<CodePartition> partition;
  try {
    grid.emplace(std::move(factors));
    partition.emplace(block_dims);
  } catch (const InvalidArgument& e) {
    fail(DatasetError::Kind::malformed, schema_path.string() + ": " + e.what());
  }
  if (partition->num_blocks() != grid->num_factors()) {
    fail(DatasetError::Kind::dimension_mismatch,
         "block_dims has " + std::to_string(partition->num_blocks()) + " entries for " +
             std::to_string(grid->num_factors()) + " factors");
  }

  const fs::path codes_path = dir / kCodesFileName;
  std::ifstream csv(codes_path, std::ios::binary);
  if (!csv) fail(DatasetError::Kind::io, "cannot open " + codes_path.string());
  std::string line;
  if (!std::getline(csv, line)) fail(DatasetError::Kind::malformed, "empty " + codes_path.string());
  const auto header = split_csv_line(strip_cr(line));
  const std::size_t n_factors = grid->num_factors();
  std::vector<std::string> expected;
  for (std::size_t i = 0; i < n_factors; ++i) expected.push_back("f" + std::to_string(i + 1));
  expected.insert(expected.end(), code_columns.begin(), code_columns.end());
  if (header != expected) {
    fail(DatasetError::Kind::schema_mismatch,
         codes_path.string() + ": header does not match the columns declared in the schema");
  }
  const auto m = static_cast<Eigen::Index>(code_columns.size());
  if (m != partition->total_dim()) {
    fail(DatasetError::Kind::dimension_mismatch,
         "block_dims sum to " + std::to_string(partition->total_dim()) + " but there are " +
             std::to_string(m) + " code columns");
  }

  std::vector<std::vector<std::size_t>> tuples;
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(csv, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != expected.size()) {
      fail(DatasetError::Kind::schema_mismatch,
           codes_path.string() + ":" + std::to_string(line_no) + ": wrong number of cells");
    }
    std::vector<std::size_t> tuple(n_factors);
    for (std::size_t i = 0; i < n_factors; ++i) {
      const double v = parse_double(cells[i]);
      if (v < 0 || v != std::floor(v) ||
          static_cast<std::size_t>(v) >= grid->factor(i).values.size()) {
        fail(DatasetError::Kind::malformed, codes_path.string() + ":" + std::to_string(line_no) +
                                                ": bad value index '" + cells[i] + "'");
      }
      tuple[i] = static_cast<std::size_t>(v);
    }
    std::vector<double> code(static_cast<std::size_t>(m));
    for (Eigen::Index j = 0; j < m; ++j) {
      const double v = parse_double(cells[n_factors + static_cast<std::size_t>(j)]);
      if (!std::isfinite(v)) {
        fail(DatasetError::Kind::non_finite,
             codes_path.string() + ":" + std::to_string(line_no) + ": non-finite code entry");
      }
      code[static_cast<std::size_t>(j)] = v;
    }
    tuples.push_back(std::move(tuple));
    rows.push_back(std::move(code));
  }
  if (rows.size() != declared_rows) {
    fail(DatasetError::Kind::row_count_mismatch,
         "schema declares " + std::to_string(declared_rows) + " rows, " + codes_path.string() +
             " has " + std::to_string(rows.size()));
  }
  if (rows.size() != grid->size()) {
    fail(DatasetError::Kind::partial_grid,
         "only full factor grids are supported: expected " + std::to_string(grid->size()) +
             " combinations, got " + std::to_string(rows.size()));
  }

  PointSet codes(static_cast<Eigen::Index>(grid->size()), m);
  std::vector<bool> seen(grid->size(), false);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const std::size_t r = grid->index_of(tuples[k]);
    if (seen[r]) fail(DatasetError::Kind::partial_grid, "repeated factor combination");
    seen[r] = true;
    codes.row(static_cast<Eigen::Index>(r)) =
        Eigen::Map<const Eigen::RowVectorXd>(rows[k].data(), m);
  }
  return {CodeTable(std::move(*grid), std::move(*partition), std::move(codes)),
          std::move(provenance)};
}

}  // namespace dismetrics
