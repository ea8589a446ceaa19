#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "dismetrics/grid.hpp"

namespace dismetrics {

// Where a dataset came from. Recorded in the schema file and carried into
// reports.
struct Provenance {
  std::string id;          // dataset name, e.g. the encoder name for synthetic sets
  std::string generator;   // data-generating process, empty for external data
  std::string encoder;
  std::uint64_t seed = 0;
  double scale = 1.0;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Dataset {
  CodeTable table;
  Provenance provenance;
};

// A dataset on disk is a directory with two files:
//
//   schema.json  factor names and value lists, code block widths, the code
//                column names, the row count, and provenance;
//   codes.csv    header f1..fN,z1..zM; each row holds the value-list index of
//                every factor followed by the code entries printed with 17
//                significant digits.
//
// The pair round-trips bit-exactly.
inline constexpr std::string_view kSchemaFileName = "schema.json";
inline constexpr std::string_view kCodesFileName = "codes.csv";

// Creates `dir` if needed. Throws DatasetError(io) on write failure.
void save_dataset(const std::filesystem::path& dir, const Dataset& dataset);

// Throws DatasetError with a kind describing the first problem found:
// io, malformed, schema_mismatch (CSV columns differ from the schema),
// dimension_mismatch (block widths do not sum to the code width),
// row_count_mismatch, non_finite, or partial_grid (missing or repeated
// factor combinations).
Dataset load_dataset(const std::filesystem::path& dir);

// Shortest-safe decimal form with 17 significant digits; parses back to the
// identical double.
std::string format_double(double value);
// Throws DatasetError(malformed) if `text` is not entirely a number.
double parse_double(std::string_view text);

}  // namespace dismetrics
