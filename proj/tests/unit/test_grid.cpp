#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "dismetrics/dataset_io.hpp"
#include "dismetrics/error.hpp"
#include "dismetrics/grid.hpp"

using namespace dismetrics;
namespace fs = std::filesystem;

namespace {

std::vector<double> tenths() {
  std::vector<double> v;
  for (int k = 0; k <= 10; ++k) v.push_back(k / 10.0);
  return v;
}

FactorGrid grid23() {
  return FactorGrid({Factor::scalar("a", {0, 1}), Factor::scalar("b", {0, 1, 2})});
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("dismetrics_grid_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

Dataset sample_dataset() {
  const FactorGrid g = grid23();
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n;
  PointSet codes(6, 3);
  for (Eigen::Index k = 0; k < codes.size(); ++k) codes.data()[k] = n(rng);
  Provenance p{"sample", "gen", "enc", 42, 1.5};
  return Dataset{CodeTable(g, CodePartition({2, 1}), codes), p};
}

}  // namespace

TEST(FactorGrid, Sizes) {
  EXPECT_EQ(uniform_grid(3, tenths()).size(), 1331u);
  EXPECT_EQ(FactorGrid({Factor::scalar("y", {0})}).size(), 1u);
  const FactorGrid g = grid23();
  EXPECT_EQ(g.size(), 6u);
  const std::vector<std::size_t> t{1, 2};
  EXPECT_EQ(g.index_of(t), 5u);
}

TEST(FactorGrid, IndexBijection) {
  const FactorGrid g({Factor::scalar("a", {0, 1, 2}), Factor::scalar("b", {5, 6}),
                      Factor::scalar("c", {-1, 0, 1, 2})});
  for (std::size_t k = 0; k < g.size(); ++k) {
    EXPECT_EQ(g.index_of(g.tuple_of(k)), k);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(g.coordinate(k, i), g.tuple_of(k)[i]);
  }
  const PointSet pts = g.points();
  EXPECT_EQ(pts.rows(), 24);
  EXPECT_EQ(pts(23, 0), 2.0);
  EXPECT_EQ(pts(23, 2), 2.0);
}

TEST(FactorGrid, Validation) {
  EXPECT_THROW(FactorGrid({}), InvalidArgument);
  EXPECT_THROW(FactorGrid({Factor::scalar("a", {})}), InvalidArgument);
  EXPECT_THROW(FactorGrid({Factor::scalar("a", {1, 1})}), InvalidArgument);
  EXPECT_THROW(FactorGrid({Factor::scalar("a", {1, std::nan("")})}), InvalidArgument);
}

TEST(Slice, Examples) {
  const FactorGrid g = grid23();
  const Slice s = slice_fixing(g, 0, 1);
  EXPECT_EQ(s.indices, (std::vector<std::size_t>{3, 4, 5}));
  EXPECT_EQ(slice_fixing(g, 1, 2).indices, (std::vector<std::size_t>{2, 5}));
  EXPECT_EQ(slice_fixing(FactorGrid({Factor::scalar("y", {0, 1, 2})}), 0, 1).indices.size(), 1u);
  const FactorGrid big = uniform_grid(3, tenths());
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t v = 0; v < 11; ++v) EXPECT_EQ(slice_fixing(big, i, v).indices.size(), 121u);
  }
  EXPECT_THROW(slice_fixing(g, 2, 0), InvalidArgument);
  EXPECT_THROW(slice_fixing(g, 0, 2), InvalidArgument);
}

TEST(CodeTable, ComponentCodes) {
  const FactorGrid g({Factor::scalar("a", {0}), Factor::scalar("b", {0}), Factor::scalar("c", {0})});
  PointSet row(1, 3);
  row << 7, 8, 9;
  const CodeTable t(g, CodePartition({1, 1, 1}), row);
  const std::vector<std::size_t> idx{0};
  EXPECT_EQ(component_codes(t, 2, idx)(0, 0), 9.0);

  PointSet dup(1, 7);
  dup << 1, 2, 3, 1, 2, 3, 3;
  const CodeTable td(g, CodePartition({3, 3, 1}), dup);
  EXPECT_EQ(component_codes(td, 0, idx), dup.leftCols(3));

  PointSet red(1, 4);
  red << 0.3, -0.3, 0.5, 0.9;
  const CodeTable tr(g, CodePartition({2, 1, 1}), red);
  EXPECT_EQ(component_codes(tr, 0, idx), red.leftCols(2));
}

TEST(CodeTable, Validation) {
  const FactorGrid g = grid23();
  EXPECT_THROW(CodeTable(g, CodePartition({1, 1}), PointSet::Zero(5, 2)), InvalidArgument);
  EXPECT_THROW(CodeTable(g, CodePartition({1, 1}), PointSet::Zero(6, 3)), InvalidArgument);
  EXPECT_THROW(CodeTable(g, CodePartition({1, 1, 1}), PointSet::Zero(6, 3)), InvalidArgument);
  PointSet bad = PointSet::Zero(6, 2);
  bad(2, 1) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(CodeTable(g, CodePartition({1, 1}), bad), InvalidArgument);
  EXPECT_THROW(CodePartition(std::vector<Eigen::Index>{}), InvalidArgument);
  EXPECT_THROW(CodePartition({1, 0}), InvalidArgument);
}

TEST(DatasetIo, RoundTripIsExact) {
  const fs::path dir = scratch("roundtrip");
  const Dataset ds = sample_dataset();
  save_dataset(dir, ds);
  const Dataset back = load_dataset(dir);
  EXPECT_TRUE(back.table.grid() == ds.table.grid());
  EXPECT_TRUE(back.table.partition() == ds.table.partition());
  EXPECT_TRUE(back.table.codes() == ds.table.codes());
  EXPECT_EQ(back.provenance, ds.provenance);

  const std::string csv = slurp(dir / kCodesFileName);
  save_dataset(dir, back);
  EXPECT_EQ(slurp(dir / kCodesFileName), csv);
}

TEST(DatasetIo, FormatDoubleRoundTrips) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n(0, 1e3);
  for (int k = 0; k < 1000; ++k) {
    const double v = n(rng);
    EXPECT_EQ(parse_double(format_double(v)), v);
  }
  EXPECT_THROW(parse_double("1.5x"), DatasetError);
}

namespace {

DatasetError::Kind load_error(const fs::path& dir) {
  try {
    load_dataset(dir);
  } catch (const DatasetError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected DatasetError";
  return DatasetError::Kind::io;
}

// Replaces the first occurrence of `from` in a file.
void patch(const fs::path& p, const std::string& from, const std::string& to) {
  std::string text = slurp(p);
  const auto pos = text.find(from);
  ASSERT_NE(pos, std::string::npos) << from;
  text.replace(pos, from.size(), to);
  spit(p, text);
}

}  // namespace

TEST(DatasetIo, ErrorKinds) {
  const Dataset ds = sample_dataset();

  EXPECT_EQ(load_error(scratch("missing")), DatasetError::Kind::io);

  {  // CSV lacks a code column the schema declares.
    const fs::path dir = scratch("missing_col");
    save_dataset(dir, ds);
    std::string csv = slurp(dir / kCodesFileName);
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
    spit(dir / kCodesFileName, out);
    EXPECT_EQ(load_error(dir), DatasetError::Kind::schema_mismatch);
  }
  {  // Block widths disagree with the code columns.
    const fs::path dir = scratch("dims");
    save_dataset(dir, ds);
    std::string schema = slurp(dir / kSchemaFileName);
    const auto pos = schema.find("\"block_dims\"");
    ASSERT_NE(pos, std::string::npos);
    const auto open = schema.find('[', pos), close = schema.find(']', pos);
    schema.replace(open, close - open + 1, "[1, 1, 1]");
    spit(dir / kSchemaFileName, schema);
    EXPECT_EQ(load_error(dir), DatasetError::Kind::dimension_mismatch);
  }
  {  // A data row removed.
    const fs::path dir = scratch("rows");
    save_dataset(dir, ds);
    std::string csv = slurp(dir / kCodesFileName);
    csv.erase(csv.rfind('\n', csv.size() - 2) + 1);
    spit(dir / kCodesFileName, csv);
    EXPECT_EQ(load_error(dir), DatasetError::Kind::row_count_mismatch);
  }
  {  // A row duplicated in place of another.
    const fs::path dir = scratch("partial");
    save_dataset(dir, ds);
    patch(dir / kCodesFileName, "\n1,0,", "\n0,0,");
    EXPECT_EQ(load_error(dir), DatasetError::Kind::partial_grid);
  }
  {
    const fs::path dir = scratch("nonfinite");
    save_dataset(dir, ds);
    std::string csv = slurp(dir / kCodesFileName);
    const auto pos = csv.rfind(',');
    csv.replace(pos + 1, csv.size() - pos - 2, "nan");
    spit(dir / kCodesFileName, csv);
    EXPECT_EQ(load_error(dir), DatasetError::Kind::non_finite);
  }
  {
    const fs::path dir = scratch("malformed");
    save_dataset(dir, ds);
    spit(dir / kSchemaFileName, "{ not json");
    EXPECT_EQ(load_error(dir), DatasetError::Kind::malformed);
  }
}
