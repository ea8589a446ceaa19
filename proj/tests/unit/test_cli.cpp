#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dismetrics/dataset_io.hpp"
#include "dismetrics/report.hpp"
#include "dismetrics_cli/cli.hpp"

namespace fs = std::filesystem;
using dismetrics::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("dismetrics_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, SynthWritesDeterministicDataset) {
  const fs::path d1 = scratch("synth1"), d2 = scratch("synth2");
  ASSERT_EQ(call({"synth", "--encoder", "constant", "--seed", "7", "--out", d1.string()}).code, 0);
  ASSERT_EQ(call({"synth", "--encoder", "constant", "--seed", "7", "--out", d2.string()}).code, 0);
  EXPECT_EQ(slurp(d1 / "codes.csv"), slurp(d2 / "codes.csv"));
  EXPECT_EQ(slurp(d1 / "schema.json"), slurp(d2 / "schema.json"));
  const auto ds = dismetrics::load_dataset(d1);
  EXPECT_EQ(ds.table.codes().rows(), 1331);
  EXPECT_EQ(ds.provenance.seed, 7u);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(call({"synth", "--encoder", "bogus", "--out", scratch("bogus").string()}).code, 1);
  EXPECT_EQ(call({}).code, 1);
  EXPECT_EQ(call({"frobnicate"}).code, 1);
  EXPECT_EQ(call({"eval", "--encoder", "constant", "--metrics", ""}).code, 1);
  EXPECT_EQ(call({"eval", "--encoder", "constant", "--granularity", "weekly"}).code, 1);
  EXPECT_EQ(call({"eval", "--encoder", "constant", "--agg", "median"}).code, 1);
  EXPECT_EQ(call({"report", "x.json", "--format", "html"}).code, 2);  // missing file checked first
  EXPECT_EQ(call({"--help"}).code, 0);
}

TEST(Cli, DataErrors) {
  EXPECT_EQ(call({"eval", "--data", scratch("nothing").string()}).code, 2);
  EXPECT_EQ(call({"report", scratch("none.json").string()}).code, 2);
  EXPECT_EQ(call({"eval", "--config", scratch("missing.json").string()}).code, 2);
}

TEST(Cli, EvalSuiteAndReport) {
  const fs::path out = scratch("eval");
  const auto r = call({"eval", "--seed", "3", "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string table = slurp(out / "table.csv");
  // Header plus the seven encoder rows.
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 8);
  EXPECT_EQ(table.find("target,Approximation Rad."), 0u);

  const auto md = call({"report", (out / "report.json").string(), "--format", "markdown"});
  ASSERT_EQ(md.code, 0);
  for (const char* name : {"identity", "constant", "rotation", "duplicate", "redundancy", "product", "inverse"}) {
    EXPECT_NE(md.out.find(std::string("| ") + name), std::string::npos) << name;
  }
  const auto csv = call({"report", (out / "report.json").string(), "--format", "csv"});
  EXPECT_EQ(csv.out, table);
  EXPECT_EQ(call({"report", (out / "report.json").string(), "--format", "html"}).code, 1);

  // Records in the CSV agree with the structured report to 17 digits.
  const auto doc = dismetrics::load_report(out / "report.json");
  const auto records = dismetrics::parse_records_csv(slurp(out / "records.csv"));
  EXPECT_EQ(records, dismetrics::flatten(doc, doc.granularity));
}

TEST(Cli, PerComponentGranularity) {
  const auto r = call({"eval", "--encoder", "duplicate", "--granularity", "per_component",
                       "--metrics", "approximation,constancy"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Approximation Rad. 3"), std::string::npos);
  EXPECT_NE(r.out.find("duplicate,0.71,0.71,0.00,"), std::string::npos) << r.out;
}

TEST(Cli, ScaleReproducesTableMagnitudes) {
  const auto r = call({"eval", "--encoder", "constant", "--scale", "100", "--metrics",
                       "left_inverse,contraction", "--agg", "max"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("constant,,,,,,86.60,,,173.21,"), std::string::npos) << r.out;
}

TEST(Cli, ConfigFileAndFlagPrecedence) {
  const fs::path dir = scratch("config");
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "run.json");
    cfg << R"({"encoders": ["constant"], "metrics": ["contraction"], "agg": ["max"],
               "scale": 100, "format": "csv"})";
  }
  auto r = call({"eval", "--config", (dir / "run.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("173.21"), std::string::npos);
  r = call({"eval", "--config", (dir / "run.json").string(), "--scale", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("1.73"), std::string::npos);
  {
    std::ofstream cfg(dir / "bad.json");
    cfg << R"({"colour": "blue"})";
  }
  EXPECT_EQ(call({"eval", "--config", (dir / "bad.json").string()}).code, 1);
}

TEST(Cli, EvalOnSavedDataset) {
  const fs::path data = scratch("saved");
  ASSERT_EQ(call({"synth", "--encoder", "rotation", "--seed", "2", "--out", data.string()}).code, 0);
  const auto r = call({"eval", "--data", data.string(), "--metrics", "contraction", "--agg", "max,mean"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("rotation,,,,,,,,,0.00,0.00"), std::string::npos) << r.out;
}
