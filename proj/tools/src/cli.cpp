#include "dismetrics_cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "dismetrics/dataset_io.hpp"
#include "dismetrics/error.hpp"
#include "dismetrics/metrics.hpp"
#include "dismetrics/report.hpp"
#include "dismetrics/synth.hpp"

namespace dismetrics::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Raised for bad flag or config values; maps to exit code 1.
struct UsageError : Error {
  using Error::Error;
};

struct RunConfig {
  std::vector<std::string> data;
  std::vector<std::string> encoders{"all"};
  std::uint64_t seed = 0;
  double scale = 1.0;
  std::vector<std::string> metrics{"approximation", "constancy", "left_inverse", "contraction"};
  std::vector<std::string> aggs{"max", "mean", "second_moment"};
  std::string granularity = "overall";
  std::string format = "csv";
  std::string out;
  AffineFitOptions fit;
  unsigned threads = 0;
};

// Flag values as parsed; unset flags leave the config untouched.
struct Flags {
  std::string config;
  std::vector<std::string> data;
  std::string encoder;
  std::optional<std::uint64_t> seed;
  std::optional<double> scale;
  std::optional<std::string> metrics;
  std::optional<std::string> aggs;
  std::optional<std::string> granularity;
  std::optional<std::string> format;
  std::string out;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::vector<std::string> string_list(const json& j, const char* key) {
  if (j.is_string()) return split_list(j.get<std::string>());
  if (!j.is_array()) throw UsageError(std::string("config: '") + key + "' must be a list");
  std::vector<std::string> out;
  for (const auto& v : j) out.push_back(v.get<std::string>());
  return out;
}

RunConfig load_config(const std::string& path) {
  RunConfig cfg;
  if (path.empty()) return cfg;
  std::ifstream in(path);
  if (!in) throw DatasetError(DatasetError::Kind::io, "cannot read config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("config " + path + ": " + e.what());
  }
  if (!j.is_object()) throw UsageError("config " + path + ": expected an object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "data") {
        cfg.data = string_list(value, "data");
      } else if (key == "encoder" || key == "encoders") {
        cfg.encoders = string_list(value, "encoders");
      } else if (key == "seed") {
        cfg.seed = value.get<std::uint64_t>();
      } else if (key == "scale") {
        cfg.scale = value.get<double>();
      } else if (key == "metrics") {
        cfg.metrics = string_list(value, "metrics");
      } else if (key == "agg") {
        cfg.aggs = string_list(value, "agg");
      } else if (key == "granularity") {
        cfg.granularity = value.get<std::string>();
      } else if (key == "format") {
        cfg.format = value.get<std::string>();
      } else if (key == "out") {
        cfg.out = value.get<std::string>();
      } else if (key == "threads") {
        cfg.threads = value.get<unsigned>();
      } else if (key == "solver") {
        for (const auto& [k, v] : value.items()) {
          if (k == "minimax_gap") {
            cfg.fit.minimax_gap = v.get<double>();
          } else if (k == "minimax_max_rounds") {
            cfg.fit.minimax_max_rounds = v.get<int>();
          } else if (k == "irls_tolerance") {
            cfg.fit.irls_tolerance = v.get<double>();
          } else if (k == "irls_max_iterations") {
            cfg.fit.irls_max_iterations = v.get<int>();
          } else {
            throw UsageError("config: unknown solver setting '" + k + "'");
          }
        }
      } else {
        throw UsageError("config: unknown key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw UsageError("config " + path + ": " + e.what());
  }
  return cfg;
}

RunConfig resolve(const Flags& flags) {
  RunConfig cfg = load_config(flags.config);
  if (!flags.data.empty()) cfg.data = flags.data;
  if (!flags.encoder.empty()) cfg.encoders = split_list(flags.encoder);
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.scale) cfg.scale = *flags.scale;
  if (flags.metrics) cfg.metrics = split_list(*flags.metrics);
  if (flags.aggs) cfg.aggs = split_list(*flags.aggs);
  if (flags.granularity) cfg.granularity = *flags.granularity;
  if (flags.format) cfg.format = *flags.format;
  if (!flags.out.empty()) cfg.out = flags.out;
  if (const char* env = std::getenv("DISMETRICS_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (*end != '\0') throw UsageError(std::string("DISMETRICS_THREADS: not a number: ") + env);
    cfg.threads = static_cast<unsigned>(v);
  }
  return cfg;
}

std::vector<EncoderKind> encoder_list(const RunConfig& cfg) {
  if (cfg.encoders.empty()) throw UsageError("no encoder given");
  std::vector<EncoderKind> out;
  for (const std::string& name : cfg.encoders) {
    if (name == "all") {
      out.insert(out.end(), all_encoders().begin(), all_encoders().end());
    } else {
      try {
        out.push_back(parse_encoder(name));
      } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
      }
    }
  }
  return out;
}

Generator make_generator(const RunConfig& cfg) {
  GeneratorSpec spec;
  spec.seed = cfg.seed;
  spec.scale = cfg.scale;
  try {
    return Generator(spec);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
}

void add_common(CLI::App& cmd, Flags& f) {
  cmd.add_option("--config", f.config, "JSON run configuration; flags override it");
  cmd.add_option("--seed", f.seed, "generator seed");
  cmd.add_option("--scale", f.scale, "factor and observation scale");
  cmd.add_option("--encoder", f.encoder, "encoder name, comma list, or 'all'");
  cmd.add_option("--out", f.out, "output path");
}

int cmd_synth(const Flags& flags, std::ostream& out) {
  const RunConfig cfg = resolve(flags);
  if (cfg.out.empty()) throw UsageError("synth: --out is required");
  const auto encoders = encoder_list(cfg);
  const Generator gen = make_generator(cfg);
  const bool single = encoders.size() == 1;
  for (EncoderKind kind : encoders) {
    const Dataset ds = encode(kind, gen);
    const fs::path dir = single ? fs::path(cfg.out) : fs::path(cfg.out) / std::string(to_string(kind));
    save_dataset(dir, ds);
    out << "wrote " << dir.string() << " (" << ds.table.codes().rows() << " rows)\n";
  }
  return kOk;
}

struct Target {
  std::string name;
  Dataset dataset;
};

bool has(std::initializer_list<Aggregator> allowed, Aggregator a) {
  for (Aggregator x : allowed) {
    if (x == a) return true;
  }
  return false;
}

std::vector<MetricReport> evaluate(const CodeTable& table, const std::vector<MetricId>& metrics,
                                   const std::vector<Aggregator>& aggs, const RunConfig& cfg) {
  const EvalOptions opts{cfg.threads};
  std::vector<MetricReport> out;
  for (MetricId id : metrics) {
    for (Aggregator agg : aggs) {
      const std::string where =
          std::string(to_string(id)) + "/" + std::string(to_string(agg));
      try {
        switch (id) {
          case MetricId::approximation:
            if (has({Aggregator::max, Aggregator::mean, Aggregator::second_moment}, agg)) {
              out.push_back(product_via_approximation(table, agg, Aggregator::max, opts).report);
            }
            break;
          case MetricId::constancy:
            if (has({Aggregator::max, Aggregator::mean}, agg)) {
              out.push_back(product_via_constancy(table, agg, Aggregator::max, opts));
            }
            break;
          case MetricId::left_inverse: {
            std::optional<FitObjective> obj;
            if (agg == Aggregator::max) obj = FitObjective::minimax;
            if (agg == Aggregator::mean) obj = FitObjective::least_abs;
            if (agg == Aggregator::second_moment) obj = FitObjective::least_squares;
            if (obj) out.push_back(left_inverse_metric(table, *obj, false, cfg.fit).report);
            break;
          }
          case MetricId::contraction:
            if (has({Aggregator::max, Aggregator::mean}, agg)) {
              out.push_back(
                  contraction_metric(table, agg, ContractionScope::whole, Aggregator::max, opts));
            }
            break;
          default:
            throw UsageError("metric '" + std::string(to_string(id)) +
                             "' needs an action or kernel and cannot run on a code table");
        }
      } catch (const SolverError& e) {
        throw SolverError(where + ": " + e.what());
      }
    }
  }
  return out;
}

int cmd_eval(const Flags& flags, std::ostream& out) {
  const RunConfig cfg = resolve(flags);
  std::vector<MetricId> metrics;
  std::vector<Aggregator> aggs;
  Granularity granularity{};
  TableFormat format{};
  try {
    for (const std::string& m : cfg.metrics) metrics.push_back(parse_metric(m));
    for (const std::string& a : cfg.aggs) aggs.push_back(parse_aggregator(a));
    granularity = parse_granularity(cfg.granularity);
    format = parse_table_format(cfg.format);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  if (metrics.empty()) throw UsageError("eval: at least one metric is required");
  if (aggs.empty()) throw UsageError("eval: at least one aggregator is required");

  std::vector<Target> targets;
  if (!cfg.data.empty()) {
    for (const std::string& path : cfg.data) {
      Dataset ds = load_dataset(path);
      std::string name = ds.provenance.id;
      if (name.empty()) name = fs::path(path).lexically_normal().filename().string();
      if (name.empty()) name = fs::path(path).lexically_normal().parent_path().filename().string();
      targets.push_back({name, std::move(ds)});
    }
  } else {
    const auto encoders = encoder_list(cfg);
    const Generator gen = make_generator(cfg);
    for (EncoderKind kind : encoders) {
      try {
        targets.push_back({std::string(to_string(kind)), encode(kind, gen)});
      } catch (const SolverError& e) {
        throw SolverError("synth/" + std::string(to_string(kind)) + ": " + e.what());
      }
    }
  }

  ReportDocument doc;
  doc.granularity = granularity;
  for (Target& t : targets) {
    TargetReport tr;
    tr.target = t.name;
    tr.provenance = t.dataset.provenance;
    try {
      tr.metrics = evaluate(t.dataset.table, metrics, aggs, cfg);
    } catch (const SolverError& e) {
      throw SolverError(t.name + ": " + e.what());
    }
    for (MetricReport& m : tr.metrics) {
      m.metadata["dataset"] = t.name;
      m.metadata["seed"] = std::to_string(t.dataset.provenance.seed);
    }
    if (tr.metrics.empty()) throw UsageError("eval: no metric accepts the given aggregators");
    doc.targets.push_back(std::move(tr));
  }

  const std::string table = render_table(doc, granularity, format);
  if (cfg.out.empty()) {
    out << table;
    return kOk;
  }
  const fs::path dir(cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  save_report(dir / "report.json", doc);
  auto write = [](const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    f << text;
    if (!f) throw DatasetError(DatasetError::Kind::io, "cannot write " + p.string());
  };
  write(dir / "records.csv", records_csv(flatten(doc, granularity)));
  write(dir / (format == TableFormat::csv ? "table.csv" : "table.md"), table);
  out << "wrote " << (dir / "report.json").string() << '\n';
  return kOk;
}

int cmd_report(const std::string& path, const Flags& flags, std::ostream& out) {
  ReportDocument doc = load_report(path);
  TableFormat format = TableFormat::markdown;
  Granularity granularity = doc.granularity;
  try {
    if (flags.format) format = parse_table_format(*flags.format);
    if (flags.granularity) granularity = parse_granularity(*flags.granularity);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  const std::string table = render_table(doc, granularity, format);
  if (flags.out.empty()) {
    out << table;
  } else {
    std::ofstream f(flags.out, std::ios::binary);
    f << table;
    if (!f) throw DatasetError(DatasetError::Kind::io, "cannot write " + flags.out);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Disentanglement metrics over sampled code tables", "dismetrics"};
  app.require_subcommand(1);

  Flags synth_flags;
  auto* synth = app.add_subcommand("synth", "write synthetic datasets");
  add_common(*synth, synth_flags);

  Flags eval_flags;
  auto* eval = app.add_subcommand("eval", "evaluate metrics on datasets");
  add_common(*eval, eval_flags);
  eval->add_option("--data", eval_flags.data, "dataset directory (repeatable)");
  eval->add_option("--metrics", eval_flags.metrics, "comma list of metrics");
  eval->add_option("--agg", eval_flags.aggs, "comma list of aggregators");
  eval->add_option("--granularity", eval_flags.granularity,
                   "overall | per_component | per_fixed_value");
  eval->add_option("--format", eval_flags.format, "csv | markdown");

  Flags report_flags;
  std::string report_path;
  auto* report = app.add_subcommand("report", "render a saved report");
  report->add_option("report", report_path, "report.json written by eval")->required();
  report->add_option("--format", report_flags.format, "csv | markdown");
  report->add_option("--granularity", report_flags.granularity,
                     "overall | per_component | per_fixed_value");
  report->add_option("--out", report_flags.out, "output file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*synth) return cmd_synth(synth_flags, out);
    if (*eval) return cmd_eval(eval_flags, out);
    return cmd_report(report_path, report_flags, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DatasetError& e) {
    err << "data error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kDataError;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << '\n';
    return kSolverError;
  } catch (const InvalidArgument& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
}

}  // namespace dismetrics::cli
