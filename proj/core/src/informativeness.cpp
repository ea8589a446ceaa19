#include <algorithm>
#include <string>
#include <vector>

#include "dismetrics/error.hpp"
#include "dismetrics/metrics.hpp"
#include "dismetrics/dataset_io.hpp"

namespace dismetrics {

namespace {

std::string number(double v) { return format_double(v); }

struct PairPartial {
  double max = 0.0;
  double sum = 0.0;
  std::size_t count = 0;
};

QValue reduce(const std::vector<PairPartial>& partials, Aggregator agg) {
  PairPartial total;
  for (const PairPartial& p : partials) {
    total.max = std::max(total.max, p.max);
    total.sum += p.sum;
    total.count += p.count;
  }
  if (agg == Aggregator::max) return QValue(total.max);
  return QValue(total.count == 0 ? 0.0 : total.sum / static_cast<double>(total.count));
}

}  // namespace

LeftInverse left_inverse_metric(const CodeTable& table, FitObjective objective,
                                bool constrain_linear, const AffineFitOptions& fit_options) {
  AffineFitOptions opts = fit_options;
  opts.fit_offset = !constrain_linear;
  const PointSet targets = table.grid().points();
  AffineFit fit = affine_fit(table.codes(), targets, objective, opts);

  LeftInverse out;
  out.report.metric = MetricId::left_inverse;
  out.report.inner = std::string(to_string(objective));
  out.report.overall = fit.objective;
  out.report.metadata["offset"] = constrain_linear ? "fixed at 0" : "fitted";
  out.report.metadata["iterations"] = std::to_string(fit.iterations);
  if (objective == FitObjective::minimax) {
    out.report.metadata["minimax_gap"] = number(opts.minimax_gap);
  } else if (objective == FitObjective::least_abs) {
    out.report.metadata["irls_tolerance"] = number(opts.irls_tolerance);
  }
  out.map = std::move(fit.map);
  return out;
}

MetricReport contraction_metric(const CodeTable& table, Aggregator agg, ContractionScope scope,
                                Aggregator outer, const EvalOptions& options) {
  if (agg != Aggregator::max && agg != Aggregator::mean) {
    throw InvalidArgument("contraction_metric: aggregator must be max or mean, got " +
                          std::string(to_string(agg)));
  }
  const FactorGrid& grid = table.grid();
  const PointSet ys = grid.points();
  const PointSet& zs = table.codes();
  const auto n_rows = static_cast<std::size_t>(ys.rows());

  MetricReport report;
  report.metric = MetricId::contraction;
  report.inner = std::string(to_string(agg));

  if (scope == ContractionScope::whole) {
    std::vector<PairPartial> partials(n_rows);
    parallel_for(n_rows, options.threads, [&](std::size_t r) {
      PairPartial& p = partials[r];
      const auto a = static_cast<Eigen::Index>(r);
      for (Eigen::Index b = a + 1; b < ys.rows(); ++b) {
        const QValue dy(euclidean(ys.row(a), ys.row(b)));
        const QValue dz(euclidean(zs.row(a), zs.row(b)));
        const double c = hom(dz, dy).value();
        p.max = std::max(p.max, c);
        p.sum += c;
        ++p.count;
      }
    });
    report.overall = reduce(partials, agg);
  } else {
    const std::size_t n = grid.num_factors();
    if (table.partition().num_blocks() != n) {
      throw InvalidArgument("contraction_metric: per-component scope needs one code block per factor");
    }
    report.per_component.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Factor& f = grid.factor(i);
      const std::size_t nv = f.values.size();
      std::vector<std::vector<std::size_t>> slices(nv);
      for (std::size_t v = 0; v < nv; ++v) slices[v] = slice_fixing(grid, i, v).indices;
      const std::size_t nc = slices.front().size();

      std::vector<PairPartial> partials(nc);
      parallel_for(nc, options.threads, [&](std::size_t c) {
        PairPartial& p = partials[c];
        for (std::size_t v = 0; v < nv; ++v) {
          for (std::size_t w = v + 1; w < nv; ++w) {
            const QValue dy(euclidean(f.values[v], f.values[w]));
            const QValue dz(euclidean(table.component(slices[v][c], i),
                                      table.component(slices[w][c], i)));
            const double d = hom(dz, dy).value();
            p.max = std::max(p.max, d);
            p.sum += d;
            ++p.count;
          }
        }
      });
      report.per_component[i] = reduce(partials, agg);
    }
    std::vector<double> comps;
    for (QValue q : report.per_component) comps.push_back(q.value());
    report.outer = outer;
    report.overall = aggregate_q(outer, comps);
  }

  report.metadata["pairs"] = scope == ContractionScope::whole
                                 ? "unordered grid pairs, no self-pairs"
                                 : "unordered pairs differing in one factor";
  report.metadata["factor_diameter"] = number(diameter(ys).value());
  report.metadata["code_diameter"] = number(diameter(zs).value());
  return report;
}

}  // namespace dismetrics
