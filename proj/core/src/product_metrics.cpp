#include <string>
#include <vector>

#include "dismetrics/error.hpp"
#include "dismetrics/metrics.hpp"

namespace dismetrics {

namespace {

struct SliceFit {
  Point center;
  double deviation = 0.0;
};

SliceFit fit_slice(const PointSet& codes, Aggregator inner) {
  switch (inner) {
    case Aggregator::max: {
      Ball ball = smallest_enclosing_ball(codes);
      return {std::move(ball.center), ball.radius.value()};
    }
    case Aggregator::mean: {
      GeometricMedian gm = geometric_median(codes);
      return {std::move(gm.center), gm.mad.value()};
    }
    case Aggregator::second_moment: {
      MeanVariance mv = mean_and_variance(codes);
      return {std::move(mv.mean), mv.variance.value()};
    }
    default:
      break;
  }
  throw InvalidArgument("product_via_approximation: inner aggregator must be max, mean or "
                        "second_moment, got " + std::string(to_string(inner)));
}

std::string slice_context(const FactorGrid& grid, std::size_t i, std::size_t v) {
  return " (factor " + grid.factor(i).name + ", value index " + std::to_string(v) + ")";
}

void finish(MetricReport& report, Aggregator outer) {
  std::vector<double> comps;
  for (QValue q : report.per_component) comps.push_back(q.value());
  report.outer = outer;
  report.overall = aggregate_q(outer, comps);
}

}  // namespace

ProductApproximation product_via_approximation(const CodeTable& table, Aggregator inner,
                                               Aggregator outer, const EvalOptions& options) {
  const FactorGrid& grid = table.grid();
  const std::size_t n = grid.num_factors();

  // One job per (factor, value) slice.
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  std::vector<std::size_t> first_job(n);
  for (std::size_t i = 0; i < n; ++i) {
    first_job[i] = jobs.size();
    for (std::size_t v = 0; v < grid.factor(i).values.size(); ++v) jobs.emplace_back(i, v);
  }
  if (inner != Aggregator::max && inner != Aggregator::mean &&
      inner != Aggregator::second_moment) {
    fit_slice(PointSet(1, 1), inner);  // throws
  }

  std::vector<SliceFit> fits(jobs.size());
  parallel_for(jobs.size(), options.threads, [&](std::size_t k) {
    const auto [i, v] = jobs[k];
    const Slice slice = slice_fixing(grid, i, v);
    try {
      fits[k] = fit_slice(component_codes(table, i, slice.indices), inner);
    } catch (const SolverError& e) {
      throw SolverError(e.what() + slice_context(grid, i, v));
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(e.what() + slice_context(grid, i, v));
    }
  });

  ProductApproximation out;
  MetricReport& report = out.report;
  report.metric = MetricId::approximation;
  report.inner = std::string(to_string(inner));
  report.per_fixed_value.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> devs;
    for (std::size_t v = 0; v < grid.factor(i).values.size(); ++v) {
      const double d = fits[first_job[i] + v].deviation;
      devs.push_back(d);
      report.per_fixed_value[i].push_back(QValue(d));
    }
    report.per_component.push_back(aggregate_q(Aggregator::max, devs));
  }
  finish(report, outer);

  const char* solver = inner == Aggregator::max    ? "smallest_enclosing_ball"
                       : inner == Aggregator::mean ? "geometric_median"
                                                   : "mean_and_variance";
  report.metadata["solver"] = solver;
  if (inner == Aggregator::mean) {
    report.metadata["median_tolerance"] = "1e-12";
  }

  const CodePartition& part = table.partition();
  out.approximation.resize(table.codes().rows(), part.total_dim());
  for (std::size_t r = 0; r < grid.size(); ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t v = grid.coordinate(r, i);
      out.approximation.row(static_cast<Eigen::Index>(r))
          .segment(part.block_offset(i), part.block_dim(i)) =
          fits[first_job[i] + v].center.transpose();
    }
  }
  return out;
}

MetricReport product_via_constancy(const CodeTable& table, Aggregator pair_agg, Aggregator outer,
                                   const EvalOptions& options) {
  if (pair_agg != Aggregator::max && pair_agg != Aggregator::mean) {
    throw InvalidArgument("product_via_constancy: pair aggregator must be max or mean, got " +
                          std::string(to_string(pair_agg)));
  }
  const FactorGrid& grid = table.grid();
  const std::size_t n = grid.num_factors();

  MetricReport report;
  report.metric = MetricId::constancy;
  report.inner = std::string(to_string(pair_agg));
  report.per_component.resize(n);
  report.per_fixed_value.resize(n);

  parallel_for(n, options.threads, [&](std::size_t i) {
    const std::size_t nv = grid.factor(i).values.size();
    // slices[v][c]: row of the grid point with factor i at value v and the
    // c-th complement assignment. Complement order is shared across v.
    std::vector<std::vector<std::size_t>> slices(nv);
    for (std::size_t v = 0; v < nv; ++v) slices[v] = slice_fixing(grid, i, v).indices;
    const std::size_t nc = slices.front().size();

    std::vector<double> pair_scores;
    pair_scores.reserve(nc * (nc - 1) / 2);
    std::vector<std::vector<double>> slice_scores(nv);
    for (auto& s : slice_scores) s.reserve(nc * (nc - 1) / 2);
    for (std::size_t c = 0; c < nc; ++c) {
      for (std::size_t c2 = c + 1; c2 < nc; ++c2) {
        double worst = 0.0;
        for (std::size_t v = 0; v < nv; ++v) {
          const double d = euclidean(table.component(slices[v][c], i),
                                     table.component(slices[v][c2], i));
          slice_scores[v].push_back(d);
          worst = std::max(worst, d);
        }
        pair_scores.push_back(worst);
      }
    }
    report.per_component[i] = aggregate_q(pair_agg, pair_scores);
    for (std::size_t v = 0; v < nv; ++v) {
      report.per_fixed_value[i].push_back(aggregate_q(pair_agg, slice_scores[v]));
    }
  });
  finish(report, outer);
  report.metadata["pairs"] = "unordered, no self-pairs";
  return report;
}

QValue constancy(const PointSet& points, ConstancyMethod method, Aggregator agg) {
  if (points.rows() == 0) throw InvalidArgument("constancy: empty point set");
  if (method == ConstancyMethod::centroid) {
    switch (agg) {
      case Aggregator::max:
        return smallest_enclosing_ball(points).radius;
      case Aggregator::mean:
        return geometric_median(points).mad;
      case Aggregator::second_moment:
        return mean_and_variance(points).variance;
      default:
        break;
    }
  } else {
    switch (agg) {
      case Aggregator::max:
        return diameter(points);
      case Aggregator::mean:
        return mean_pairwise_distance(points);
      case Aggregator::second_moment:
        return mean_ordered_pairwise_squared(points);
      default:
        break;
    }
  }
  throw InvalidArgument("constancy: aggregator must be max, mean or second_moment, got " +
                        std::string(to_string(agg)));
}

}  // namespace dismetrics
