#include "dismetrics/premetric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dismetrics/error.hpp"

namespace dismetrics {

namespace {

constexpr std::size_t kMaxReportedViolations = 8;

void note_violation(PremetricLawReport& report, const std::string& what) {
  if (report.violations.size() < kMaxReportedViolations) {
    report.violations.push_back(what);
  }
}

bool same_inputs(const SampledFunction& f, const SampledFunction& g) {
  return f.inputs().rows() == g.inputs().rows() &&
         f.inputs().cols() == g.inputs().cols() && f.inputs() == g.inputs();
}

// max_a ||f(a) - g(a)|| on a shared input list.
double sup_distance(const SampledFunction& f, const SampledFunction& g) {
  double best = 0.0;
  for (Eigen::Index r = 0; r < f.size(); ++r) {
    best = std::max(best, euclidean(f.outputs().row(r), g.outputs().row(r)));
  }
  return best;
}

}  // namespace

QValue point_distance(const PointDistance& d, const Eigen::Ref<const Point>& a,
                      const Eigen::Ref<const Point>& b) {
  const auto dim = static_cast<Eigen::Index>(d.dimension);
  if (a.size() != dim || b.size() != dim) {
    std::ostringstream os;
    os << "point_distance: expected dimension " << d.dimension << ", got " << a.size()
       << " and " << b.size();
    throw InvalidArgument(os.str());
  }
  switch (d.kind) {
    case PointDistance::Kind::euclidean:
      return QValue(euclidean(a, b));
    case PointDistance::Kind::discrete:
      return QValue(a == b ? 0.0 : 1.0);
  }
  return QValue::top();
}

std::string_view to_string(Aggregator agg) noexcept {
  switch (agg) {
    case Aggregator::max: return "max";
    case Aggregator::mean: return "mean";
    case Aggregator::sum: return "sum";
    case Aggregator::median: return "median";
    case Aggregator::second_moment: return "second_moment";
  }
  return "?";
}

Aggregator parse_aggregator(std::string_view name) {
  for (auto agg : {Aggregator::max, Aggregator::mean, Aggregator::sum, Aggregator::median,
                   Aggregator::second_moment}) {
    if (to_string(agg) == name) return agg;
  }
  throw InvalidArgument("unknown aggregator '" + std::string(name) + "'");
}

double aggregate(Aggregator agg, std::span<const double> values) {
  if (values.empty()) return 0.0;
  switch (agg) {
    case Aggregator::max:
      return *std::max_element(values.begin(), values.end());
    case Aggregator::sum: {
      double s = 0.0;
      for (double v : values) s += v;
      return s;
    }
    case Aggregator::mean: {
      double s = 0.0;
      for (double v : values) s += v;
      return s / static_cast<double>(values.size());
    }
    case Aggregator::second_moment: {
      double s = 0.0;
      for (double v : values) s += v * v;
      return s / static_cast<double>(values.size());
    }
    case Aggregator::median: {
      std::vector<double> copy(values.begin(), values.end());
      const auto mid = copy.begin() + static_cast<std::ptrdiff_t>((copy.size() - 1) / 2);
      std::nth_element(copy.begin(), mid, copy.end());
      return *mid;
    }
  }
  return 0.0;
}

QValue aggregate_q(Aggregator agg, std::span<const double> values) {
  return QValue(aggregate(agg, values));
}

SampledFunction::SampledFunction(PointSet inputs, PointSet outputs)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)) {
  if (inputs_.rows() != outputs_.rows()) {
    throw InvalidArgument("SampledFunction: input and output counts differ");
  }
  for (Eigen::Index i = 0; i < inputs_.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < inputs_.rows(); ++j) {
      if (inputs_.row(i) == inputs_.row(j)) {
        throw InvalidArgument("SampledFunction: duplicate input at rows " +
                              std::to_string(i) + " and " + std::to_string(j));
      }
    }
  }
}

std::optional<Eigen::Index> SampledFunction::find(const Eigen::Ref<const Point>& x) const {
  if (x.size() != inputs_.cols()) return std::nullopt;
  for (Eigen::Index r = 0; r < inputs_.rows(); ++r) {
    if (inputs_.row(r) == x.transpose()) return r;
  }
  return std::nullopt;
}

Point SampledFunction::operator()(const Eigen::Ref<const Point>& x) const {
  const auto row = find(x);
  if (!row) throw InvalidArgument("SampledFunction: point is not in the sampled domain");
  return outputs_.row(*row).transpose();
}

QValue induced_function_distance(const PointDistance& d, Aggregator agg,
                                 const SampledFunction& f, const SampledFunction& g) {
  if (!same_inputs(f, g)) {
    throw InvalidArgument("induced_function_distance: functions sampled on different inputs");
  }
  std::vector<double> pointwise;
  pointwise.reserve(static_cast<std::size_t>(f.size()));
  for (Eigen::Index r = 0; r < f.size(); ++r) {
    pointwise.push_back(
        point_distance(d, f.outputs().row(r).transpose(), g.outputs().row(r).transpose())
            .value());
  }
  return aggregate_q(agg, pointwise);
}

PremetricLawReport check_premetric_laws(const DistanceFn& d, const PointSet& points,
                                        double tolerance) {
  PremetricLawReport report;
  const Eigen::Index n = points.rows();
  Eigen::MatrixXd table(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      table(i, j) = d(points.row(i).transpose(), points.row(j).transpose());
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (table(i, i) != 0.0) {
      report.indiscernibility_of_identicals = false;
      note_violation(report, "d(x" + std::to_string(i) + ", x" + std::to_string(i) + ") != 0");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(table(i, j) - table(j, i)) > tolerance) {
        report.symmetry = false;
        note_violation(report, "asymmetric pair (" + std::to_string(i) + ", " +
                                   std::to_string(j) + ")");
      }
      if (i != j && table(i, j) == 0.0 && points.row(i) != points.row(j)) {
        report.identity_of_indiscernibles = false;
        note_violation(report, "distinct points at distance 0 (" + std::to_string(i) + ", " +
                                   std::to_string(j) + ")");
      }
      for (Eigen::Index k = 0; k < n; ++k) {
        const double direct = table(i, k);
        const double detour = table(i, j) + table(j, k);
        if (direct > detour + tolerance * std::max(1.0, detour)) {
          report.triangle = false;
          std::ostringstream os;
          os << "triangle (" << i << ", " << j << ", " << k << "): " << direct << " > "
             << detour;
          note_violation(report, os.str());
        }
      }
    }
  }
  return report;
}

PremetricLawReport check_premetric_laws(const PointDistance& d, const PointSet& points,
                                        double tolerance) {
  return check_premetric_laws(
      [&d](const Eigen::Ref<const Point>& a, const Eigen::Ref<const Point>& b) {
        return point_distance(d, a, b).value();
      },
      points, tolerance);
}

double empirical_lipschitz(const SampledFunction& g) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    for (Eigen::Index j = i + 1; j < g.size(); ++j) {
      const double dx = euclidean(g.inputs().row(i), g.inputs().row(j));
      const double dy = euclidean(g.outputs().row(i), g.outputs().row(j));
      worst = std::max(worst, dy / dx);  // dx > 0: inputs are distinct
    }
  }
  return worst;
}

InequalityCheck check_composition_inequality(const SampledFunction& f,
                                             const SampledFunction& f_prime,
                                             const SampledFunction& g,
                                             const SampledFunction& g_prime,
                                             const PointDistance& d, double tolerance) {
  if (!same_inputs(f, f_prime)) {
    throw InvalidArgument("check_composition_inequality: f and f' sampled on different inputs");
  }
  if (!same_inputs(g, g_prime)) {
    throw InvalidArgument("check_composition_inequality: g and g' sampled on different inputs");
  }
  // Every intermediate value must be a sampled input of the outer maps.
  const auto n = f.size();
  PointSet gf(n, g.outputs().cols());
  PointSet gf_prime(n, g.outputs().cols());
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto via = g.find(f.outputs().row(r).transpose());
    const auto via_prime = g.find(f_prime.outputs().row(r).transpose());
    if (!via || !via_prime) {
      throw InvalidArgument("check_composition_inequality: f or f' leaves the sampled domain of g");
    }
    gf.row(r) = g.outputs().row(*via);
    gf_prime.row(r) = g_prime.outputs().row(*via_prime);
  }

  InequalityCheck check;
  const double lip = std::max(empirical_lipschitz(g), empirical_lipschitz(g_prime));
  if (lip > 1.0 + tolerance) {
    check.precondition_met = false;
    check.note = "outer map is not nonexpansive on the sample (Lipschitz " +
                 std::to_string(lip) + ")";
  }
  const SampledFunction composed(f.inputs(), gf);
  const SampledFunction composed_prime(f.inputs(), gf_prime);
  check.lhs = induced_function_distance(d, Aggregator::max, composed, composed_prime).value();
  check.rhs = induced_function_distance(PointDistance::euclidean(g.outputs().cols()),
                                        Aggregator::max, g, g_prime)
                  .value() +
              induced_function_distance(PointDistance::euclidean(f.outputs().cols()),
                                        Aggregator::max, f, f_prime)
                  .value();
  check.holds = check.lhs <= check.rhs + tolerance * std::max(1.0, check.rhs);
  return check;
}

InequalityCheck check_product_inequality(const SampledFunction& f,
                                         const SampledFunction& f_prime,
                                         const SampledFunction& h,
                                         const SampledFunction& h_prime, double tolerance) {
  if (!same_inputs(f, f_prime) || f.outputs().cols() != f_prime.outputs().cols()) {
    throw InvalidArgument("check_product_inequality: f and f' samples do not match");
  }
  if (!same_inputs(h, h_prime) || h.outputs().cols() != h_prime.outputs().cols()) {
    throw InvalidArgument("check_product_inequality: h and h' samples do not match");
  }
  InequalityCheck check;
  for (Eigen::Index a = 0; a < f.size(); ++a) {
    const double df = (f.outputs().row(a) - f_prime.outputs().row(a)).squaredNorm();
    for (Eigen::Index c = 0; c < h.size(); ++c) {
      const double dh = (h.outputs().row(c) - h_prime.outputs().row(c)).squaredNorm();
      check.lhs = std::max(check.lhs, std::sqrt(df + dh));
    }
  }
  check.rhs = sup_distance(f, f_prime) + sup_distance(h, h_prime);
  check.holds = check.lhs <= check.rhs + tolerance * std::max(1.0, check.rhs);
  return check;
}

}  // namespace dismetrics
