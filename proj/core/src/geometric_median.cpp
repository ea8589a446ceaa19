#include <cmath>

#include "dismetrics/solvers.hpp"

namespace dismetrics {

double mean_distance(const PointSet& points, const Eigen::Ref<const Point>& center) {
  double total = 0.0;
  for (Eigen::Index r = 0; r < points.rows(); ++r) {
    total += (points.row(r).transpose() - center).norm();
  }
  return total / static_cast<double>(points.rows());
}

GeometricMedian geometric_median(const PointSet& points, const GeometricMedianOptions& options) {
  if (points.rows() == 0) throw InvalidArgument("geometric_median: empty point set");
  if (!points.allFinite()) throw InvalidArgument("geometric_median: non-finite input");

  const Eigen::Index n = points.rows();
  const Point first = points.row(0).transpose();
  bool all_equal = true;
  for (Eigen::Index r = 1; r < n && all_equal; ++r) all_equal = points.row(r) == points.row(0);
  if (all_equal) return {first, QValue::top(), 0};

  const double scale = (points.rowwise() - points.colwise().mean()).cwiseAbs().maxCoeff();
  const double coincide = 1e-14 * (1.0 + scale);

  Point x = points.colwise().mean().transpose();
  Point best = x;
  double best_value = mean_distance(points, x);
  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    Point weighted_sum = Point::Zero(points.cols());
    Point pull = Point::Zero(points.cols());  // sum of unit vectors toward the inputs
    double weight_total = 0.0;
    double coincident = 0.0;
    for (Eigen::Index r = 0; r < n; ++r) {
      const Point diff = points.row(r).transpose() - x;
      const double dist = diff.norm();
      if (dist <= coincide) {
        coincident += 1.0;
        continue;
      }
      weighted_sum += points.row(r).transpose() / dist;
      pull += diff / dist;
      weight_total += 1.0 / dist;
    }
    if (weight_total == 0.0) break;  // every input coincides with x
    const Point weiszfeld = weighted_sum / weight_total;
    Point next;
    if (coincident == 0.0) {
      next = weiszfeld;
    } else {
      // x sits on an input: it is optimal iff the pull of the others does
      // not exceed the coincident mass (Vardi-Zhang).
      const double pull_norm = pull.norm();
      if (pull_norm <= coincident) break;
      const double ratio = coincident / pull_norm;
      next = (1.0 - ratio) * weiszfeld + ratio * x;
    }
    const double step = (next - x).norm();
    x = std::move(next);
    const double value = mean_distance(points, x);
    if (value < best_value) {
      best_value = value;
      best = x;
    }
    if (step <= options.tolerance * (1.0 + scale)) {
      ++iter;
      break;
    }
  }
  // The median is attained at an input whenever one of them has the optimal
  // objective; checking them covers slow convergence toward a vertex.
  for (Eigen::Index r = 0; r < n; ++r) {
    const double value = mean_distance(points, points.row(r).transpose());
    if (value < best_value) {
      best_value = value;
      best = points.row(r).transpose();
    }
  }
  return {std::move(best), QValue(best_value), iter};
}

}  // namespace dismetrics
