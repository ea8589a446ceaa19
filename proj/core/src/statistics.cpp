#include <algorithm>

#include "dismetrics/solvers.hpp"

namespace dismetrics {

namespace {

void require_nonempty(const PointSet& points, const char* who) {
  if (points.rows() == 0) throw InvalidArgument(std::string(who) + ": empty point set");
}

}  // namespace

MeanVariance mean_and_variance(const PointSet& points) {
  require_nonempty(points, "mean_and_variance");
  // Shifting by the first point keeps identical inputs exact.
  const Eigen::RowVectorXd origin = points.row(0);
  const Eigen::MatrixXd shifted = points.rowwise() - origin;
  const Eigen::RowVectorXd offset = shifted.colwise().mean();
  const double variance = (shifted.rowwise() - offset).rowwise().squaredNorm().mean();
  return {(origin + offset).transpose(), QValue(variance)};
}

QValue diameter(const PointSet& points) {
  require_nonempty(points, "diameter");
  double best = 0.0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < points.rows(); ++j) {
      best = std::max(best, (points.row(i) - points.row(j)).squaredNorm());
    }
  }
  return QValue(std::sqrt(best));
}

QValue mean_pairwise_distance(const PointSet& points) {
  require_nonempty(points, "mean_pairwise_distance");
  const Eigen::Index n = points.rows();
  if (n < 2) return QValue::top();
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) total += (points.row(i) - points.row(j)).norm();
  }
  return QValue(total / (0.5 * static_cast<double>(n) * static_cast<double>(n - 1)));
}

QValue mean_ordered_pairwise_squared(const PointSet& points) {
  require_nonempty(points, "mean_ordered_pairwise_squared");
  const Eigen::Index n = points.rows();
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) total += (points.row(i) - points.row(j)).squaredNorm();
  }
  return QValue(total / (static_cast<double>(n) * static_cast<double>(n)));
}

}  // namespace dismetrics
