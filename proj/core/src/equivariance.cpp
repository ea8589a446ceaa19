#include <string>
#include <vector>

#include "dismetrics/error.hpp"
#include "dismetrics/metrics.hpp"

namespace dismetrics {

FiniteAction FiniteAction::identity(std::size_t grid_size, std::size_t elements) {
  FiniteAction action;
  std::vector<std::size_t> ids(grid_size);
  for (std::size_t k = 0; k < grid_size; ++k) ids[k] = k;
  for (std::size_t a = 0; a < elements; ++a) {
    action.on_factors.push_back(ids);
    action.on_codes.emplace_back([](const Eigen::Ref<const Point>& z) { return Point(z); });
  }
  return action;
}

QValue equivariance_metric(const CodeTable& table, const FiniteAction& action, Aggregator agg_a,
                           Aggregator agg_y) {
  if (action.on_factors.size() != action.on_codes.size()) {
    throw InvalidArgument("equivariance_metric: factor and code actions list " +
                          std::to_string(action.on_factors.size()) + " and " +
                          std::to_string(action.on_codes.size()) + " elements");
  }
  const std::size_t n = table.grid().size();
  for (std::size_t a = 0; a < action.size(); ++a) {
    const auto& map = action.on_factors[a];
    if (map.size() != n) {
      throw InvalidArgument("equivariance_metric: element " + std::to_string(a) + " maps " +
                            std::to_string(map.size()) + " grid points, expected " +
                            std::to_string(n));
    }
    for (std::size_t target : map) {
      if (target >= n) {
        throw InvalidArgument("equivariance_metric: element " + std::to_string(a) +
                              " sends a point to index " + std::to_string(target) +
                              " outside the grid");
      }
    }
    if (!action.on_codes[a]) {
      throw InvalidArgument("equivariance_metric: element " + std::to_string(a) +
                            " has no code action");
    }
  }

  const PointSet& codes = table.codes();
  std::vector<double> per_element;
  per_element.reserve(action.size());
  std::vector<double> per_point(n);
  for (std::size_t a = 0; a < action.size(); ++a) {
    for (std::size_t y = 0; y < n; ++y) {
      const Point acted = action.on_codes[a](codes.row(static_cast<Eigen::Index>(y)).transpose());
      if (acted.size() != codes.cols()) {
        throw InvalidArgument("equivariance_metric: code action of element " + std::to_string(a) +
                              " changes the code width");
      }
      const auto moved = static_cast<Eigen::Index>(action.on_factors[a][y]);
      per_point[y] = euclidean(codes.row(moved).transpose(), acted);
    }
    per_element.push_back(aggregate(agg_y, per_point));
  }
  return aggregate_q(agg_a, per_element);
}

}  // namespace dismetrics
