#pragma once

#include <Eigen/Core>

namespace dismetrics {

using Point = Eigen::VectorXd;
// A finite point cloud, one point per row.
using PointSet = Eigen::MatrixXd;

}  // namespace dismetrics
