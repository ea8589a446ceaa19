#include <Eigen/QR>
#include <algorithm>
#include <list>
#include <numeric>
#include <random>
#include <vector>

#include "dismetrics/solvers.hpp"

namespace dismetrics {

namespace {

// Ball with radius < 0 represents the empty ball that contains nothing.
struct RawBall {
  Point center;
  double radius = -1.0;
};

RawBall circumball(const PointSet& points, const std::vector<Eigen::Index>& support) {
  RawBall ball;
  if (support.empty()) {
    ball.center = Point::Zero(points.cols());
    return ball;
  }
  const Point origin = points.row(support.front()).transpose();
  if (support.size() == 1) {
    ball.center = origin;
    ball.radius = 0.0;
    return ball;
  }
  // c = origin + Q lambda with 2 Q'Q lambda = diag(Q'Q): equidistant from all
  // support points and inside their affine hull.
  const auto k = static_cast<Eigen::Index>(support.size()) - 1;
  Eigen::MatrixXd q(points.cols(), k);
  for (Eigen::Index j = 0; j < k; ++j) {
    q.col(j) = points.row(support[static_cast<std::size_t>(j + 1)]).transpose() - origin;
  }
  const Eigen::MatrixXd gram = q.transpose() * q;
  const Eigen::VectorXd rhs = 0.5 * gram.diagonal();
  const Eigen::VectorXd lambda = gram.completeOrthogonalDecomposition().solve(rhs);
  ball.center = origin + q * lambda;
  ball.radius = 0.0;
  for (const auto idx : support) {
    ball.radius = std::max(ball.radius, (points.row(idx).transpose() - ball.center).norm());
  }
  return ball;
}

bool outside(const RawBall& ball, const Eigen::Ref<const Point>& p) {
  if (ball.radius < 0.0) return true;
  const double dist = (p - ball.center).norm();
  return dist - ball.radius > 1e-13 * (1.0 + ball.radius);
}

class MoveToFront {
 public:
  explicit MoveToFront(const PointSet& points, std::list<Eigen::Index> order)
      : points_(points), order_(std::move(order)) {}

  RawBall run() { return solve(order_.end()); }

 private:
  // Smallest ball enclosing the points before `end` with support_ on its
  // boundary.
  RawBall solve(std::list<Eigen::Index>::iterator end) {
    RawBall ball = circumball(points_, support_);
    if (static_cast<Eigen::Index>(support_.size()) == points_.cols() + 1) return ball;
    for (auto it = order_.begin(); it != end;) {
      const auto current = it++;
      if (!outside(ball, points_.row(*current).transpose())) continue;
      support_.push_back(*current);
      ball = solve(current);
      support_.pop_back();
      order_.splice(order_.begin(), order_, current);
    }
    return ball;
  }

  const PointSet& points_;
  std::list<Eigen::Index> order_;
  std::vector<Eigen::Index> support_;
};

}  // namespace

Ball circumscribed_ball(const PointSet& support) {
  if (support.rows() == 0) throw InvalidArgument("circumscribed_ball: empty support");
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(support.rows()));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  RawBall raw = circumball(support, idx);
  return {std::move(raw.center), QValue(raw.radius)};
}

Ball smallest_enclosing_ball(const PointSet& points, std::uint64_t shuffle_seed) {
  if (points.rows() == 0) throw InvalidArgument("smallest_enclosing_ball: empty point set");
  if (points.cols() > kMaxBallDimension) {
    throw InvalidArgument("smallest_enclosing_ball: dimension exceeds 16");
  }
  if (!points.allFinite()) throw InvalidArgument("smallest_enclosing_ball: non-finite input");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(points.rows()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::mt19937_64 rng(shuffle_seed);
  std::shuffle(order.begin(), order.end(), rng);

  MoveToFront mtf(points, std::list<Eigen::Index>(order.begin(), order.end()));
  RawBall raw = mtf.run();

  double radius = 0.0;
  for (Eigen::Index r = 0; r < points.rows(); ++r) {
    radius = std::max(radius, (points.row(r).transpose() - raw.center).norm());
  }
  return {std::move(raw.center), QValue(radius)};
}

}  // namespace dismetrics
