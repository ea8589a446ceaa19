#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "dismetrics/linear_program.hpp"
#include "dismetrics/solvers.hpp"

namespace dismetrics {

namespace {

Eigen::MatrixXd design_matrix(const PointSet& xs, bool fit_offset) {
  Eigen::MatrixXd z(xs.rows(), xs.cols() + (fit_offset ? 1 : 0));
  z.leftCols(xs.cols()) = xs;
  if (fit_offset) z.col(xs.cols()).setOnes();
  return z;
}

// Coefficients W (M x K1) act on design rows z_i as W z_i.
AffineMap to_map(const Eigen::MatrixXd& w, Eigen::Index k, bool fit_offset) {
  AffineMap map;
  map.matrix = w.leftCols(k);
  map.offset = fit_offset ? Eigen::VectorXd(w.col(k)) : Eigen::VectorXd::Zero(w.rows());
  return map;
}

Eigen::VectorXd residual_norms(const Eigen::MatrixXd& z, const Eigen::MatrixXd& w,
                               const PointSet& ys) {
  return ((z * w.transpose()) - ys).rowwise().norm();
}

Eigen::MatrixXd least_squares_coefficients(const Eigen::MatrixXd& z, const PointSet& ys) {
  return z.completeOrthogonalDecomposition().solve(ys).transpose();
}

// Dual of  min t  s.t.  g_c' w - t <= h_c : one column [g_c; 1] with cost -h_c.
struct CutBuilder {
  Eigen::Index m_out;
  Eigen::Index k1;

  Eigen::Index vars() const { return m_out * k1; }

  void coordinate_bounds(const Eigen::MatrixXd& z, const PointSet& ys, Eigen::MatrixXd& cols,
                         Eigen::VectorXd& costs) const {
    const Eigen::Index n = z.rows();
    cols = Eigen::MatrixXd::Zero(vars() + 1, 2 * n * m_out);
    costs.resize(2 * n * m_out);
    Eigen::Index c = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < m_out; ++j) {
        for (const double s : {1.0, -1.0}) {
          cols.block(j * k1, c, k1, 1) = s * z.row(i).transpose();
          cols(vars(), c) = 1.0;
          costs(c) = -s * ys(i, j);
          ++c;
        }
      }
    }
  }

  void direction_cut(const Eigen::MatrixXd& z, const PointSet& ys, Eigen::Index sample,
                     const Eigen::VectorXd& unit, Eigen::Ref<Eigen::VectorXd> col,
                     double& cost) const {
    col.setZero();
    for (Eigen::Index j = 0; j < m_out; ++j) {
      col.segment(j * k1, k1) = unit(j) * z.row(sample).transpose();
    }
    col(vars()) = 1.0;
    cost = -unit.dot(ys.row(sample).transpose());
  }
};

AffineFit fit_minimax(const PointSet& xs, const PointSet& ys, const AffineFitOptions& options) {
  const Eigen::MatrixXd z = design_matrix(xs, options.fit_offset);
  const CutBuilder cuts{ys.cols(), z.cols()};
  const Eigen::Index q = cuts.vars();

  Eigen::MatrixXd cols;
  Eigen::VectorXd costs;
  cuts.coordinate_bounds(z, ys, cols, costs);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(q + 1);
  b(q) = 1.0;
  SimplexSolver lp(cols, b, costs);

  AffineFit best;
  double best_upper = std::numeric_limits<double>::infinity();
  const Eigen::Index max_new = std::max<Eigen::Index>(1, q + 1);
  for (int round = 0; round < options.minimax_max_rounds; ++round) {
    const LpStatus status = lp.solve();
    if (status != LpStatus::optimal) {
      throw SolverError(std::string("minimax affine fit: linear program ") + to_string(status));
    }
    const Eigen::VectorXd y = lp.duals();
    Eigen::MatrixXd w(ys.cols(), z.cols());
    for (Eigen::Index j = 0; j < ys.cols(); ++j) {
      w.row(j) = -y.segment(j * z.cols(), z.cols()).transpose();
    }
    const double lower = y(q);
    const Eigen::VectorXd norms = residual_norms(z, w, ys);
    const double upper = norms.maxCoeff();
    if (upper < best_upper) {
      best_upper = upper;
      best.map = to_map(w, xs.cols(), options.fit_offset);
      best.objective = QValue(upper);
    }
    best.iterations = round + 1;
    if (best_upper - lower <= options.minimax_gap * std::max(1.0, best_upper)) return best;

    // Cut off the current point along the residual directions of the worst
    // samples.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(norms.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&norms](Eigen::Index a, Eigen::Index b) { return norms(a) > norms(b); });
    const Eigen::MatrixXd residuals = z * w.transpose() - ys;
    Eigen::MatrixXd new_cols(q + 1, max_new);
    Eigen::VectorXd new_costs(max_new);
    Eigen::Index added = 0;
    for (const auto i : order) {
      if (added == max_new || norms(i) <= lower) break;
      const Eigen::VectorXd unit = residuals.row(i).transpose() / norms(i);
      cuts.direction_cut(z, ys, i, unit, new_cols.col(added), new_costs(added));
      ++added;
    }
    if (added == 0) return best;
    lp.add_columns(new_cols.leftCols(added), new_costs.head(added));
  }
  throw FitNonConvergence("minimax affine fit: cutting planes did not close the gap", best);
}

AffineFit fit_least_abs(const PointSet& xs, const PointSet& ys, const AffineFitOptions& options) {
  const Eigen::MatrixXd z = design_matrix(xs, options.fit_offset);
  const double scale = 1.0 + ys.cwiseAbs().maxCoeff();
  const double floor = 1e-12 * scale;

  Eigen::MatrixXd w = least_squares_coefficients(z, ys);
  Eigen::VectorXd norms = residual_norms(z, w, ys);
  double value = norms.mean();
  AffineFit best{to_map(w, xs.cols(), options.fit_offset), QValue(value), 0};

  for (int iter = 1; iter <= options.irls_max_iterations; ++iter) {
    if (value <= floor) {
      best.iterations = iter - 1;
      return best;
    }
    const Eigen::VectorXd root_weights =
        norms.unaryExpr([floor](double r) { return 1.0 / std::sqrt(std::max(r, floor)); });
    const Eigen::MatrixXd zw = root_weights.asDiagonal() * z;
    const Eigen::MatrixXd yw = root_weights.asDiagonal() * ys;
    w = least_squares_coefficients(zw, yw);
    norms = residual_norms(z, w, ys);
    const double next = norms.mean();
    const double change = std::abs(value - next);
    value = next;
    if (value < best.objective.value()) {
      best.map = to_map(w, xs.cols(), options.fit_offset);
      best.objective = QValue(value);
    }
    best.iterations = iter;
    if (change <= options.irls_tolerance * std::max(value, floor)) return best;
  }
  throw FitNonConvergence("least_abs affine fit: IRLS did not converge in " +
                              std::to_string(options.irls_max_iterations) + " iterations",
                          best);
}

}  // namespace

PointSet AffineMap::apply(const PointSet& xs) const {
  return (xs * matrix.transpose()).rowwise() + offset.transpose();
}

std::string_view to_string(FitObjective objective) noexcept {
  switch (objective) {
    case FitObjective::minimax: return "minimax";
    case FitObjective::least_squares: return "least_squares";
    case FitObjective::least_abs: return "least_abs";
  }
  return "?";
}

FitObjective parse_fit_objective(std::string_view name) {
  for (auto o : {FitObjective::minimax, FitObjective::least_squares, FitObjective::least_abs}) {
    if (to_string(o) == name) return o;
  }
  throw InvalidArgument("unknown fit objective '" + std::string(name) + "'");
}

double fit_objective_value(const AffineMap& map, const PointSet& xs, const PointSet& ys,
                           FitObjective objective) {
  const Eigen::VectorXd norms = (map.apply(xs) - ys).rowwise().norm();
  switch (objective) {
    case FitObjective::minimax: return norms.maxCoeff();
    case FitObjective::least_squares: return norms.squaredNorm() / static_cast<double>(norms.size());
    case FitObjective::least_abs: return norms.mean();
  }
  return 0.0;
}

AffineFit affine_fit(const PointSet& xs, const PointSet& ys, FitObjective objective,
                     const AffineFitOptions& options) {
  if (xs.rows() == 0) throw InvalidArgument("affine_fit: empty input");
  if (xs.rows() != ys.rows()) throw InvalidArgument("affine_fit: |xs| != |ys|");
  if (ys.cols() == 0) throw InvalidArgument("affine_fit: zero-dimensional targets");
  if (!xs.allFinite() || !ys.allFinite()) throw InvalidArgument("affine_fit: non-finite input");

  switch (objective) {
    case FitObjective::minimax:
      return fit_minimax(xs, ys, options);
    case FitObjective::least_abs:
      return fit_least_abs(xs, ys, options);
    case FitObjective::least_squares: {
      const Eigen::MatrixXd z = design_matrix(xs, options.fit_offset);
      AffineFit fit;
      fit.map = to_map(least_squares_coefficients(z, ys), xs.cols(), options.fit_offset);
      fit.objective = QValue(fit_objective_value(fit.map, xs, ys, objective));
      fit.iterations = 1;
      return fit;
    }
  }
  throw InvalidArgument("affine_fit: unknown objective");
}

}  // namespace dismetrics
