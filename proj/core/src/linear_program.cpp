#include "dismetrics/linear_program.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>

#include "dismetrics/error.hpp"

namespace dismetrics {

const char* to_string(LpStatus status) noexcept {
  switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration_limit";
  }
  return "?";
}

SimplexSolver::SimplexSolver(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                             const Eigen::VectorXd& c, SimplexOptions options)
    : options_(options), rows_(a.rows()) {
  if (b.size() != a.rows() || c.size() != a.cols()) {
    throw InvalidArgument("SimplexSolver: inconsistent problem dimensions");
  }
  sign_ = b.unaryExpr([](double v) { return v < 0.0 ? -1.0 : 1.0; });
  a_ = sign_.asDiagonal() * a;
  b_ = b.cwiseAbs();
  cost_.assign(c.data(), c.data() + c.size());
  tab_ = a_;
  binv_ = Eigen::MatrixXd::Identity(rows_, rows_);
  rhs_ = b_;
  basis_.resize(static_cast<std::size_t>(rows_));
  for (Eigen::Index r = 0; r < rows_; ++r) basis_[static_cast<std::size_t>(r)] = -1 - r;
}

void SimplexSolver::add_columns(const Eigen::MatrixXd& a_cols, const Eigen::VectorXd& c_cols) {
  if (a_cols.rows() != rows_ || a_cols.cols() != c_cols.size()) {
    throw InvalidArgument("SimplexSolver::add_columns: inconsistent dimensions");
  }
  const Eigen::Index old_cols = a_.cols();
  const Eigen::Index extra = a_cols.cols();
  const Eigen::MatrixXd flipped = sign_.asDiagonal() * a_cols;
  a_.conservativeResize(Eigen::NoChange, old_cols + extra);
  a_.rightCols(extra) = flipped;
  tab_.conservativeResize(Eigen::NoChange, old_cols + extra);
  tab_.rightCols(extra) = binv_ * flipped;
  cost_.insert(cost_.end(), c_cols.data(), c_cols.data() + c_cols.size());
}

double SimplexSolver::column_cost(Phase phase, Eigen::Index j) const {
  if (j < 0) return phase == Phase::one ? -1.0 : 0.0;
  return phase == Phase::one ? 0.0 : cost_[static_cast<std::size_t>(j)];
}

void SimplexSolver::pivot(Eigen::Index row, Eigen::Index col) {
  const double p = tab_(row, col);
  tab_.row(row) /= p;
  binv_.row(row) /= p;
  rhs_(row) /= p;
  for (Eigen::Index r = 0; r < rows_; ++r) {
    if (r == row) continue;
    const double f = tab_(r, col);
    if (f == 0.0) continue;
    tab_.row(r) -= f * tab_.row(row);
    binv_.row(r) -= f * binv_.row(row);
    rhs_(r) -= f * rhs_(row);
    tab_(r, col) = 0.0;
  }
  tab_(row, col) = 1.0;
  basis_[static_cast<std::size_t>(row)] = col;
}

void SimplexSolver::price_and_pivot(Phase phase) {
  const Eigen::Index n = a_.cols();
  Eigen::VectorXd basic_cost(rows_);
  int degenerate_run = 0;
  // Artificial rows sort after every structural column in Bland order.
  const auto bland_key = [n](Eigen::Index basic) { return basic >= 0 ? basic : n - basic; };

  while (true) {
    if (iterations_ >= options_.max_iterations) {
      status_ = LpStatus::iteration_limit;
      return;
    }
    for (Eigen::Index r = 0; r < rows_; ++r) {
      basic_cost(r) = column_cost(phase, basis_[static_cast<std::size_t>(r)]);
    }
    const Eigen::VectorXd reduced = -(tab_.transpose() * basic_cost);
    const bool bland = degenerate_run >= options_.degenerate_switch;

    Eigen::Index entering = -1;
    double best = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double cj = column_cost(phase, j);
      const double d = cj + reduced(j);
      if (d <= options_.optimality_tolerance * (1.0 + std::abs(cj))) continue;
      if (bland) {
        entering = j;
        break;
      }
      if (d > best) {
        best = d;
        entering = j;
      }
    }
    if (entering < 0) {
      status_ = LpStatus::optimal;
      return;
    }

    Eigen::Index leaving = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index r = 0; r < rows_; ++r) {
      const double coef = tab_(r, entering);
      const Eigen::Index basic = basis_[static_cast<std::size_t>(r)];
      double ratio;
      if (basic < 0 && phase == Phase::two) {
        // A basic artificial sits at zero on a redundant row and must stay
        // there whatever the sign of the entry.
        if (std::abs(coef) <= options_.pivot_tolerance) continue;
        ratio = 0.0;
      } else {
        if (coef <= options_.pivot_tolerance) continue;
        ratio = std::max(rhs_(r), 0.0) / coef;
      }
      if (ratio < best_ratio ||
          (ratio == best_ratio && leaving >= 0 &&
           bland_key(basic) < bland_key(basis_[static_cast<std::size_t>(leaving)]))) {
        best_ratio = ratio;
        leaving = r;
      }
    }
    if (leaving < 0) {
      status_ = LpStatus::unbounded;
      return;
    }
    degenerate_run = best_ratio <= 0.0 ? degenerate_run + 1 : 0;
    pivot(leaving, entering);
    ++iterations_;
  }
}

bool SimplexSolver::drive_out_artificials() {
  bool remaining = false;
  for (Eigen::Index r = 0; r < rows_; ++r) {
    if (basis_[static_cast<std::size_t>(r)] >= 0) continue;
    Eigen::Index col = -1;
    double best = options_.pivot_tolerance * 1e3;
    for (Eigen::Index j = 0; j < a_.cols(); ++j) {
      if (std::abs(tab_(r, j)) > best) {
        best = std::abs(tab_(r, j));
        col = j;
      }
    }
    if (col >= 0) {
      pivot(r, col);
    } else {
      remaining = true;
    }
  }
  return remaining;
}

void SimplexSolver::refactor() {
  Eigen::MatrixXd basis_matrix(rows_, rows_);
  for (Eigen::Index r = 0; r < rows_; ++r) {
    const Eigen::Index basic = basis_[static_cast<std::size_t>(r)];
    if (basic >= 0) {
      basis_matrix.col(r) = a_.col(basic);
    } else {
      basis_matrix.col(r) = Eigen::VectorXd::Unit(rows_, -1 - basic);
    }
  }
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(basis_matrix);
  if (!lu.isInvertible()) return;
  binv_ = lu.inverse();
  tab_ = binv_ * a_;
  rhs_ = binv_ * b_;
  for (Eigen::Index r = 0; r < rows_; ++r) {
    if (rhs_(r) < 0.0 && rhs_(r) > -options_.feasibility_tolerance) rhs_(r) = 0.0;
  }
}

LpStatus SimplexSolver::solve() {
  if (!phase_one_done_) {
    price_and_pivot(Phase::one);
    if (status_ != LpStatus::optimal) return status_;
    double infeasibility = 0.0;
    for (Eigen::Index r = 0; r < rows_; ++r) {
      if (basis_[static_cast<std::size_t>(r)] < 0) infeasibility += rhs_(r);
    }
    const double scale = 1.0 + (b_.size() > 0 ? b_.maxCoeff() : 0.0);
    if (infeasibility > options_.feasibility_tolerance * scale) {
      status_ = LpStatus::infeasible;
      return status_;
    }
    phase_one_done_ = true;
  }
  drive_out_artificials();
  price_and_pivot(Phase::two);
  if (status_ == LpStatus::optimal) refactor();
  return status_;
}

double SimplexSolver::objective() const {
  double value = 0.0;
  for (Eigen::Index r = 0; r < rows_; ++r) {
    const Eigen::Index basic = basis_[static_cast<std::size_t>(r)];
    if (basic >= 0) value += cost_[static_cast<std::size_t>(basic)] * rhs_(r);
  }
  return value;
}

Eigen::VectorXd SimplexSolver::primal() const {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(a_.cols());
  for (Eigen::Index r = 0; r < rows_; ++r) {
    const Eigen::Index basic = basis_[static_cast<std::size_t>(r)];
    if (basic >= 0) x(basic) = rhs_(r);
  }
  return x;
}

Eigen::VectorXd SimplexSolver::duals() const {
  Eigen::VectorXd basic_cost(rows_);
  for (Eigen::Index r = 0; r < rows_; ++r) {
    const Eigen::Index basic = basis_[static_cast<std::size_t>(r)];
    basic_cost(r) = basic >= 0 ? cost_[static_cast<std::size_t>(basic)] : 0.0;
  }
  return sign_.cwiseProduct(binv_.transpose() * basic_cost);
}

}  // namespace dismetrics
