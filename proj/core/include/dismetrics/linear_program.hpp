#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace dismetrics {

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

const char* to_string(LpStatus status) noexcept;

struct SimplexOptions {
  double pivot_tolerance = 1e-11;
  double optimality_tolerance = 1e-11;
  double feasibility_tolerance = 1e-9;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int degenerate_switch = 32;
  std::size_t max_iterations = 200000;
};

// Dense two-phase primal simplex for
//
//     maximize c'x  subject to  A x = b,  x >= 0
//
// with few rows and possibly many columns. The tableau keeps B^-1 explicitly,
// so columns can be appended after a solve and the previous optimal basis is
// reused as a feasible warm start (column generation).
class SimplexSolver {
 public:
  SimplexSolver(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                SimplexOptions options = {});

  LpStatus solve();

  // Append columns with their objective coefficients. Call solve() again to
  // re-optimise from the current basis.
  void add_columns(const Eigen::MatrixXd& a_cols, const Eigen::VectorXd& c_cols);

  Eigen::Index rows() const noexcept { return rows_; }
  Eigen::Index cols() const noexcept { return static_cast<Eigen::Index>(cost_.size()); }

  double objective() const;
  Eigen::VectorXd primal() const;
  // Multipliers y of the equality rows: at an optimum A'y >= c and b'y
  // equals the optimal objective.
  Eigen::VectorXd duals() const;
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  enum class Phase { one, two };

  void price_and_pivot(Phase phase);
  bool drive_out_artificials();
  void refactor();
  double column_cost(Phase phase, Eigen::Index j) const;
  void pivot(Eigen::Index row, Eigen::Index col);

  SimplexOptions options_;
  Eigen::Index rows_ = 0;
  Eigen::VectorXd sign_;        // row sign flips that make b >= 0
  Eigen::MatrixXd a_;           // sign-flipped constraint matrix, grown by add_columns
  std::vector<double> cost_;
  Eigen::MatrixXd tab_;         // B^-1 A
  Eigen::MatrixXd binv_;        // B^-1
  Eigen::VectorXd rhs_;         // B^-1 b
  Eigen::VectorXd b_;
  // basis_[r] >= 0: structural column; basis_[r] = -1 - r: artificial of row r.
  std::vector<Eigen::Index> basis_;
  bool phase_one_done_ = false;
  LpStatus status_ = LpStatus::iteration_limit;
  std::size_t iterations_ = 0;
};

}  // namespace dismetrics
