#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "../oracles.hpp"
#include "dismetrics/error.hpp"
#include "dismetrics/linear_program.hpp"
#include "dismetrics/solvers.hpp"

using namespace dismetrics;

namespace {

PointSet rows(std::initializer_list<std::initializer_list<double>> pts) {
  PointSet out(static_cast<Eigen::Index>(pts.size()),
               static_cast<Eigen::Index>(pts.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& p : pts) {
    Eigen::Index c = 0;
    for (double v : p) out(r, c++) = v;
    ++r;
  }
  return out;
}

PointSet random_points(std::mt19937_64& rng, Eigen::Index n, Eigen::Index d) {
  std::uniform_real_distribution<double> u(-1, 1);
  PointSet p(n, d);
  for (Eigen::Index k = 0; k < p.size(); ++k) p.data()[k] = u(rng);
  return p;
}

}  // namespace

// ---------------------------------------------------------------- simplex

TEST(Simplex, SmallKnownProgram) {
  // max 3x + 2y  s.t. x + y <= 4, x + 3y <= 6, x <= 3  ->  x=3, y=1, 11.
  Eigen::MatrixXd a(3, 5);
  a << 1, 1, 1, 0, 0,
       1, 3, 0, 1, 0,
       1, 0, 0, 0, 1;
  Eigen::VectorXd b(3), c(5);
  b << 4, 6, 3;
  c << 3, 2, 0, 0, 0;
  SimplexSolver lp(a, b, c);
  ASSERT_EQ(lp.solve(), LpStatus::optimal);
  EXPECT_NEAR(lp.objective(), 11.0, 1e-12);
  EXPECT_NEAR(lp.primal()(0), 3.0, 1e-12);
  EXPECT_NEAR(lp.primal()(1), 1.0, 1e-12);
  EXPECT_NEAR(b.dot(lp.duals()), 11.0, 1e-10);
}

TEST(Simplex, InfeasibleAndUnbounded) {
  Eigen::MatrixXd a(1, 1);
  a << 1;
  Eigen::VectorXd b(1), c(1);
  b << -1;
  c << 1;
  EXPECT_EQ(SimplexSolver(a, b, c).solve(), LpStatus::infeasible);

  Eigen::MatrixXd a2(1, 2);
  a2 << 1, -1;
  Eigen::VectorXd b2(1), c2(2);
  b2 << 1;
  c2 << 1, 0;
  EXPECT_EQ(SimplexSolver(a2, b2, c2).solve(), LpStatus::unbounded);
}

TEST(Simplex, MatchesVertexEnumeration) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 3, m = 2 + trial % 4;
    Eigen::MatrixXd a(m, n);
    Eigen::VectorXd b(m), c(n);
    for (int i = 0; i < m; ++i) {
      b(i) = u(rng);
      for (int j = 0; j < n; ++j) a(i, j) = u(rng);
    }
    for (int j = 0; j < n; ++j) c(j) = u(rng) - 1.0;
    Eigen::MatrixXd std_a(m, n + m);
    std_a << a, Eigen::MatrixXd::Identity(m, m);
    Eigen::VectorXd std_c = Eigen::VectorXd::Zero(n + m);
    std_c.head(n) = c;
    SimplexSolver lp(std_a, b, std_c);
    ASSERT_EQ(lp.solve(), LpStatus::optimal);
    EXPECT_NEAR(lp.objective(), oracles::vertex_enumeration_lp(a, b, c), 1e-9);
  }
}

TEST(Simplex, ColumnGenerationWarmStart) {
  Eigen::MatrixXd a(1, 2);
  a << 1, 1;
  Eigen::VectorXd b(1), c(2);
  b << 1;
  c << 1, 2;
  SimplexSolver lp(a, b, c);
  ASSERT_EQ(lp.solve(), LpStatus::optimal);
  EXPECT_NEAR(lp.objective(), 2.0, 1e-12);
  Eigen::MatrixXd extra(1, 1);
  extra << 1;
  Eigen::VectorXd ec(1);
  ec << 5;
  lp.add_columns(extra, ec);
  ASSERT_EQ(lp.solve(), LpStatus::optimal);
  EXPECT_NEAR(lp.objective(), 5.0, 1e-12);
}

// ---------------------------------------------------------------- balls

TEST(EnclosingBall, Examples) {
  auto b = smallest_enclosing_ball(rows({{0, 0}, {2, 0}}));
  EXPECT_NEAR(b.radius.value(), 1.0, 1e-12);
  EXPECT_NEAR(b.center(0), 1.0, 1e-12);
  EXPECT_NEAR(b.center(1), 0.0, 1e-12);

  b = smallest_enclosing_ball(rows({{0, 0}, {1, 0}, {0, 1}}));
  EXPECT_NEAR(b.radius.value(), std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(b.center(0), 0.5, 1e-12);
  EXPECT_NEAR(b.center(1), 0.5, 1e-12);

  b = smallest_enclosing_ball(rows({{0, 0}, {1, 0}, {2, 0}}));
  EXPECT_NEAR(b.radius.value(), 1.0, 1e-12);
  EXPECT_NEAR(b.center(0), 1.0, 1e-12);
}

TEST(EnclosingBall, IdenticalPointsGiveZero) {
  const PointSet p = rows({{0.3, -0.7, 0.1}, {0.3, -0.7, 0.1}, {0.3, -0.7, 0.1}});
  const Ball b = smallest_enclosing_ball(p);
  EXPECT_EQ(b.radius.value(), 0.0);
}

TEST(EnclosingBall, Errors) {
  EXPECT_THROW(smallest_enclosing_ball(PointSet(0, 2)), InvalidArgument);
  EXPECT_THROW(smallest_enclosing_ball(PointSet::Zero(3, 17)), InvalidArgument);
}

TEST(EnclosingBall, MatchesBruteForce) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index n = 1 + trial % 12, d = 1 + trial % 3;
    const PointSet p = random_points(rng, n, d);
    const Ball b = smallest_enclosing_ball(p);
    EXPECT_NEAR(b.radius.value(), oracles::brute_force_ball_radius(p), 1e-9) << trial;
    EXPECT_LE(oracles::max_distance(p, b.center), b.radius.value() + 1e-15);
  }
}

TEST(EnclosingBall, SeedDoesNotChangeRadius) {
  std::mt19937_64 rng(7);
  const PointSet p = random_points(rng, 40, 3);
  const double r0 = smallest_enclosing_ball(p, 1).radius.value();
  EXPECT_NEAR(smallest_enclosing_ball(p, 2).radius.value(), r0, 1e-12);
}

// ---------------------------------------------------------------- median

TEST(GeometricMedian, Examples) {
  auto g = geometric_median(rows({{2, 5}, {2, 5}}));
  EXPECT_EQ(g.mad.value(), 0.0);
  EXPECT_EQ(g.center(0), 2.0);

  g = geometric_median(rows({{0}, {0}, {10}}));
  EXPECT_NEAR(g.center(0), 0.0, 1e-9);
  EXPECT_NEAR(g.mad.value(), 10.0 / 3.0, 1e-12);

  g = geometric_median(rows({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
  EXPECT_NEAR(g.center(0), 0.5, 1e-9);
  EXPECT_NEAR(g.center(1), 0.5, 1e-9);
  EXPECT_NEAR(g.mad.value(), std::sqrt(0.5), 1e-12);
}

TEST(GeometricMedian, MatchesGridSearch) {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 50; ++trial) {
    const PointSet p = random_points(rng, 3 + trial % 9, 2);
    const auto g = geometric_median(p);
    const double oracle = oracles::grid_search_median_objective(p);
    EXPECT_LE(g.mad.value(), oracle + 1e-3);
    EXPECT_NEAR(g.mad.value(), oracle, 1e-3);
    EXPECT_NEAR(mean_distance(p, g.center), g.mad.value(), 1e-15);
  }
}

// ---------------------------------------------------------------- moments

TEST(Moments, Examples) {
  auto mv = mean_and_variance(rows({{0}, {10}}));
  EXPECT_EQ(mv.mean(0), 5.0);
  EXPECT_EQ(mv.variance.value(), 25.0);
  mv = mean_and_variance(rows({{0}, {10}, {20}}));
  EXPECT_NEAR(mv.variance.value(), 200.0 / 3.0, 1e-12);
  mv = mean_and_variance(rows({{0.1, 0.7}, {0.1, 0.7}, {0.1, 0.7}}));
  EXPECT_EQ(mv.variance.value(), 0.0);

  EXPECT_EQ(diameter(rows({{4}})).value(), 0.0);
  EXPECT_EQ(mean_pairwise_distance(rows({{4}})).value(), 0.0);
  EXPECT_EQ(diameter(rows({{0}, {3}})).value(), 3.0);
  const PointSet three = rows({{0}, {1}, {2}});
  EXPECT_NEAR(mean_ordered_pairwise_squared(three).value(), 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(mean_and_variance(three).variance.value(), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(mean_pairwise_distance(three).value(), 4.0 / 3.0, 1e-15);
}

TEST(Moments, VarianceIsHalfOrderedPairwiseSquare) {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 100; ++trial) {
    const PointSet p = random_points(rng, 1 + trial % 20, 1 + trial % 4);
    EXPECT_NEAR(mean_and_variance(p).variance.value(),
                0.5 * mean_ordered_pairwise_squared(p).value(), 1e-9);
  }
}

// ---------------------------------------------------------------- regression

TEST(AffineFit, ExactAffineData) {
  const PointSet x = rows({{0}, {1}, {2}});
  const PointSet y = rows({{1}, {3}, {5}});
  for (FitObjective obj : {FitObjective::minimax, FitObjective::least_squares, FitObjective::least_abs}) {
    const auto fit = affine_fit(x, y, obj);
    EXPECT_NEAR(fit.objective.value(), 0.0, 1e-9) << to_string(obj);
    EXPECT_NEAR(fit.map.matrix(0, 0), 2.0, 1e-7);
    EXPECT_NEAR(fit.map.offset(0), 1.0, 1e-7);
  }
}

TEST(AffineFit, ChebyshevThreePoints) {
  const auto fit = affine_fit(rows({{0}, {1}, {2}}), rows({{0}, {1}, {0}}), FitObjective::minimax);
  EXPECT_NEAR(fit.objective.value(), 0.5, 1e-12);
  EXPECT_NEAR(fit.map.matrix(0, 0), 0.0, 1e-12);
  EXPECT_NEAR(fit.map.offset(0), 0.5, 1e-12);
}

TEST(AffineFit, ConstantTarget) {
  const auto fit = affine_fit(rows({{0, 1}, {2, 3}, {5, -1}}), rows({{4}, {4}, {4}}),
                              FitObjective::least_squares);
  EXPECT_NEAR(fit.objective.value(), 0.0, 1e-20);
  EXPECT_NEAR(fit.map.matrix.norm(), 0.0, 1e-12);
  EXPECT_NEAR(fit.map.offset(0), 4.0, 1e-12);
}

TEST(AffineFit, MinimaxMatchesVertexEnumeration) {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 5;
    std::vector<double> xs, ys;
    PointSet x(n, 1), y(n, 1);
    for (int i = 0; i < n; ++i) {
      xs.push_back(i + 0.5 * u(rng));  // distinct abscissae
      ys.push_back(u(rng));
      x(i, 0) = xs.back();
      y(i, 0) = ys.back();
    }
    const auto fit = affine_fit(x, y, FitObjective::minimax);
    EXPECT_NEAR(fit.objective.value(), oracles::vertex_enumeration_minimax_1d(xs, ys), 1e-6);
  }
}

TEST(AffineFit, MinimaxIsEuclideanChebyshevCenter) {
  // Constant codes: the best affine map is the center of the smallest ball
  // around the targets.
  std::mt19937_64 rng(9);
  const PointSet y = random_points(rng, 30, 3);
  const PointSet x = PointSet::Zero(30, 2);
  const auto fit = affine_fit(x, y, FitObjective::minimax);
  EXPECT_NEAR(fit.objective.value(), smallest_enclosing_ball(y).radius.value(), 1e-9);
}

TEST(AffineFit, LeastSquaresAndLeastAbsObjectives) {
  std::mt19937_64 rng(505);
  const PointSet x = random_points(rng, 25, 2);
  const PointSet y = random_points(rng, 25, 2);
  const auto ls = affine_fit(x, y, FitObjective::least_squares);
  const auto la = affine_fit(x, y, FitObjective::least_abs);
  const auto mm = affine_fit(x, y, FitObjective::minimax);
  EXPECT_NEAR(fit_objective_value(ls.map, x, y, FitObjective::least_squares), ls.objective.value(), 1e-12);
  // Each fit is no worse than the others under its own objective.
  for (const auto* other : {&la, &mm}) {
    EXPECT_LE(ls.objective.value(), fit_objective_value(other->map, x, y, FitObjective::least_squares) + 1e-12);
  }
  for (const auto* other : {&ls, &mm}) {
    EXPECT_LE(la.objective.value(), fit_objective_value(other->map, x, y, FitObjective::least_abs) + 1e-6);
    EXPECT_LE(mm.objective.value(), fit_objective_value(other->map, x, y, FitObjective::minimax) + 1e-9);
  }
}

TEST(AffineFit, Errors) {
  EXPECT_THROW(affine_fit(PointSet(0, 1), PointSet(0, 1), FitObjective::minimax), InvalidArgument);
  EXPECT_THROW(affine_fit(PointSet::Zero(2, 1), PointSet::Zero(3, 1), FitObjective::minimax),
               InvalidArgument);
  EXPECT_EQ(parse_fit_objective("least_abs"), FitObjective::least_abs);
  EXPECT_THROW(parse_fit_objective("huber"), InvalidArgument);
}
