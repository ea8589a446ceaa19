#pragma once

#include <cstdint>
#include <string_view>

#include "dismetrics/error.hpp"
#include "dismetrics/quantale.hpp"
#include "dismetrics/types.hpp"

namespace dismetrics {

// ---------------------------------------------------------------------------
// Smallest enclosing ball
// ---------------------------------------------------------------------------

struct Ball {
  Point center;
  QValue radius;
};

inline constexpr std::uint64_t kDefaultShuffleSeed = 0x9e3779b97f4a7c15ULL;
inline constexpr Eigen::Index kMaxBallDimension = 16;

// Minimal ball containing every row of `points` (Welzl's algorithm with the
// move-to-front heuristic on a seeded shuffle). Support sets that are
// affinely dependent are resolved by the minimum-norm circumcenter. The
// returned radius is the largest distance from the center to any input, so
// containment holds by construction.
//
// Throws InvalidArgument for an empty set or dimension > 16.
Ball smallest_enclosing_ball(const PointSet& points,
                             std::uint64_t shuffle_seed = kDefaultShuffleSeed);

// Ball through the given support points with center in their affine hull.
Ball circumscribed_ball(const PointSet& support);

// ---------------------------------------------------------------------------
// Geometric median (Weiszfeld with the Vardi-Zhang vertex safeguard)
// ---------------------------------------------------------------------------

struct GeometricMedianOptions {
  double tolerance = 1e-12;  // relative step size at which to stop
  int max_iterations = 20000;
};

struct GeometricMedian {
  Point center;
  QValue mad;  // mean distance from the inputs to `center`
  int iterations = 0;
};

// Throws InvalidArgument on an empty set.
GeometricMedian geometric_median(const PointSet& points,
                                 const GeometricMedianOptions& options = {});

double mean_distance(const PointSet& points, const Eigen::Ref<const Point>& center);

// ---------------------------------------------------------------------------
// Moments and pairwise spreads
// ---------------------------------------------------------------------------

struct MeanVariance {
  Point mean;
  QValue variance;  // mean squared distance to the mean
};

MeanVariance mean_and_variance(const PointSet& points);

// Largest pairwise distance; 0 for a singleton.
QValue diameter(const PointSet& points);

// Mean distance over unordered pairs without self-pairs (0 for a singleton).
QValue mean_pairwise_distance(const PointSet& points);

// Mean squared distance over all n^2 ordered pairs, self-pairs included.
// Equals twice the variance.
QValue mean_ordered_pairwise_squared(const PointSet& points);

// ---------------------------------------------------------------------------
// Affine regression
// ---------------------------------------------------------------------------

// y = matrix * x + offset.
struct AffineMap {
  Eigen::MatrixXd matrix;  // M x K
  Eigen::VectorXd offset;  // M

  // Applies the map to every row of `xs` (n x K) and returns n x M.
  PointSet apply(const PointSet& xs) const;
};

enum class FitObjective { minimax, least_squares, least_abs };

std::string_view to_string(FitObjective objective) noexcept;
FitObjective parse_fit_objective(std::string_view name);

struct AffineFitOptions {
  bool fit_offset = true;            // false pins the offset to 0
  double irls_tolerance = 1e-7;      // relative objective change (least_abs)
  int irls_max_iterations = 500;
  double minimax_gap = 1e-10;        // relative gap between LP bound and max residual
  int minimax_max_rounds = 2000;     // cutting-plane rounds
};

struct AffineFit {
  AffineMap map;
  // minimax: max ||r||; least_squares: mean ||r||^2; least_abs: mean ||r||.
  QValue objective;
  int iterations = 0;
};

// Raised by affine_fit when IRLS or the cutting-plane loop does not converge.
class FitNonConvergence : public SolverError {
 public:
  FitNonConvergence(const std::string& what, AffineFit best)
      : SolverError(what), best_(std::move(best)) {}
  const AffineFit& best() const noexcept { return best_; }

 private:
  AffineFit best_;
};

// Fits y ≈ A x + b over paired rows of xs (n x K) and ys (n x M).
//
// minimax minimises the largest Euclidean residual. It starts from the
// linear program with per-coordinate residual bounds (exact when M = 1) and
// tightens it with cuts along residual directions until the LP lower bound
// meets the realised maximum. least_squares uses the minimum-norm solution
// on rank deficiency. least_abs runs IRLS from the least-squares fit.
AffineFit affine_fit(const PointSet& xs, const PointSet& ys, FitObjective objective,
                     const AffineFitOptions& options = {});

// Objective value of `map` on the samples under `objective`.
double fit_objective_value(const AffineMap& map, const PointSet& xs, const PointSet& ys,
                           FitObjective objective);

}  // namespace dismetrics
