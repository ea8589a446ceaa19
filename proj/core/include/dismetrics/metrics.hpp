#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dismetrics/grid.hpp"
#include "dismetrics/parallel.hpp"
#include "dismetrics/premetric.hpp"
#include "dismetrics/quantale.hpp"
#include "dismetrics/solvers.hpp"

namespace dismetrics {

enum class MetricId {
  approximation,        // product via best product approximation
  constancy,            // product via constancy of the exponential transpose
  left_inverse,         // best affine left-inverse
  contraction,          // contraction of pairs of inputs
  equivariance,
  output_independence,
  input_independence,
};

std::string_view to_string(MetricId id) noexcept;
MetricId parse_metric(std::string_view name);

// Scores of one metric under one choice of aggregators.
//
// `inner` names how each component (or the whole map) was scored: an
// aggregator name, or a fit objective for the left-inverse. When the metric
// is evaluated per component, `outer` is the aggregator that turned
// `per_component` into `overall`. Whole-map metrics leave `per_component`
// empty and `outer` unset.
struct MetricReport {
  MetricId metric = MetricId::approximation;
  std::string inner;
  std::optional<Aggregator> outer;
  QValue overall;
  std::vector<QValue> per_component;
  std::vector<std::vector<QValue>> per_fixed_value;  // [component][value index]
  std::map<std::string, std::string> metadata;

  // overall == outer(per_component), to a 1e-12 relative slack for
  // mean-type aggregators. Vacuously true for whole-map reports.
  bool recomputes() const;
};

// ---------------------------------------------------------------------------
// Modularity
// ---------------------------------------------------------------------------

struct ProductApproximation {
  MetricReport report;
  // The best product function, evaluated on every grid point (same layout as
  // the code table).
  PointSet approximation;
};

// For every factor i and value y_i, the codes m_i over the slice fixing y_i
// are replaced by the center minimising `inner` deviation:
//   max           smallest enclosing ball, deviation = radius
//   mean          geometric median, deviation = mean distance (MAD)
//   second_moment arithmetic mean, deviation = variance
// per_fixed_value[i][v] is that deviation, per_component[i] its max over v,
// overall = outer(per_component).
ProductApproximation product_via_approximation(const CodeTable& table, Aggregator inner,
                                               Aggregator outer = Aggregator::max,
                                               const EvalOptions& options = {});

// For every factor i, each unordered pair of complement assignments
// (y_{\i}, y'_{\i}) is scored by max over y_i of
// d(m_i(y_i, y_{\i}), m_i(y_i, y'_{\i})); per_component[i] is pair_agg over
// the pairs. per_fixed_value[i][v] is pair_agg over the pairs within the
// slice fixing v (with pair_agg = max, the slice diameter).
MetricReport product_via_constancy(const CodeTable& table, Aggregator pair_agg,
                                   Aggregator outer = Aggregator::max,
                                   const EvalOptions& options = {});

enum class ConstancyMethod { centroid, pairwise };

// How far a finite set of outputs is from a single value.
//   centroid: max -> enclosing-ball radius, mean -> MAD around the geometric
//             median, second_moment -> variance
//   pairwise: max -> diameter, mean -> mean distance over unordered pairs,
//             second_moment -> mean squared distance over ordered pairs
//             including self-pairs (twice the variance)
QValue constancy(const PointSet& points, ConstancyMethod method, Aggregator agg);

// ---------------------------------------------------------------------------
// Informativeness
// ---------------------------------------------------------------------------

struct LeftInverse {
  MetricReport report;
  AffineMap map;  // fitted h: Z -> Y
};

// Fits an affine h with h(m(y)) ≈ y over every grid point and reports the
// fit objective (MME, MSE or MAE). `constrain_linear` pins the offset to 0.
LeftInverse left_inverse_metric(const CodeTable& table, FitObjective objective,
                                bool constrain_linear = false,
                                const AffineFitOptions& fit_options = {});

enum class ContractionScope { whole, per_component };

// agg over unordered pairs (y, y') of max{d_Y(y, y') - d_Z(m(y), m(y')), 0}.
// whole: every pair of grid points. per_component: for factor i only the
// pairs that differ in factor i alone, measured between Y_i and Z_i;
// overall = outer(per_component). agg must be max or mean.
MetricReport contraction_metric(const CodeTable& table, Aggregator agg,
                                ContractionScope scope = ContractionScope::whole,
                                Aggregator outer = Aggregator::max,
                                const EvalOptions& options = {});

// ---------------------------------------------------------------------------
// Equivariance
// ---------------------------------------------------------------------------

// A finite algebra acting on both sides. Element a acts on factors as the
// total map y -> on_factors[a][y] of grid indices and on codes through
// on_codes[a].
struct FiniteAction {
  using CodeMap = std::function<Point(const Eigen::Ref<const Point>&)>;

  std::vector<std::vector<std::size_t>> on_factors;
  std::vector<CodeMap> on_codes;

  std::size_t size() const noexcept { return on_factors.size(); }

  static FiniteAction identity(std::size_t grid_size, std::size_t elements = 1);
};

// agg_a over a of agg_y over y of d_Z(m(F_Y(a)(y)), F_Z(a)(m(y))).
// Throws InvalidArgument if a factor map has the wrong length or an index
// outside the grid, or if the two sides list different numbers of elements.
QValue equivariance_metric(const CodeTable& table, const FiniteAction& action,
                           Aggregator agg_a = Aggregator::max,
                           Aggregator agg_y = Aggregator::max);

// ---------------------------------------------------------------------------
// Independence for stochastic encoders
// ---------------------------------------------------------------------------

// p(Z | Y) for finite code alphabets: one row per conditioning point, one
// column per joint outcome of the N code blocks, enumerated row-major (the
// last block varies fastest).
class DiscreteKernel {
 public:
  // Throws InvalidArgument on negative entries, rows that do not sum to 1
  // within 1e-12, or a column count that is not the product of the
  // alphabet sizes.
  DiscreteKernel(std::vector<std::size_t> alphabet_sizes, Eigen::MatrixXd probabilities);

  Eigen::Index rows() const noexcept { return p_.rows(); }
  std::size_t num_blocks() const noexcept { return sizes_.size(); }
  std::size_t alphabet_size(std::size_t i) const { return sizes_.at(i); }
  const Eigen::MatrixXd& probabilities() const noexcept { return p_; }

  // p(Z_i | Y = row).
  Eigen::VectorXd marginal(Eigen::Index row, std::size_t block) const;
  // prod_i p(Z_i | Y = row) over the joint outcomes.
  Eigen::VectorXd product_of_marginals(Eigen::Index row) const;

 private:
  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> strides_;
  Eigen::MatrixXd p_;
};

// D_KL(p || q) in nats with 0 log 0 = 0; +inf when p > 0 where q = 0.
QValue kl_divergence(const Eigen::Ref<const Eigen::VectorXd>& p,
                     const Eigen::Ref<const Eigen::VectorXd>& q);

// agg_y over rows of D_KL(p(Z | y) || prod_i p(Z_i | y)). agg_y: max or mean.
QValue output_independence(const DiscreteKernel& kernel, Aggregator agg_y = Aggregator::max);

// max over i of mean over y of D_KL(p(Z_i | y) || q_i(Z_i | y_i)), where q_i
// is the slice average of p(Z_i | y) over the points sharing y_i (the
// minimiser of the mean KL). Requires one kernel row per grid point and one
// code block per factor.
QValue input_independence_mean(const DiscreteKernel& kernel, const FactorGrid& grid);

}  // namespace dismetrics
