#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dismetrics/quantale.hpp"
#include "dismetrics/types.hpp"

namespace dismetrics {

// Ground distance on R^dimension.
struct PointDistance {
  enum class Kind { euclidean, discrete };

  Kind kind = Kind::euclidean;
  std::size_t dimension = 1;

  static PointDistance euclidean(std::size_t dim) { return {Kind::euclidean, dim}; }
  static PointDistance discrete(std::size_t dim) { return {Kind::discrete, dim}; }
};

// Throws InvalidArgument when either point does not have d.dimension entries.
QValue point_distance(const PointDistance& d, const Eigen::Ref<const Point>& a,
                      const Eigen::Ref<const Point>& b);

// Plain Euclidean distance between two rows/vectors of equal size; the
// unchecked hot-path variant used by the metric loops.
template <typename A, typename B>
double euclidean(const A& a, const B& b) {
  return (a - b).norm();
}

// Reduction policy standing in for a universal quantifier. Every aggregator
// maps the empty list to 0, the top of the quantale.
enum class Aggregator { max, mean, sum, median, second_moment };

std::string_view to_string(Aggregator agg) noexcept;
// Throws InvalidArgument for unknown names.
Aggregator parse_aggregator(std::string_view name);

// Reduces in index order, so the result is bit-stable for a given input.
// `median` is the lower median for even counts.
double aggregate(Aggregator agg, std::span<const double> values);
QValue aggregate_q(Aggregator agg, std::span<const double> values);

// A function known only through finitely many (input, output) samples.
class SampledFunction {
 public:
  // Throws InvalidArgument on length mismatch or duplicate inputs.
  SampledFunction(PointSet inputs, PointSet outputs);

  const PointSet& inputs() const noexcept { return inputs_; }
  const PointSet& outputs() const noexcept { return outputs_; }
  Eigen::Index size() const noexcept { return inputs_.rows(); }

  // Row of the sample whose input equals `x` exactly, if any.
  std::optional<Eigen::Index> find(const Eigen::Ref<const Point>& x) const;

  // f(x) for a sampled x; throws InvalidArgument otherwise.
  Point operator()(const Eigen::Ref<const Point>& x) const;

 private:
  PointSet inputs_;
  PointSet outputs_;
};

// agg over a of d(f(a), g(a)). With agg = max this is the meet-induced
// function premetric. Throws InvalidArgument if f and g are sampled on
// different input lists.
QValue induced_function_distance(const PointDistance& d, Aggregator agg,
                                 const SampledFunction& f, const SampledFunction& g);

struct PremetricLawReport {
  bool indiscernibility_of_identicals = true;  // d(x, x) = 0
  bool symmetry = true;
  bool triangle = true;                        // d(x, z) <= d(x, y) + d(y, z)
  bool identity_of_indiscernibles = true;      // d(x, y) = 0 => x = y
  std::vector<std::string> violations;         // first few counterexamples

  bool all() const noexcept {
    return indiscernibility_of_identicals && symmetry && triangle &&
           identity_of_indiscernibles;
  }
};

using DistanceFn = std::function<double(const Eigen::Ref<const Point>&,
                                        const Eigen::Ref<const Point>&)>;

// Exhaustive check over all pairs and triples of rows of `points`.
PremetricLawReport check_premetric_laws(const DistanceFn& d, const PointSet& points,
                                        double tolerance = 1e-12);
PremetricLawReport check_premetric_laws(const PointDistance& d, const PointSet& points,
                                        double tolerance = 1e-12);

// Outcome of checking one of the composition/product inequalities on
// samples. `holds` is meaningful only when `precondition_met`.
struct InequalityCheck {
  bool precondition_met = true;
  bool holds = true;
  double lhs = 0.0;  // distance between the combined functions
  double rhs = 0.0;  // sum of the component distances
  std::string note;

  bool passed() const noexcept { return precondition_met && holds; }
};

// Largest ratio d(g(x), g(x')) / d(x, x') over sample pairs.
double empirical_lipschitz(const SampledFunction& g);

// d(g∘f, g'∘f') <= d(g, g') + d(f, f') under the max aggregator.
//
// f and f' must share an input list; g and g' must share an input list that
// contains every output of f and f' (throws InvalidArgument otherwise). The
// inequality is only claimed for nonexpansive outer maps, so when g or g' has
// empirical Lipschitz constant > 1 the result has precondition_met = false.
InequalityCheck check_composition_inequality(const SampledFunction& f,
                                             const SampledFunction& f_prime,
                                             const SampledFunction& g,
                                             const SampledFunction& g_prime,
                                             const PointDistance& d,
                                             double tolerance = 1e-12);

// d(f⊗h, f'⊗h') <= d(f, f') + d(h, h') under the max aggregator, where
// (f⊗h)(a, c) = (f(a), h(c)) is evaluated over the product of the input
// samples and compared with the Euclidean metric on concatenated outputs.
InequalityCheck check_product_inequality(const SampledFunction& f,
                                         const SampledFunction& f_prime,
                                         const SampledFunction& h,
                                         const SampledFunction& h_prime,
                                         double tolerance = 1e-12);

}  // namespace dismetrics
