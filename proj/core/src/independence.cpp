#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "dismetrics/error.hpp"
#include "dismetrics/metrics.hpp"

namespace dismetrics {

DiscreteKernel::DiscreteKernel(std::vector<std::size_t> alphabet_sizes,
                               Eigen::MatrixXd probabilities)
    : sizes_(std::move(alphabet_sizes)), p_(std::move(probabilities)) {
  if (sizes_.empty()) throw InvalidArgument("DiscreteKernel: no code blocks");
  std::size_t total = 1;
  strides_.assign(sizes_.size(), 1);
  for (std::size_t i = sizes_.size(); i-- > 0;) {
    if (sizes_[i] == 0) throw InvalidArgument("DiscreteKernel: empty alphabet");
    strides_[i] = total;
    total *= sizes_[i];
  }
  if (static_cast<std::size_t>(p_.cols()) != total) {
    throw InvalidArgument("DiscreteKernel: " + std::to_string(p_.cols()) +
                          " outcome columns, alphabets need " + std::to_string(total));
  }
  if (p_.rows() == 0) throw InvalidArgument("DiscreteKernel: no rows");
  for (Eigen::Index r = 0; r < p_.rows(); ++r) {
    double sum = 0.0;
    for (Eigen::Index c = 0; c < p_.cols(); ++c) {
      const double v = p_(r, c);
      if (!std::isfinite(v) || v < 0.0) {
        throw InvalidArgument("DiscreteKernel: row " + std::to_string(r) +
                              " has an invalid probability");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw InvalidArgument("DiscreteKernel: row " + std::to_string(r) + " sums to " +
                            std::to_string(sum));
    }
  }
}

Eigen::VectorXd DiscreteKernel::marginal(Eigen::Index row, std::size_t block) const {
  const std::size_t size = sizes_.at(block);
  const std::size_t stride = strides_[block];
  Eigen::VectorXd m = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size));
  for (Eigen::Index c = 0; c < p_.cols(); ++c) {
    m(static_cast<Eigen::Index>((static_cast<std::size_t>(c) / stride) % size)) += p_(row, c);
  }
  return m;
}

Eigen::VectorXd DiscreteKernel::product_of_marginals(Eigen::Index row) const {
  std::vector<Eigen::VectorXd> marginals;
  for (std::size_t b = 0; b < sizes_.size(); ++b) marginals.push_back(marginal(row, b));
  Eigen::VectorXd q(p_.cols());
  for (Eigen::Index c = 0; c < p_.cols(); ++c) {
    double v = 1.0;
    for (std::size_t b = 0; b < sizes_.size(); ++b) {
      v *= marginals[b](static_cast<Eigen::Index>((static_cast<std::size_t>(c) / strides_[b]) %
                                                  sizes_[b]));
    }
    q(c) = v;
  }
  return q;
}

QValue kl_divergence(const Eigen::Ref<const Eigen::VectorXd>& p,
                     const Eigen::Ref<const Eigen::VectorXd>& q) {
  if (p.size() != q.size()) throw InvalidArgument("kl_divergence: size mismatch");
  double sum = 0.0;
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    if (p(k) == 0.0) continue;
    if (q(k) == 0.0) return QValue::bottom();
    if (p(k) == q(k)) continue;
    sum += p(k) * std::log(p(k) / q(k));
  }
  // Rounding can push a near-zero divergence slightly below 0.
  return QValue(std::max(sum, 0.0));
}

QValue output_independence(const DiscreteKernel& kernel, Aggregator agg_y) {
  if (agg_y != Aggregator::max && agg_y != Aggregator::mean) {
    throw InvalidArgument("output_independence: aggregator must be max or mean");
  }
  std::vector<double> scores;
  scores.reserve(static_cast<std::size_t>(kernel.rows()));
  for (Eigen::Index r = 0; r < kernel.rows(); ++r) {
    scores.push_back(kl_divergence(kernel.probabilities().row(r).transpose(),
                                   kernel.product_of_marginals(r))
                         .value());
  }
  return aggregate_q(agg_y, scores);
}

QValue input_independence_mean(const DiscreteKernel& kernel, const FactorGrid& grid) {
  if (static_cast<std::size_t>(kernel.rows()) != grid.size()) {
    throw InvalidArgument("input_independence_mean: kernel has " +
                          std::to_string(kernel.rows()) + " rows, grid has " +
                          std::to_string(grid.size()) + " points");
  }
  if (kernel.num_blocks() != grid.num_factors()) {
    throw InvalidArgument("input_independence_mean: one code block per factor required");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.num_factors(); ++i) {
    std::vector<Eigen::VectorXd> marg(grid.size());
    for (std::size_t r = 0; r < grid.size(); ++r) {
      marg[r] = kernel.marginal(static_cast<Eigen::Index>(r), i);
    }
    double total = 0.0;
    for (std::size_t v = 0; v < grid.factor(i).values.size(); ++v) {
      const Slice slice = slice_fixing(grid, i, v);
      // Mean taken as offsets from the first row so identical rows give
      // exactly that row back.
      const Eigen::VectorXd& base = marg[slice.indices.front()];
      Eigen::VectorXd shift = Eigen::VectorXd::Zero(base.size());
      for (std::size_t r : slice.indices) shift += marg[r] - base;
      const Eigen::VectorXd q = base + shift / static_cast<double>(slice.indices.size());
      for (std::size_t r : slice.indices) {
        const QValue kl = kl_divergence(marg[r], q);
        if (!kl.is_finite()) return QValue::bottom();
        total += kl.value();
      }
    }
    worst = std::max(worst, total / static_cast<double>(grid.size()));
  }
  return QValue(worst);
}

}  // namespace dismetrics
