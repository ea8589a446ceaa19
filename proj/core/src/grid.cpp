#include "dismetrics/grid.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "dismetrics/error.hpp"

namespace dismetrics {

Factor Factor::scalar(std::string name, const std::vector<double>& values) {
  Factor f{std::move(name), {}};
  f.values.reserve(values.size());
  for (double v : values) f.values.push_back(Point::Constant(1, v));
  return f;
}

FactorGrid::FactorGrid(std::vector<Factor> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw InvalidArgument("FactorGrid: at least one factor is required");
  size_ = 1;
  for (const auto& f : factors_) {
    if (f.values.empty()) throw InvalidArgument("FactorGrid: factor '" + f.name + "' is empty");
    const Eigen::Index width = f.width();
    if (width < 1) throw InvalidArgument("FactorGrid: factor '" + f.name + "' has zero width");
    for (std::size_t a = 0; a < f.values.size(); ++a) {
      if (f.values[a].size() != width) {
        throw InvalidArgument("FactorGrid: factor '" + f.name + "' mixes value widths");
      }
      if (!f.values[a].allFinite()) {
        throw InvalidArgument("FactorGrid: factor '" + f.name + "' has a non-finite value");
      }
      for (std::size_t b = 0; b < a; ++b) {
        if (f.values[a] == f.values[b]) {
          throw InvalidArgument("FactorGrid: factor '" + f.name + "' has duplicate values");
        }
      }
    }
    offsets_.push_back(point_dim_);
    point_dim_ += width;
    size_ *= f.values.size();
  }
  strides_.assign(factors_.size(), 1);
  for (std::size_t i = factors_.size() - 1; i > 0; --i) {
    strides_[i - 1] = strides_[i] * factors_[i].values.size();
  }
}

std::vector<std::size_t> FactorGrid::shape() const {
  std::vector<std::size_t> s;
  s.reserve(factors_.size());
  for (const auto& f : factors_) s.push_back(f.values.size());
  return s;
}

std::size_t FactorGrid::index_of(std::span<const std::size_t> tuple) const {
  if (tuple.size() != factors_.size()) {
    throw InvalidArgument("FactorGrid::index_of: tuple has wrong arity");
  }
  std::size_t index = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i] >= factors_[i].values.size()) {
      throw InvalidArgument("FactorGrid::index_of: value index out of range");
    }
    index += tuple[i] * strides_[i];
  }
  return index;
}

std::vector<std::size_t> FactorGrid::tuple_of(std::size_t index) const {
  if (index >= size_) throw InvalidArgument("FactorGrid::tuple_of: index out of range");
  std::vector<std::size_t> tuple(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) tuple[i] = coordinate(index, i);
  return tuple;
}

std::size_t FactorGrid::coordinate(std::size_t index, std::size_t i) const {
  return (index / strides_[i]) % factors_[i].values.size();
}

Point FactorGrid::point(std::size_t index) const {
  Point p(point_dim_);
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    p.segment(offsets_[i], factors_[i].width()) = factors_[i].values[coordinate(index, i)];
  }
  return p;
}

PointSet FactorGrid::points() const {
  PointSet all(static_cast<Eigen::Index>(size_), point_dim_);
  for (std::size_t r = 0; r < size_; ++r) all.row(static_cast<Eigen::Index>(r)) = point(r);
  return all;
}

bool operator==(const FactorGrid& a, const FactorGrid& b) {
  if (a.factors_.size() != b.factors_.size()) return false;
  for (std::size_t i = 0; i < a.factors_.size(); ++i) {
    const auto& fa = a.factors_[i];
    const auto& fb = b.factors_[i];
    if (fa.name != fb.name || fa.values.size() != fb.values.size()) return false;
    for (std::size_t v = 0; v < fa.values.size(); ++v) {
      if (fa.values[v].size() != fb.values[v].size() || fa.values[v] != fb.values[v]) {
        return false;
      }
    }
  }
  return true;
}

FactorGrid uniform_grid(std::size_t n_factors, const std::vector<double>& values) {
  std::vector<Factor> factors;
  for (std::size_t i = 0; i < n_factors; ++i) {
    factors.push_back(Factor::scalar("y" + std::to_string(i + 1), values));
  }
  return FactorGrid(std::move(factors));
}

Slice slice_fixing(const FactorGrid& grid, std::size_t i, std::size_t v) {
  if (i >= grid.num_factors()) throw InvalidArgument("slice_fixing: factor index out of range");
  if (v >= grid.factor(i).values.size()) {
    throw InvalidArgument("slice_fixing: value index out of range");
  }
  Slice slice{i, v, {}};
  slice.indices.reserve(grid.size() / grid.factor(i).values.size());
  // Enumeration order is row-major, so filtering preserves the row-major
  // order of the complement.
  for (std::size_t r = 0; r < grid.size(); ++r) {
    if (grid.coordinate(r, i) == v) slice.indices.push_back(r);
  }
  return slice;
}

CodePartition::CodePartition(std::vector<Eigen::Index> block_dims) : dims_(std::move(block_dims)) {
  if (dims_.empty()) throw InvalidArgument("CodePartition: no blocks");
  for (const auto d : dims_) {
    if (d < 1) throw InvalidArgument("CodePartition: block widths must be >= 1");
    offsets_.push_back(total_);
    total_ += d;
  }
}

CodeTable::CodeTable(FactorGrid grid, CodePartition partition, PointSet codes)
    : grid_(std::move(grid)), partition_(std::move(partition)), codes_(std::move(codes)) {
  if (partition_.num_blocks() != grid_.num_factors()) {
    throw InvalidArgument("CodeTable: partition has " + std::to_string(partition_.num_blocks()) +
                          " blocks for " + std::to_string(grid_.num_factors()) + " factors");
  }
  if (codes_.cols() != partition_.total_dim()) {
    throw InvalidArgument("CodeTable: code width does not match the partition");
  }
  if (static_cast<std::size_t>(codes_.rows()) != grid_.size()) {
    throw InvalidArgument("CodeTable: row count does not match the grid size");
  }
  if (!codes_.allFinite()) throw InvalidArgument("CodeTable: non-finite code entry");
}

PointSet component_codes(const CodeTable& table, std::size_t i,
                         std::span<const std::size_t> indices) {
  if (i >= table.partition().num_blocks()) {
    throw InvalidArgument("component_codes: block index out of range");
  }
  PointSet out(static_cast<Eigen::Index>(indices.size()), table.partition().block_dim(i));
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= table.grid().size()) {
      throw InvalidArgument("component_codes: row index out of range");
    }
    out.row(static_cast<Eigen::Index>(k)) = table.component(indices[k], i);
  }
  return out;
}

}  // namespace dismetrics
