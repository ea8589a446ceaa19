#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dismetrics/types.hpp"

namespace dismetrics {

// One factor of variation: a named, finite list of distinct values. Every
// value of a factor has the same width (1 for scalar factors).
struct Factor {
  std::string name;
  std::vector<Point> values;

  static Factor scalar(std::string name, const std::vector<double>& values);
  Eigen::Index width() const noexcept { return values.empty() ? 0 : values.front().size(); }
};

// The full Cartesian product Y = Y_1 x ... x Y_N, enumerated row-major: the
// last factor varies fastest.
class FactorGrid {
 public:
  // Throws InvalidArgument when there are no factors, a factor is empty,
  // has duplicate or non-finite values, or mixes widths.
  explicit FactorGrid(std::vector<Factor> factors);

  std::size_t num_factors() const noexcept { return factors_.size(); }
  const Factor& factor(std::size_t i) const { return factors_.at(i); }
  const std::vector<Factor>& factors() const noexcept { return factors_; }
  std::size_t size() const noexcept { return size_; }
  std::vector<std::size_t> shape() const;

  std::size_t index_of(std::span<const std::size_t> tuple) const;
  std::vector<std::size_t> tuple_of(std::size_t index) const;
  // Value index of factor i at grid point `index`.
  std::size_t coordinate(std::size_t index, std::size_t i) const;

  // Width of a concatenated factor tuple.
  Eigen::Index point_dimension() const noexcept { return point_dim_; }
  // Column offset of factor i inside a concatenated tuple.
  Eigen::Index factor_offset(std::size_t i) const { return offsets_.at(i); }
  // Concatenated factor values of one grid point.
  Point point(std::size_t index) const;
  // All grid points, one per row, in enumeration order.
  PointSet points() const;

  friend bool operator==(const FactorGrid& a, const FactorGrid& b);

 private:
  std::vector<Factor> factors_;
  std::vector<std::size_t> strides_;
  std::vector<Eigen::Index> offsets_;
  std::size_t size_ = 0;
  Eigen::Index point_dim_ = 0;
};

// n_factors scalar factors named y1..yN sharing one value list.
FactorGrid uniform_grid(std::size_t n_factors, const std::vector<double>& values);

// The grid points whose factor i takes its v-th value, listed in row-major
// order of the remaining factors.
struct Slice {
  std::size_t fixed_factor = 0;
  std::size_t fixed_value = 0;
  std::vector<std::size_t> indices;
};

// Throws InvalidArgument for out-of-range i or v.
Slice slice_fixing(const FactorGrid& grid, std::size_t i, std::size_t v);

// Widths of the N code blocks Z_1 x ... x Z_N.
class CodePartition {
 public:
  CodePartition() = default;
  // Throws InvalidArgument if empty or any width is < 1.
  explicit CodePartition(std::vector<Eigen::Index> block_dims);

  std::size_t num_blocks() const noexcept { return dims_.size(); }
  Eigen::Index block_dim(std::size_t i) const { return dims_.at(i); }
  Eigen::Index block_offset(std::size_t i) const { return offsets_.at(i); }
  Eigen::Index total_dim() const noexcept { return total_; }
  const std::vector<Eigen::Index>& dims() const noexcept { return dims_; }

  friend bool operator==(const CodePartition&, const CodePartition&) = default;

 private:
  std::vector<Eigen::Index> dims_;
  std::vector<Eigen::Index> offsets_;
  Eigen::Index total_ = 0;
};

// The sampled code map m: Y -> Z, one code row per grid point.
class CodeTable {
 public:
  // Throws InvalidArgument if the partition and grid disagree on N, the
  // code width differs from the partition total, the row count differs from
  // the grid size, or any entry is non-finite.
  CodeTable(FactorGrid grid, CodePartition partition, PointSet codes);

  const FactorGrid& grid() const noexcept { return grid_; }
  const CodePartition& partition() const noexcept { return partition_; }
  const PointSet& codes() const noexcept { return codes_; }

  // Block i of row r, m_i(y).
  auto component(std::size_t r, std::size_t i) const {
    return codes_.row(static_cast<Eigen::Index>(r))
        .segment(partition_.block_offset(i), partition_.block_dim(i));
  }

 private:
  FactorGrid grid_;
  CodePartition partition_;
  PointSet codes_;
};

// Block i of the selected code rows, in the given order.
PointSet component_codes(const CodeTable& table, std::size_t i,
                         std::span<const std::size_t> indices);

}  // namespace dismetrics
