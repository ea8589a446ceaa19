#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "dismetrics/dataset_io.hpp"
#include "dismetrics/grid.hpp"

namespace dismetrics {

struct GeneratorSpec {
  std::uint64_t seed = 0;
  std::size_t num_factors = 3;
  std::size_t levels = 11;  // factor values k * scale / (levels - 1), k = 0..levels-1
  double scale = 1.0;
};

// y -> a * exp(R exp(R y)) + b on the grid of `spec`, with R a seeded random
// rotation and a, b chosen so every output coordinate spans [0, scale].
// The exponentials act on the unit grid; scale multiplies factors and
// observations alike.
class Generator {
 public:
  // Throws InvalidArgument for zero factors, fewer than 2 levels, or a
  // non-positive or non-finite scale.
  explicit Generator(const GeneratorSpec& spec);

  const GeneratorSpec& spec() const noexcept { return spec_; }
  const FactorGrid& grid() const noexcept { return grid_; }
  const Eigen::MatrixXd& rotation() const noexcept { return rotation_; }
  const Eigen::VectorXd& a() const noexcept { return a_; }
  const Eigen::VectorXd& b() const noexcept { return b_; }
  // One observation row per grid point.
  const PointSet& observations() const noexcept { return x_; }

 private:
  GeneratorSpec spec_;
  FactorGrid grid_;
  Eigen::MatrixXd rotation_;
  Eigen::VectorXd a_;
  Eigen::VectorXd b_;
  PointSet x_;
};

// Orthogonal N x N matrix with determinant +1: Householder QR of a seeded
// standard-normal matrix, columns sign-normalised so diag(R) > 0.
Eigen::MatrixXd random_rotation(std::size_t n, std::uint64_t seed);

enum class EncoderKind { identity, constant, rotation, duplicate, redundancy, product, inverse };

std::string_view to_string(EncoderKind kind) noexcept;
// Throws InvalidArgument on an unknown name.
EncoderKind parse_encoder(std::string_view name);
const std::array<EncoderKind, 7>& all_encoders() noexcept;

//   identity    g(y)                              blocks (1,..,1)
//   constant    0                                 blocks (1,..,1)
//   rotation    R y                               blocks (1,..,1)
//   duplicate   (y, .., y, y_N), N-1 full copies  blocks (N,..,N,1)
//   redundancy  ((y1, -y1), y2, .., yN)           blocks (2,1,..,1)
//   product     block i = center of the smallest ball around
//               {g_i(y_i, y')} over all complements y'
//   inverse     A g(y), A = argmin_A max_y ||A g(y) - y||
Dataset encode(EncoderKind kind, const Generator& generator);

}  // namespace dismetrics
