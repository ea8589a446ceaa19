#include "dismetrics/synth.hpp"

#include <Eigen/LU>
#include <Eigen/QR>

#include <cmath>
#include <random>
#include <string>

#include "dismetrics/error.hpp"
#include "dismetrics/solvers.hpp"

namespace dismetrics {

namespace {

constexpr std::array<EncoderKind, 7> kEncoders{
    EncoderKind::identity,   EncoderKind::constant, EncoderKind::rotation, EncoderKind::duplicate,
    EncoderKind::redundancy, EncoderKind::product,  EncoderKind::inverse,
};

const GeneratorSpec& validated(const GeneratorSpec& spec) {
  if (spec.num_factors == 0) throw InvalidArgument("generator: at least one factor required");
  if (spec.levels < 2) throw InvalidArgument("generator: at least two levels required");
  if (!std::isfinite(spec.scale) || spec.scale <= 0.0) {
    throw InvalidArgument("generator: scale must be positive and finite");
  }
  return spec;
}

std::vector<double> level_values(std::size_t levels, double scale) {
  std::vector<double> v(levels);
  const double step = static_cast<double>(levels - 1);
  for (std::size_t k = 0; k < levels; ++k) v[k] = static_cast<double>(k) * scale / step;
  return v;
}

std::vector<Eigen::Index> uniform_blocks(std::size_t n, Eigen::Index width = 1) {
  return std::vector<Eigen::Index>(n, width);
}

}  // namespace

Eigen::MatrixXd random_rotation(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = normal(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd upper = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < dim; ++c) {
    if (upper(c, c) < 0.0) q.col(c) = -q.col(c);
  }
  if (q.determinant() < 0.0) q.col(0) = -q.col(0);
  return q;
}

Generator::Generator(const GeneratorSpec& spec)
    : spec_(validated(spec)),
      grid_(uniform_grid(spec.num_factors, level_values(spec.levels, spec.scale))),
      rotation_(random_rotation(spec.num_factors, spec.seed)) {
  const FactorGrid unit = uniform_grid(spec.num_factors, level_values(spec.levels, 1.0));
  const PointSet y = unit.points();
  const Eigen::MatrixXd inner = (y * rotation_.transpose()).array().exp().matrix();
  const Eigen::MatrixXd raw = (inner * rotation_.transpose()).array().exp().matrix();

  const Eigen::VectorXd lo = raw.colwise().minCoeff().transpose();
  const Eigen::VectorXd hi = raw.colwise().maxCoeff().transpose();
  a_ = spec.scale * (hi - lo).cwiseInverse();
  b_ = -a_.cwiseProduct(lo);
  x_ = (raw.array().rowwise() * a_.transpose().array()).rowwise() + b_.transpose().array();
}

std::string_view to_string(EncoderKind kind) noexcept {
  switch (kind) {
    case EncoderKind::identity:
      return "identity";
    case EncoderKind::constant:
      return "constant";
    case EncoderKind::rotation:
      return "rotation";
    case EncoderKind::duplicate:
      return "duplicate";
    case EncoderKind::redundancy:
      return "redundancy";
    case EncoderKind::product:
      return "product";
    case EncoderKind::inverse:
      return "inverse";
  }
  return "identity";
}

EncoderKind parse_encoder(std::string_view name) {
  for (EncoderKind k : kEncoders) {
    if (to_string(k) == name) return k;
  }
  throw InvalidArgument("unknown encoder '" + std::string(name) + "'");
}

const std::array<EncoderKind, 7>& all_encoders() noexcept { return kEncoders; }

Dataset encode(EncoderKind kind, const Generator& generator) {
  const FactorGrid& grid = generator.grid();
  const std::size_t n = grid.num_factors();
  const auto dim = static_cast<Eigen::Index>(n);
  const PointSet y = grid.points();
  const PointSet& x = generator.observations();
  const auto rows = y.rows();

  std::vector<Eigen::Index> blocks = uniform_blocks(n);
  PointSet codes;
  switch (kind) {
    case EncoderKind::identity:
      codes = x;
      break;
    case EncoderKind::constant:
      codes = PointSet::Zero(rows, dim);
      break;
    case EncoderKind::rotation:
      codes = y * generator.rotation().transpose();
      break;
    case EncoderKind::duplicate: {
      blocks = uniform_blocks(n, dim);
      blocks.back() = 1;
      codes.resize(rows, dim * (dim - 1) + 1);
      for (Eigen::Index c = 0; c + 1 < dim; ++c) codes.middleCols(c * dim, dim) = y;
      codes.rightCols(1) = y.rightCols(1);
      break;
    }
    case EncoderKind::redundancy: {
      blocks.front() = 2;
      codes.resize(rows, dim + 1);
      codes.col(0) = y.col(0);
      codes.col(1) = -y.col(0);
      codes.rightCols(dim - 1) = y.rightCols(dim - 1);
      break;
    }
    case EncoderKind::product: {
      codes.resize(rows, dim);
      for (std::size_t i = 0; i < n; ++i) {
        const auto col = static_cast<Eigen::Index>(i);
        for (std::size_t v = 0; v < grid.factor(i).values.size(); ++v) {
          const Slice slice = slice_fixing(grid, i, v);
          PointSet values(static_cast<Eigen::Index>(slice.indices.size()), 1);
          for (std::size_t k = 0; k < slice.indices.size(); ++k) {
            values(static_cast<Eigen::Index>(k), 0) = x(static_cast<Eigen::Index>(slice.indices[k]), col);
          }
          const double center = smallest_enclosing_ball(values).center(0);
          for (std::size_t r : slice.indices) codes(static_cast<Eigen::Index>(r), col) = center;
        }
      }
      break;
    }
    case EncoderKind::inverse: {
      AffineFitOptions opts;
      opts.fit_offset = false;
      const AffineFit fit = affine_fit(x, y, FitObjective::minimax, opts);
      codes = x * fit.map.matrix.transpose();
      break;
    }
  }

  Provenance prov;
  prov.id = std::string(to_string(kind));
  prov.generator = "a*exp(R*exp(R*y))+b";
  prov.encoder = std::string(to_string(kind));
  prov.seed = generator.spec().seed;
  prov.scale = generator.spec().scale;
  return Dataset{CodeTable(grid, CodePartition(std::move(blocks)), std::move(codes)),
                 std::move(prov)};
}

}  // namespace dismetrics
