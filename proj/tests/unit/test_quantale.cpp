#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "dismetrics/error.hpp"
#include "dismetrics/quantale.hpp"

using namespace dismetrics;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

QValue q(double v) { return QValue(v); }

}  // namespace

TEST(QValue, RejectsNanAndNegative) {
  EXPECT_THROW(q(std::nan("")), InvalidArgument);
  EXPECT_THROW(q(-1e-300), InvalidArgument);
  EXPECT_NO_THROW(q(kInf));
  EXPECT_EQ(q(-0.0).value(), 0.0);
  EXPECT_FALSE(std::signbit(q(-0.0).value()));
}

TEST(QValue, TopAndBottom) {
  EXPECT_EQ(QValue::top().value(), 0.0);
  EXPECT_TRUE(std::isinf(QValue::bottom().value()));
  EXPECT_TRUE(precedes(QValue::bottom(), QValue::top()));
  EXPECT_FALSE(precedes(QValue::top(), QValue::bottom()));
  EXPECT_TRUE(precedes(q(5), q(3)));
}

TEST(Quantale, MeetJoin) {
  EXPECT_EQ(meet(q(3), q(5)).value(), 5.0);
  EXPECT_EQ(meet(q(0), q(0)).value(), 0.0);
  EXPECT_EQ(meet(q(kInf), q(2)).value(), kInf);
  EXPECT_EQ(join(q(3), q(5)).value(), 3.0);
  EXPECT_EQ(join(q(kInf), q(2)).value(), 2.0);
  EXPECT_EQ(join(q(0), q(7)).value(), 0.0);
}

TEST(Quantale, Tensor) {
  EXPECT_EQ(tensor(q(1.5), q(2.5)).value(), 4.0);
  EXPECT_EQ(tensor(q(0), q(3.25)).value(), 3.25);
  EXPECT_EQ(tensor(q(kInf), q(0)).value(), kInf);
}

TEST(Quantale, Hom) {
  EXPECT_EQ(hom(q(5), q(3)).value(), 0.0);
  EXPECT_EQ(hom(q(3), q(5)).value(), 2.0);
  EXPECT_EQ(hom(q(1.75), q(1.75)).value(), 0.0);
  EXPECT_EQ(hom(q(kInf), q(4)).value(), 0.0);
  EXPECT_EQ(hom(q(kInf), q(kInf)).value(), 0.0);
  EXPECT_EQ(hom(q(4), q(kInf)).value(), kInf);
}

TEST(Quantale, AdjunctionExamples) {
  const std::vector<QTriple> yes{{q(2), q(3), q(5)}};
  EXPECT_TRUE(check_adjunction(yes));
  const std::vector<QTriple> both_false{{q(1), q(3), q(5)}};
  EXPECT_TRUE(check_adjunction(both_false));
}

TEST(Quantale, AdjunctionRandomTriples) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::vector<QTriple> samples;
  for (int k = 0; k < 1000; ++k) samples.emplace_back(q(u(rng)), q(u(rng)), q(u(rng)));
  EXPECT_TRUE(check_adjunction(samples));
}

TEST(Quantale, AdjunctionInfiniteBoundary) {
  std::vector<QTriple> samples;
  const std::vector<double> vals{0.0, 1.0, 2.5, kInf};
  for (double a : vals) {
    for (double b : vals) {
      for (double c : vals) samples.emplace_back(q(a), q(b), q(c));
    }
  }
  EXPECT_TRUE(check_adjunction(samples));
}

TEST(BoolQ, Operations) {
  EXPECT_EQ(meet(BoolQ{true}, BoolQ{false}), BoolQ{false});
  EXPECT_EQ(join(BoolQ{true}, BoolQ{false}), BoolQ{true});
  EXPECT_EQ(hom(BoolQ{true}, BoolQ{false}), BoolQ{false});
  EXPECT_EQ(hom(BoolQ{false}, BoolQ{false}), BoolQ{true});
  EXPECT_EQ(holds(q(0)), BoolQ::top());
  EXPECT_EQ(holds(q(0.1)), BoolQ::bottom());
  // Adjunction in the Boolean quantale, exhaustively.
  for (bool a : {false, true}) {
    for (bool s : {false, true}) {
      for (bool t : {false, true}) {
        const bool lhs = !tensor(BoolQ{a}, BoolQ{s}).value || t;
        const bool rhs = !a || hom(BoolQ{s}, BoolQ{t}).value;
        EXPECT_EQ(lhs, rhs);
      }
    }
  }
}

TEST(UnitQ, RoundTrip) {
  EXPECT_EQ(to_unit(q(0)).value(), 1.0);
  EXPECT_EQ(from_unit(UnitQ(1.0)).value(), 0.0);
  EXPECT_EQ(to_unit(QValue::bottom()).value(), 0.0);
  EXPECT_TRUE(std::isinf(from_unit(UnitQ(0.0)).value()));
  EXPECT_NEAR(from_unit(to_unit(q(2.5))).value(), 2.5, 1e-12);
  EXPECT_THROW(UnitQ(1.5), InvalidArgument);
  EXPECT_THROW(UnitQ(-0.5), InvalidArgument);
}

TEST(UnitQ, TensorIsProduct) {
  const QValue a = q(0.7), b = q(1.9);
  EXPECT_NEAR(tensor(to_unit(a), to_unit(b)).value(), to_unit(tensor(a, b)).value(), 1e-15);
}
