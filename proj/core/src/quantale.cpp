#include "dismetrics/quantale.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dismetrics/error.hpp"

namespace dismetrics {

QValue::QValue(double value) : value_(value) {
  if (std::isnan(value)) {
    throw InvalidArgument("QValue: NaN is not an element of [0, inf]");
  }
  if (value < 0.0) {
    throw InvalidArgument("QValue: negative value " + std::to_string(value));
  }
  // Normalise -0.0 so that bit-level comparisons of reports are stable.
  if (value_ == 0.0) value_ = 0.0;
}

bool QValue::is_finite() const noexcept { return std::isfinite(value_); }

bool precedes(QValue p, QValue q) noexcept { return p.value() >= q.value(); }

QValue meet(QValue a, QValue b) noexcept { return std::max(a, b); }

QValue join(QValue a, QValue b) noexcept { return std::min(a, b); }

QValue tensor(QValue a, QValue b) noexcept {
  // inf + x = inf for all x >= 0, so plain addition is already absorbing.
  return QValue(a.value() + b.value());
}

QValue hom(QValue s, QValue t) noexcept {
  if (!s.is_finite()) return QValue::top();
  if (!t.is_finite()) return QValue::bottom();
  return t.value() > s.value() ? QValue(t.value() - s.value()) : QValue::top();
}

bool check_adjunction(std::span<const QTriple> samples) noexcept {
  return std::all_of(samples.begin(), samples.end(), [](const QTriple& x) {
    const auto& [q, s, t] = x;
    const bool lhs = precedes(tensor(q, s), t);
    const bool rhs = precedes(q, hom(s, t));
    return lhs == rhs;
  });
}

UnitQ::UnitQ(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw InvalidArgument("UnitQ: value outside [0, 1]");
  }
}

UnitQ tensor(UnitQ a, UnitQ b) noexcept { return UnitQ(a.value() * b.value()); }

UnitQ to_unit(QValue a) noexcept { return UnitQ(std::exp(-a.value())); }

QValue from_unit(UnitQ u) noexcept {
  if (u.value() == 0.0) return QValue::bottom();
  return QValue(-std::log(u.value()));
}

}  // namespace dismetrics
