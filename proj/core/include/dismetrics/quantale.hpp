#pragma once

#include <compare>
#include <limits>
#include <span>
#include <tuple>

namespace dismetrics {

// An element of the Lawvere quantale ([0, inf], >=, +, 0).
//
// The quantale order is the reverse of the numeric order: `precedes(p, q)`
// holds when p >= q. Top is 0 (the unit of the monoidal product), bottom is
// +inf. Comparison operators on QValue use the *numeric* order, which is what
// callers want when sorting scores.
class QValue {
 public:
  constexpr QValue() noexcept = default;

  // Throws InvalidArgument on NaN or negative input.
  explicit QValue(double value);

  static constexpr QValue top() noexcept { return QValue(); }
  static QValue bottom() noexcept {
    return QValue(std::numeric_limits<double>::infinity());
  }

  constexpr double value() const noexcept { return value_; }
  bool is_finite() const noexcept;

  friend constexpr auto operator<=>(QValue, QValue) noexcept = default;

 private:
  double value_ = 0.0;
};

// p ⪯ q in the quantale order, i.e. p.value() >= q.value().
bool precedes(QValue p, QValue q) noexcept;

// Lattice meet (numeric max) and join (numeric min).
QValue meet(QValue a, QValue b) noexcept;
QValue join(QValue a, QValue b) noexcept;

// Monoidal product: addition with +inf absorbing.
QValue tensor(QValue a, QValue b) noexcept;

// Internal hom s ⊸ t: truncated subtraction max(t - s, 0), with
// hom(+inf, t) = 0 and hom(s, +inf) = +inf for finite s.
QValue hom(QValue s, QValue t) noexcept;

// True iff (q + s >= t) <=> (q >= hom(s, t)) for every sampled triple.
using QTriple = std::tuple<QValue, QValue, QValue>;
bool check_adjunction(std::span<const QTriple> samples) noexcept;

// The two-element quantale of truth values. Only used to cross-check metrics
// against the equational definitions they are derived from.
struct BoolQ {
  bool value = true;

  static constexpr BoolQ top() noexcept { return {true}; }
  static constexpr BoolQ bottom() noexcept { return {false}; }
  friend constexpr bool operator==(BoolQ, BoolQ) noexcept = default;
};

constexpr BoolQ meet(BoolQ a, BoolQ b) noexcept { return {a.value && b.value}; }
constexpr BoolQ join(BoolQ a, BoolQ b) noexcept { return {a.value || b.value}; }
constexpr BoolQ tensor(BoolQ a, BoolQ b) noexcept { return meet(a, b); }
constexpr BoolQ hom(BoolQ s, BoolQ t) noexcept { return {!s.value || t.value}; }

// Truth of "score is top": the Boolean shadow of a Lawvere score.
constexpr BoolQ holds(QValue q) noexcept { return {q.value() == 0.0}; }

// ([0, 1], <=, *, 1), isomorphic to the Lawvere quantale via exp(-x).
class UnitQ {
 public:
  constexpr UnitQ() noexcept = default;
  // Throws InvalidArgument outside [0, 1] or on NaN.
  explicit UnitQ(double value);

  constexpr double value() const noexcept { return value_; }
  friend constexpr auto operator<=>(UnitQ, UnitQ) noexcept = default;

 private:
  double value_ = 1.0;
};

UnitQ tensor(UnitQ a, UnitQ b) noexcept;

UnitQ to_unit(QValue a) noexcept;
QValue from_unit(UnitQ u) noexcept;

}  // namespace dismetrics
