#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "dismetrics/error.hpp"
#include "dismetrics/metrics.hpp"

namespace dismetrics {

namespace {

constexpr std::array<std::pair<MetricId, std::string_view>, 7> kMetricNames{{
    {MetricId::approximation, "approximation"},
    {MetricId::constancy, "constancy"},
    {MetricId::left_inverse, "left_inverse"},
    {MetricId::contraction, "contraction"},
    {MetricId::equivariance, "equivariance"},
    {MetricId::output_independence, "output_independence"},
    {MetricId::input_independence, "input_independence"},
}};

}  // namespace

std::string_view to_string(MetricId id) noexcept {
  for (const auto& [m, name] : kMetricNames) {
    if (m == id) return name;
  }
  return "unknown";
}

MetricId parse_metric(std::string_view name) {
  for (const auto& [m, n] : kMetricNames) {
    if (n == name) return m;
  }
  throw InvalidArgument("unknown metric '" + std::string(name) + "'");
}

bool MetricReport::recomputes() const {
  if (!outer || per_component.empty()) return true;
  std::vector<double> values;
  values.reserve(per_component.size());
  for (QValue q : per_component) values.push_back(q.value());
  const double expected = aggregate(*outer, values);
  const double got = overall.value();
  if (*outer == Aggregator::max || *outer == Aggregator::median) return expected == got;
  if (expected == got) return true;
  return std::abs(expected - got) <= 1e-12 * std::max(std::abs(expected), std::abs(got));
}

}  // namespace dismetrics
