#include "ptd/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ptd/distances.hpp"
#include "ptd/error.hpp"

namespace ptd {

OrderedVector::OrderedVector(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] >= 0.0)) {
      throw Error(ErrorCode::NegativeEntry,
                  "entry " + std::to_string(i) + " = " + std::to_string(values_[i]), values_[i],
                  i);
    }
  }
  decreasing_ = values_;
  std::stable_sort(decreasing_.begin(), decreasing_.end(), std::greater<>());
  prefix_.reserve(decreasing_.size());
  double s = 0.0;
  for (double v : decreasing_) {
    s += v;
    prefix_.push_back(s);
  }
}

double OrderedVector::top_sum(std::size_t k) const {
  if (k == 0 || prefix_.empty()) return 0.0;
  return prefix_[std::min(k, prefix_.size()) - 1];
}

OrderedVector OrderedVector::padded(std::size_t length) const {
  std::vector<double> v = values_;
  if (v.size() < length) v.resize(length, 0.0);
  return OrderedVector(std::move(v));
}

double SubmajorizationReport::worst_margin() const {
  return margins.empty() ? 0.0 : *std::min_element(margins.begin(), margins.end());
}

SubmajorizationReport weakly_submajorized(const OrderedVector& x, const OrderedVector& y,
                                          double tol) {
  SubmajorizationReport report;
  report.padded_length = std::max(x.size(), y.size());
  report.holds = true;
  report.margins.reserve(report.padded_length);
  for (std::size_t k = 1; k <= report.padded_length; ++k) {
    const double margin = y.top_sum(k) - x.top_sum(k);
    report.margins.push_back(margin);
    if (margin < -tol) report.holds = false;
  }
  report.total_difference = y.total() - x.total();
  return report;
}

bool majorized(const OrderedVector& x, const OrderedVector& y, double tol) {
  const auto report = weakly_submajorized(x, y, tol);
  return report.holds && std::abs(report.total_difference) <= tol;
}

GapMajorizationCheck check_gap_majorization(const Povm& povm, const DensityMatrix& rho,
                                            const DensityMatrix& sigma, double tol) {
  if (!povm.small_trace()) {
    const auto& traces = povm.traces();
    const auto worst = std::max_element(traces.begin(), traces.end());
    throw Error(ErrorCode::HypothesisViolated,
                "POVM element " + std::to_string(worst - traces.begin()) + " has trace " +
                    std::to_string(*worst),
                *worst, static_cast<std::size_t>(worst - traces.begin()));
  }
  const auto stats = measure_pair(povm, rho, sigma);
  const auto jordan = jordan_decomposition(rho, sigma);
  const OrderedVector gaps(stats.gaps_sorted);
  const OrderedVector singular(jordan.singular);

  GapMajorizationCheck check;
  check.report = weakly_submajorized(gaps, singular, tol);
  check.weak = check.report.holds;
  check.classical_l1 = 0.5 * gaps.total();
  check.trace_distance = 0.5 * singular.total();
  check.full = check.weak && std::abs(check.classical_l1 - check.trace_distance) <= tol;
  return check;
}

}  // namespace ptd
