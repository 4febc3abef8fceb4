#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ptd/measurements.hpp"
#include "ptd/states.hpp"

namespace ptd {

inline constexpr double kMajorizationTolerance = 1e-9;

// Non-negative vector kept alongside its decreasing rearrangement and the
// prefix sums of that rearrangement.
class OrderedVector {
 public:
  // Throws NegativeEntry on any value < 0.
  explicit OrderedVector(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }
  const std::vector<double>& decreasing() const noexcept { return decreasing_; }
  const std::vector<double>& prefix_sums() const noexcept { return prefix_; }
  double total() const noexcept { return prefix_.empty() ? 0.0 : prefix_.back(); }

  // Sum of the k largest entries; k past the end counts padding zeros.
  double top_sum(std::size_t k) const;
  OrderedVector padded(std::size_t length) const;

 private:
  std::vector<double> values_;
  std::vector<double> decreasing_;
  std::vector<double> prefix_;
};

struct SubmajorizationReport {
  bool holds = false;
  std::size_t padded_length = 0;
  // margins[k-1] = sum_{j<=k} y_j - sum_{j<=k} x_j
  std::vector<double> margins;
  double total_difference = 0.0;  // sum(y) - sum(x)

  double worst_margin() const;
};

// x weakly submajorized by y: every prefix sum of x's decreasing
// rearrangement is at most y's plus tol. Shorter vectors are zero-padded.
SubmajorizationReport weakly_submajorized(const OrderedVector& x, const OrderedVector& y,
                                          double tol = kMajorizationTolerance);

// Weak submajorization with equal totals (|sum x - sum y| <= tol).
bool majorized(const OrderedVector& x, const OrderedVector& y,
               double tol = kMajorizationTolerance);

struct GapMajorizationCheck {
  bool weak = false;  // |p - q| weakly submajorized by s(rho - sigma)
  bool full = false;  // additionally the L1 distance equals the trace distance
  SubmajorizationReport report;
  double classical_l1 = 0.0;     // (1/2) sum |p - q|
  double trace_distance = 0.0;   // D_d
};

// Measured gaps |p - q| against s(rho - sigma). Requires povm.small_trace();
// throws HypothesisViolated otherwise.
GapMajorizationCheck check_gap_majorization(const Povm& povm, const DensityMatrix& rho,
                                            const DensityMatrix& sigma,
                                            double tol = kMajorizationTolerance);

}  // namespace ptd
