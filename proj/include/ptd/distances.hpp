#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "ptd/matrix.hpp"
#include "ptd/random.hpp"
#include "ptd/states.hpp"

namespace ptd {

// Eigenvalues of rho - sigma with |lambda| below this are kernel, not support.
inline constexpr double kSupportThreshold = 1e-12;

// Sum of the k largest singular values. k = 1 is the operator norm,
// k = min(rows, cols) the trace norm.
double ky_fan_norm(const ComplexMatrix& x, std::size_t k);

enum class Side { Positive, Negative };

// One eigenpair of rho - sigma placed in the decreasing merge of kappa and tau.
struct SupportEntry {
  Side side;
  std::size_t index;  // into kappa (Positive) or tau (Negative)
  double value;
};

// rho - sigma = R - T with R, T >= 0 and R T = 0.
struct JordanDecomposition {
  ComplexMatrix positive_part;        // R
  ComplexMatrix negative_part;        // T
  std::vector<double> kappa;          // eigenvalues of R, decreasing, > 0
  ComplexMatrix kappa_vectors;        // d x |kappa|, columns |r>
  std::vector<double> tau;            // eigenvalues of T, decreasing, > 0
  ComplexMatrix tau_vectors;          // d x |tau|, columns |t>
  ComplexMatrix kernel_vectors;       // d x (d - |kappa| - |tau|)
  std::vector<SupportEntry> merged;   // kappa and tau merged, decreasing, R first on ties
  std::vector<double> singular;       // merged values padded with zeros to d

  std::size_t dim() const noexcept { return singular.size(); }
  // |rho - sigma| = R + T
  ComplexMatrix absolute_value() const { return positive_part + negative_part; }
};

// Jordan decomposition of the Hermitian difference a - b; a and b must be
// square of equal size. Used for unnormalized channel outputs as well as states.
JordanDecomposition jordan_decomposition(const ComplexMatrix& a, const ComplexMatrix& b);
JordanDecomposition jordan_decomposition(const DensityMatrix& rho, const DensityMatrix& sigma);

// (D_1, ..., D_d), nondecreasing in k.
struct DistanceProfile {
  std::size_t dim = 0;
  std::vector<double> values;

  double at(std::size_t k) const;  // 1-based
  double trace_distance() const { return values.empty() ? 0.0 : values.back(); }
};

// D_k = (1/2) ||rho - sigma||_(k).
double partitioned_distance(const DensityMatrix& rho, const DensityMatrix& sigma, std::size_t k);
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

DistanceProfile distance_profile(const DensityMatrix& rho, const DensityMatrix& sigma);
DistanceProfile distance_profile(const JordanDecomposition& jordan);
// Half prefix sums of a singular-value vector, as a profile of its length.
DistanceProfile profile_from_singular_values(std::span<const double> singular);

// (1/2) sum of the k largest |p_i - q_i|. Tolerates entries down to -1e-12
// and sums within 1e-9 of 1, renormalizing both vectors first.
double classical_partitioned_distance(std::span<const double> p, std::span<const double> q,
                                      std::size_t k);

struct ProjectorPair {
  ComplexMatrix positive;  // P_R
  ComplexMatrix negative;  // P_T
  std::size_t positive_rank = 0;
  std::size_t negative_rank = 0;
};

// Projectors onto the eigenvectors carrying the k largest singular values,
// split by sign, so that tr[(P_R - P_T)(rho - sigma)] = 2 D_k.
ProjectorPair optimal_projectors(const DensityMatrix& rho, const DensityMatrix& sigma,
                                 std::size_t k);
ProjectorPair optimal_projectors(const JordanDecomposition& jordan, std::size_t k);

// Randomized check of the Ky Fan maximum principle for a Hermitian h: the
// largest tr(Theta h) over sampled rank-k projectors and sampled operators
// 0 <= Theta <= 1 with tr Theta = k, plus the top-k eigenprojector itself.
struct KyFanCheck {
  double top_sum = 0.0;              // sum of the k largest eigenvalues
  double eigenprojector_value = 0.0; // tr(P_top h)
  double max_projector = 0.0;        // best random rank-k projector
  double max_constrained = 0.0;      // best random Theta
  double max_observed = 0.0;         // max of all of the above

  bool within_bound(double tol) const { return max_observed <= top_sum + tol; }
  bool attained(double tol) const;
};

KyFanCheck max_over_constrained_operators(const ComplexMatrix& h, std::size_t k,
                                          std::size_t trials, Rng& rng);

}  // namespace ptd
