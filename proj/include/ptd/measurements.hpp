#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ptd/matrix.hpp"
#include "ptd/random.hpp"
#include "ptd/states.hpp"

namespace ptd {

inline constexpr double kPositivityTolerance = 1e-10;
inline constexpr double kCompletenessTolerance = 1e-9;

// Positive operators summing to the identity.
class Povm {
 public:
  // Throws ShapeMismatch for an empty or ragged list, ElementNotPositive
  // (index, most negative eigenvalue) and CompletenessViolated (max-entry
  // residual of sum - I).
  static Povm validate(std::vector<ComplexMatrix> elements);

  std::size_t dim() const noexcept { return elements_.front().rows(); }
  std::size_t outcomes() const noexcept { return elements_.size(); }
  const std::vector<ComplexMatrix>& elements() const noexcept { return elements_; }
  const std::vector<double>& traces() const noexcept { return traces_; }
  // Every element has tr(M_m) <= 1 + 1e-9, the hypothesis under which the
  // measured gaps are bounded by the partitioned distances.
  bool small_trace() const noexcept { return small_trace_; }
  double completeness_residual() const noexcept { return completeness_residual_; }

 private:
  Povm() = default;
  std::vector<ComplexMatrix> elements_;
  std::vector<double> traces_;
  bool small_trace_ = true;
  double completeness_residual_ = 0.0;
};

inline Povm validate_povm(std::vector<ComplexMatrix> elements) {
  return Povm::validate(std::move(elements));
}

struct MeasurementStats {
  std::vector<double> p;            // tr(M_m rho)
  std::vector<double> q;            // tr(M_m sigma)
  std::vector<double> gaps_sorted;  // |p_m - q_m| decreasing, zero-padded to max(n, d)
};

MeasurementStats measure_pair(const Povm& povm, const DensityMatrix& rho,
                              const DensityMatrix& sigma);

// The projective measurement onto the eigenvectors of rho - sigma: support
// vectors in decreasing singular-value order, then a basis of the kernel.
// Its sorted gaps reproduce s_j(rho - sigma) for every j.
Povm optimal_pvm(const DensityMatrix& rho, const DensityMatrix& sigma);

// {S^{-1/2} |v_m><v_m| S^{-1/2}} with S = sum_m |v_m><v_m|. Every element is
// rank one, hence has trace at most one.
Povm rank_one_povm_from_vectors(std::span<const std::vector<Complex>> vectors);

// n_outcomes Haar-random vectors fed through rank_one_povm_from_vectors.
// Resamples when S is near-singular; throws SingularNormalizer after 32 tries.
Povm random_rank_one_povm(std::size_t dim, std::size_t n_outcomes, Rng& rng);

struct MeasurementBoundReport {
  double max_observed = 0.0;  // best classical D_k over sampled POVMs and the optimal PVM
  double bound = 0.0;         // D_k(rho, sigma)
  double optimal_value = 0.0; // classical D_k under optimal_pvm
  double max_random = 0.0;    // best over the random rank-one POVMs only
  bool saturated = false;     // |optimal_value - bound| <= 1e-9
  bool within_bound = false;  // max_observed <= bound + 1e-9
};

// Randomized check that no trace-bounded POVM beats D_k and that the
// optimal PVM attains it. Trial t uses Rng::stream(seed, t) and draws a
// rank-one POVM with between dim and 2 * dim + 2 outcomes.
MeasurementBoundReport verify_measurement_bound(const DensityMatrix& rho,
                                                const DensityMatrix& sigma, std::size_t k,
                                                std::size_t trials, std::uint64_t seed);

}  // namespace ptd
