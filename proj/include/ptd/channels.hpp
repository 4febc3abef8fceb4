#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ptd/distances.hpp"
#include "ptd/majorization.hpp"
#include "ptd/matrix.hpp"
#include "ptd/measurements.hpp"
#include "ptd/random.hpp"
#include "ptd/states.hpp"

namespace ptd {

inline constexpr double kChannelTolerance = 1e-9;

// Classification of a Kraus list from its two Gram sums
//   A = sum E_m^dagger E_m (input space)   B = sum E_m E_m^dagger (output space).
struct ChannelFlags {
  bool trace_preserving = false;    // A = 1
  bool trace_nonincreasing = false; // A <= 1
  bool unital = false;              // B = 1
  bool subunital = false;           // B <= 1, the condition that makes every D_k contract
  bool bistochastic = false;        // trace preserving and unital

  double trace_preserving_residual = 0.0;  // max |A - 1|
  double trace_excess = 0.0;               // lambda_max(A) - 1
  double unital_residual = 0.0;            // max |B - 1|
  double subunital_excess = 0.0;           // lambda_max(B) - 1
};

class KrausChannel {
 public:
  // Throws ShapeMismatch (empty or non-uniform list) and TraceIncreasing
  // (lambda_max(A) > 1 + tol).
  static KrausChannel build(std::vector<ComplexMatrix> kraus, double tol = kChannelTolerance);

  std::size_t dim_in() const noexcept { return kraus_.front().cols(); }
  std::size_t dim_out() const noexcept { return kraus_.front().rows(); }
  const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }
  const ChannelFlags& flags() const noexcept { return flags_; }

 private:
  KrausChannel() = default;
  std::vector<ComplexMatrix> kraus_;
  ChannelFlags flags_;
};

inline KrausChannel build_channel(std::vector<ComplexMatrix> kraus) {
  return KrausChannel::build(std::move(kraus));
}

// sum_m E_m X E_m^dagger for any dim_in x dim_in operator X.
ComplexMatrix apply_unnormalized(const KrausChannel& channel, const ComplexMatrix& x);

struct ChannelOutput {
  DensityMatrix state;               // E(rho) / tr E(rho)
  double success_probability = 0.0;  // tr E(rho)
};

// Throws DimensionMismatch and ZeroTrace (tr E(rho) below 1e-14).
ChannelOutput apply(const KrausChannel& channel, const DensityMatrix& rho);

// rho -> (1 - p) rho + p 1/d, written with the d^2 Weyl operators X^a Z^b.
KrausChannel depolarizing(std::size_t dim, double p);
KrausChannel phase_damping(double lambda);
KrausChannel amplitude_damping(double gamma);
// E_m = sqrt(w_m) U_m.
KrausChannel unitary_mixture(std::span<const double> weights,
                             std::span<const ComplexMatrix> unitaries);
// E_i = |f(i)><i|; dim_out defaults to f.size().
KrausChannel coarse_graining(std::span<const std::size_t> f,
                             std::optional<std::size_t> dim_out = std::nullopt);
// Kraus operators M_m^{1/2}.
KrausChannel measurement_channel(const Povm& povm);

// Unitary mixture of 2-5 Haar unitaries with Dirichlet-uniform weights.
KrausChannel random_bistochastic_channel(std::size_t dim, Rng& rng);
// Unitary mixture followed by a random contraction C (||C|| <= 1), giving
// sum E^dagger E = C^dagger C <= 1 and sum E E^dagger <= 1. Trace is lost
// whenever ||C|| < 1.
KrausChannel random_subunital_contraction(std::size_t dim, Rng& rng);
// Stinespring: n_kraus blocks of a Haar isometry. Trace preserving, and
// generically neither unital nor subunital when dim_out * n_kraus > dim_in.
KrausChannel random_trace_preserving_channel(std::size_t dim_in, std::size_t dim_out,
                                             std::size_t n_kraus, Rng& rng);

enum class ContractivityMode {
  Normalized,    // compare E(rho), E(sigma) as states; channel must be trace preserving
  Unnormalized,  // compare the raw outputs sum E rho E^dagger
};

struct ContractivityRow {
  std::size_t k = 0;
  double d_in = 0.0;
  double d_out = 0.0;
  bool violated = false;  // d_out > d_in + tol
};

struct ContractivityReport {
  ContractivityMode mode = ContractivityMode::Normalized;
  std::size_t padded_dim = 0;      // max(dim_in, dim_out)
  std::vector<double> singular_in;   // zero-padded to padded_dim
  std::vector<double> singular_out;  // zero-padded to padded_dim
  std::vector<ContractivityRow> rows;
  SubmajorizationReport submajorization;  // s_out against s_in
  bool any_violation = false;

  double max_increase() const;
};

// Per-k comparison of D_k before and after the channel, plus the
// submajorization s(out) < s(in). Throws NotTracePreserving in Normalized
// mode for a channel that loses trace.
ContractivityReport contractivity_report(const KrausChannel& channel, const DensityMatrix& rho,
                                         const DensityMatrix& sigma,
                                         ContractivityMode mode = ContractivityMode::Normalized,
                                         double tol = kChannelTolerance);

}  // namespace ptd
