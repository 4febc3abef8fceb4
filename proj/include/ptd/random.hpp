#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ptd/matrix.hpp"

namespace ptd {

// Seedable generator: std::mt19937_64 (fully specified by the standard) with
// uniform doubles taken from the top 53 bits and normals from Box-Muller.
// Distribution objects from <random> are avoided because their algorithms
// are implementation-defined; this keeps draws bit-identical everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Independent stream `index` derived from `seed` via splitmix64.
  static Rng stream(std::uint64_t seed, std::uint64_t index);
  static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_u64() { return engine_(); }
  double uniform();                                    // [0, 1)
  double uniform(double lo, double hi);                // [lo, hi)
  std::size_t uniform_index(std::size_t lo, std::size_t hi);  // [lo, hi]
  double normal();
  Complex complex_normal();  // E|z|^2 = 1

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

// Haar unitary: Ginibre sample orthonormalized by Gram-Schmidt (run twice),
// which fixes the triangular factor's diagonal to be real positive.
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);

// dim x cols Ginibre matrix of standard complex normals.
ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng);

// Haar-random unit vector.
std::vector<Complex> random_unit_vector(std::size_t dim, Rng& rng);

// G G^dagger / tr(G G^dagger) as a raw matrix; see random_density_matrix in
// states.hpp for the validated form.
ComplexMatrix random_density_matrix_raw(std::size_t dim, std::size_t rank, Rng& rng);

// (G + G^dagger) / 2 for a Ginibre G.
ComplexMatrix random_hermitian(std::size_t dim, Rng& rng);

// Uniform on the probability simplex (Dirichlet(1, ..., 1)).
std::vector<double> random_probability_vector(std::size_t n, Rng& rng);

}  // namespace ptd
