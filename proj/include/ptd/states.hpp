#pragma once

#include <array>
#include <cstdint>

#include "ptd/matrix.hpp"
#include "ptd/random.hpp"

namespace ptd {

inline constexpr double kStateTolerance = 1e-10;

// Hermitian, positive semidefinite, unit-trace matrix. Only obtainable through
// validation, so holding one is proof the invariants were checked. The stored
// matrix is the exact Hermitian part of the validated input.
class DensityMatrix {
 public:
  // Throws NotSquare, NotHermitian, NotPositive (magnitude = most negative
  // eigenvalue) or TraceNotOne (magnitude = signed deviation from 1).
  static DensityMatrix validate(const ComplexMatrix& m, double tol = kStateTolerance);

  std::size_t dim() const noexcept { return matrix_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  double purity() const;

 private:
  explicit DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {}
  ComplexMatrix matrix_;
};

inline DensityMatrix validate_density(const ComplexMatrix& m, double tol = kStateTolerance) {
  return DensityMatrix::validate(m, tol);
}

DensityMatrix random_density_matrix(std::size_t dim, std::size_t rank, Rng& rng);
DensityMatrix random_pure_state(std::size_t dim, Rng& rng);
DensityMatrix pure_state(std::span<const Complex> amplitudes);
DensityMatrix maximally_mixed(std::size_t dim);

// Sum_i w_i rho_i for probability weights w.
DensityMatrix mixture(std::span<const double> weights, std::span<const DensityMatrix> states);

// U rho U^dagger.
DensityMatrix unitary_conjugate(const ComplexMatrix& u, const DensityMatrix& rho);

class BlochVector {
 public:
  // Throws OutsideBall when |u| > 1 + 1e-10.
  BlochVector(double x, double y, double z);

  const std::array<double, 3>& components() const noexcept { return u_; }
  double x() const noexcept { return u_[0]; }
  double y() const noexcept { return u_[1]; }
  double z() const noexcept { return u_[2]; }
  double length() const;

 private:
  std::array<double, 3> u_;
};

double distance(const BlochVector& a, const BlochVector& b);

// (I + u . sigma) / 2
DensityMatrix qubit_from_bloch(const BlochVector& u);
// u_a = tr(rho sigma_a); throws WrongDimension unless dim == 2.
BlochVector bloch_from_qubit(const DensityMatrix& rho);

}  // namespace ptd
