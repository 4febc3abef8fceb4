#include "ptd/states.hpp"

#include <cmath>
#include <string>

#include "ptd/error.hpp"
#include "ptd/linalg.hpp"

namespace ptd {

DensityMatrix DensityMatrix::validate(const ComplexMatrix& m, double tol) {
  if (!m.is_square() || m.rows() == 0) {
    throw Error(ErrorCode::NotSquare,
                std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " state matrix");
  }
  const double residual = m.hermiticity_residual();
  if (residual > tol) {
    throw Error(ErrorCode::NotHermitian, "hermiticity residual " + std::to_string(residual),
                residual);
  }
  ComplexMatrix h = m.hermitian_part();
  const auto eig = hermitian_eigensystem(h, tol);
  const double smallest = eig.eigenvalues.back();
  if (smallest < -tol) {
    throw Error(ErrorCode::NotPositive, "most negative eigenvalue " + std::to_string(smallest),
                smallest);
  }
  const double deviation = h.trace().real() - 1.0;
  if (std::abs(deviation) > tol) {
    throw Error(ErrorCode::TraceNotOne, "trace deviates from 1 by " + std::to_string(deviation),
                deviation);
  }
  return DensityMatrix(std::move(h));
}

double DensityMatrix::purity() const { return real_trace_of_product(matrix_, matrix_); }

DensityMatrix random_density_matrix(std::size_t dim, std::size_t rank, Rng& rng) {
  return DensityMatrix::validate(random_density_matrix_raw(dim, rank, rng));
}

DensityMatrix random_pure_state(std::size_t dim, Rng& rng) {
  const auto v = random_unit_vector(dim, rng);
  return pure_state(v);
}

DensityMatrix pure_state(std::span<const Complex> amplitudes) {
  double norm = 0.0;
  for (const auto& z : amplitudes) norm += std::norm(z);
  if (norm == 0.0) throw Error(ErrorCode::ZeroTrace, "zero state vector");
  ComplexMatrix m = ComplexMatrix::outer(amplitudes);
  m *= 1.0 / norm;
  return DensityMatrix::validate(m);
}

DensityMatrix maximally_mixed(std::size_t dim) {
  ComplexMatrix m = ComplexMatrix::identity(dim);
  m *= 1.0 / static_cast<double>(dim);
  return DensityMatrix::validate(m);
}

DensityMatrix mixture(std::span<const double> weights, std::span<const DensityMatrix> states) {
  if (weights.size() != states.size() || states.empty()) {
    throw Error(ErrorCode::LengthMismatch, "mixture needs one weight per state");
  }
  ComplexMatrix m(states.front().dim(), states.front().dim());
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].dim() != m.rows()) {
      throw Error(ErrorCode::DimensionMismatch, "mixture of states with different dimensions");
    }
    m += weights[i] * states[i].matrix();
  }
  return DensityMatrix::validate(m);
}

DensityMatrix unitary_conjugate(const ComplexMatrix& u, const DensityMatrix& rho) {
  if (u.rows() != rho.dim() || u.cols() != rho.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "unitary and state dimensions differ");
  }
  return DensityMatrix::validate(conjugate_by(u, rho.matrix()));
}

BlochVector::BlochVector(double x, double y, double z) : u_{x, y, z} {
  const double len = length();
  if (!(len <= 1.0 + 1e-10)) {
    throw Error(ErrorCode::OutsideBall, "Bloch vector length " + std::to_string(len), len);
  }
}

double BlochVector::length() const { return std::sqrt(u_[0] * u_[0] + u_[1] * u_[1] + u_[2] * u_[2]); }

double distance(const BlochVector& a, const BlochVector& b) {
  const double dx = a.x() - b.x();
  const double dy = a.y() - b.y();
  const double dz = a.z() - b.z();
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

DensityMatrix qubit_from_bloch(const BlochVector& u) {
  const ComplexMatrix m{{0.5 * (1.0 + u.z()), Complex(0.5 * u.x(), -0.5 * u.y())},
                        {Complex(0.5 * u.x(), 0.5 * u.y()), 0.5 * (1.0 - u.z())}};
  // Pure states sit on the boundary; allow the length slack through validation.
  return DensityMatrix::validate(m, 1e-9);
}

BlochVector bloch_from_qubit(const DensityMatrix& rho) {
  if (rho.dim() != 2) {
    throw Error(ErrorCode::WrongDimension,
                "Bloch vectors need dim 2, got " + std::to_string(rho.dim()));
  }
  const auto& m = rho.matrix();
  const double x = 2.0 * m(0, 1).real();
  const double y = -2.0 * m(0, 1).imag();
  const double z = (m(0, 0) - m(1, 1)).real();
  return BlochVector(x, y, z);
}

}  // namespace ptd
