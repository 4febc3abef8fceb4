#pragma once

#include <functional>
#include <vector>

#include "ptd/matrix.hpp"

namespace ptd {

inline constexpr double kHermiticityTolerance = 1e-10;

struct HermitianEigensystem {
  std::vector<double> eigenvalues;  // decreasing
  ComplexMatrix eigenvectors;       // column j belongs to eigenvalues[j]

  ComplexMatrix reconstruct() const;
};

// Cyclic complex Jacobi. The input is symmetrized after the hermiticity
// check, so the returned system is exact for (H + H^dagger)/2.
// Stops when the off-diagonal Frobenius mass drops below 1e-14 * ||H||_F;
// throws NoConvergence after 100 sweeps.
HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& h,
                                           double hermiticity_tol = kHermiticityTolerance);

// Decreasing singular values, min(rows, cols) of them. Hermitian input is
// handled as sorted |eigenvalues|; anything else goes through the Hermitian
// dilation [[0, X], [X^dagger, 0]], whose top eigenvalues are exactly s_j(X).
std::vector<double> singular_values(const ComplexMatrix& x);

// Sum of the k largest eigenvalues of a Hermitian matrix.
double top_eigenvalue_sum(const ComplexMatrix& h, std::size_t k);

// V f(Lambda) V^dagger for a Hermitian matrix.
ComplexMatrix apply_spectral_function(const HermitianEigensystem& eig,
                                      const std::function<double(double)>& f);

// Square root of a positive semidefinite matrix. Eigenvalues in
// [-clamp, 0) are treated as zero; anything more negative is NotPositive.
ComplexMatrix psd_sqrt(const ComplexMatrix& h, double clamp = 1e-10);

// S^{-1/2} for a positive definite S; throws SingularNormalizer when the
// smallest eigenvalue is below `floor`.
ComplexMatrix inverse_psd_sqrt(const ComplexMatrix& s, double floor = 1e-10);

// Largest eigenvalue of a Hermitian matrix.
double max_eigenvalue(const ComplexMatrix& h);

}  // namespace ptd
