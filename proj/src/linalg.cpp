#include "ptd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ptd/error.hpp"

namespace ptd {
namespace {

constexpr double kJacobiRelativeTolerance = 1e-14;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t p = 0; p < a.rows(); ++p) {
    for (std::size_t q = p + 1; q < a.cols(); ++q) s += std::norm(a(p, q));
  }
  return std::sqrt(2.0 * s);
}

// One two-sided rotation that annihilates a(p, q). The rotation is
// J = diag(1, conj(e)) * [[c, s], [-s, c]] on the (p, q) plane, where
// e = a(p, q) / |a(p, q)| strips the phase so a real Jacobi step applies.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex b = a(p, q);
  const double abs_b = std::abs(b);
  if (abs_b == 0.0) return;

  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const Complex phase = std::conj(b / abs_b);
  const double theta = (aqq - app) / (2.0 * abs_b);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Complex jpp = c;
  const Complex jpq = s;
  const Complex jqp = -s * phase;
  const Complex jqq = c * phase;

  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex x = a(k, p);
    const Complex y = a(k, q);
    a(k, p) = x * jpp + y * jqp;
    a(k, q) = x * jpq + y * jqq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex x = a(p, k);
    const Complex y = a(q, k);
    a(p, k) = std::conj(jpp) * x + std::conj(jqp) * y;
    a(q, k) = std::conj(jpq) * x + std::conj(jqq) * y;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < n; ++k) {
    const Complex x = v(k, p);
    const Complex y = v(k, q);
    v(k, p) = x * jpp + y * jqp;
    v(k, q) = x * jpq + y * jqq;
  }
}

void require_k(std::size_t k, std::size_t limit) {
  if (k < 1 || k > limit) {
    throw Error(ErrorCode::KOutOfRange,
                "k = " + std::to_string(k) + " outside [1, " + std::to_string(limit) + "]");
  }
}

}  // namespace

ComplexMatrix HermitianEigensystem::reconstruct() const {
  const std::size_t n = eigenvalues.size();
  ComplexMatrix out(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t r = 0; r < n; ++r) {
      const Complex vr = eigenvectors(r, j) * eigenvalues[j];
      for (std::size_t c = 0; c < n; ++c) out(r, c) += vr * std::conj(eigenvectors(c, j));
    }
  }
  return out;
}

HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& h, double hermiticity_tol) {
  if (!h.is_square()) {
    throw Error(ErrorCode::NotSquare,
                std::to_string(h.rows()) + "x" + std::to_string(h.cols()) + " input");
  }
  const double residual = h.hermiticity_residual();
  if (residual > hermiticity_tol * std::max(1.0, h.max_abs())) {
    throw Error(ErrorCode::NotHermitian, "hermiticity residual " + std::to_string(residual),
                residual);
  }

  const std::size_t n = h.rows();
  ComplexMatrix a = h.hermitian_part();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double threshold = kJacobiRelativeTolerance * a.frobenius_norm();

  bool converged = false;
  for (int sweep = 0; sweep <= kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) {
      converged = true;
      break;
    }
    if (sweep == kMaxSweeps) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
    }
  }
  if (!converged) {
    throw Error(ErrorCode::NoConvergence, "Jacobi iteration exceeded " +
                                              std::to_string(kMaxSweeps) + " sweeps",
                off_diagonal_norm(a));
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() > a(j, j).real();
  });

  HermitianEigensystem out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = a(order[j], order[j]).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, j) = v(r, order[j]);
  }
  return out;
}

std::vector<double> singular_values(const ComplexMatrix& x) {
  const std::size_t m = x.rows();
  const std::size_t n = x.cols();
  const std::size_t count = std::min(m, n);
  std::vector<double> out;
  out.reserve(count);

  if (x.is_square() && x.hermiticity_residual() == 0.0) {
    for (double lambda : hermitian_eigensystem(x).eigenvalues) out.push_back(std::abs(lambda));
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
  }

  ComplexMatrix dilation(m + n, m + n);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      dilation(r, m + c) = x(r, c);
      dilation(m + c, r) = std::conj(x(r, c));
    }
  }
  const auto eig = hermitian_eigensystem(dilation);
  for (std::size_t j = 0; j < count; ++j) out.push_back(std::max(0.0, eig.eigenvalues[j]));
  return out;
}

double top_eigenvalue_sum(const ComplexMatrix& h, std::size_t k) {
  if (!h.is_square()) throw Error(ErrorCode::NotSquare, "top eigenvalue sum of non-square input");
  require_k(k, h.rows());
  const auto eig = hermitian_eigensystem(h);
  double sum = 0.0;
  for (std::size_t j = 0; j < k; ++j) sum += eig.eigenvalues[j];
  return sum;
}

ComplexMatrix apply_spectral_function(const HermitianEigensystem& eig,
                                      const std::function<double(double)>& f) {
  HermitianEigensystem mapped = eig;
  for (auto& lambda : mapped.eigenvalues) lambda = f(lambda);
  return mapped.reconstruct();
}

ComplexMatrix psd_sqrt(const ComplexMatrix& h, double clamp) {
  const auto eig = hermitian_eigensystem(h);
  const double smallest = eig.eigenvalues.back();
  if (smallest < -clamp) {
    throw Error(ErrorCode::NotPositive, "eigenvalue " + std::to_string(smallest), smallest);
  }
  return apply_spectral_function(eig, [](double x) { return std::sqrt(std::max(0.0, x)); });
}

ComplexMatrix inverse_psd_sqrt(const ComplexMatrix& s, double floor) {
  const auto eig = hermitian_eigensystem(s);
  const double smallest = eig.eigenvalues.back();
  if (smallest < floor) {
    throw Error(ErrorCode::SingularNormalizer, "smallest eigenvalue " + std::to_string(smallest),
                smallest);
  }
  return apply_spectral_function(eig, [](double x) { return 1.0 / std::sqrt(x); });
}

double max_eigenvalue(const ComplexMatrix& h) { return hermitian_eigensystem(h).eigenvalues.front(); }

}  // namespace ptd
