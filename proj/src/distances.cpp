#include "ptd/distances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ptd/error.hpp"
#include "ptd/linalg.hpp"

namespace ptd {
namespace {

void require_k(std::size_t k, std::size_t limit) {
  if (k < 1 || k > limit) {
    throw Error(ErrorCode::KOutOfRange,
                "k = " + std::to_string(k) + " outside [1, " + std::to_string(limit) + "]");
  }
}

void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                "dimensions " + std::to_string(a) + " and " + std::to_string(b));
  }
}

ComplexMatrix columns_of(const ComplexMatrix& v, std::span<const std::size_t> picks) {
  ComplexMatrix out(v.rows(), picks.size());
  for (std::size_t c = 0; c < picks.size(); ++c) {
    for (std::size_t r = 0; r < v.rows(); ++r) out(r, c) = v(r, picks[c]);
  }
  return out;
}

void add_outer(ComplexMatrix& target, const ComplexMatrix& vectors, std::size_t col, double w) {
  const std::size_t n = vectors.rows();
  for (std::size_t r = 0; r < n; ++r) {
    const Complex vr = w * vectors(r, col);
    for (std::size_t c = 0; c < n; ++c) target(r, c) += vr * std::conj(vectors(c, col));
  }
}

// Weights in [0, 1] summing to k: shift uniform draws and clip, with the
// shift found by bisection.
std::vector<double> constrained_weights(std::size_t d, std::size_t k, Rng& rng) {
  std::vector<double> raw(d);
  for (auto& x : raw) x = rng.uniform();
  auto clipped_sum = [&](double shift) {
    double s = 0.0;
    for (double x : raw) s += std::clamp(x + shift, 0.0, 1.0);
    return s;
  };
  double lo = -1.0;
  double hi = 1.0;
  const double target = static_cast<double>(k);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (clipped_sum(mid) < target ? lo : hi) = mid;
  }
  std::vector<double> w(d);
  for (std::size_t i = 0; i < d; ++i) w[i] = std::clamp(raw[i] + hi, 0.0, 1.0);
  return w;
}

// Re <u_i| h |u_i> for column i of u.
double expectation(const ComplexMatrix& h, const ComplexMatrix& u, std::size_t col) {
  const std::size_t n = h.rows();
  Complex acc = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    Complex hu = 0.0;
    for (std::size_t c = 0; c < n; ++c) hu += h(r, c) * u(c, col);
    acc += std::conj(u(r, col)) * hu;
  }
  return acc.real();
}

}  // namespace

double ky_fan_norm(const ComplexMatrix& x, std::size_t k) {
  require_k(k, std::min(x.rows(), x.cols()));
  const auto s = singular_values(x);
  return std::accumulate(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k), 0.0);
}

JordanDecomposition jordan_decomposition(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.is_square() || !b.is_square()) throw Error(ErrorCode::NotSquare, "operands must be square");
  require_same_dim(a.rows(), b.rows());
  const std::size_t d = a.rows();
  const auto eig = hermitian_eigensystem(a - b);

  std::vector<std::size_t> pos;
  std::vector<std::size_t> neg;
  std::vector<std::size_t> ker;
  for (std::size_t j = 0; j < d; ++j) {
    const double lambda = eig.eigenvalues[j];
    if (lambda >= kSupportThreshold) {
      pos.push_back(j);
    } else if (lambda > -kSupportThreshold) {
      ker.push_back(j);
    }
  }
  // Negative eigenvalues, most negative first.
  for (std::size_t j = d; j-- > 0;) {
    if (eig.eigenvalues[j] <= -kSupportThreshold) neg.push_back(j);
  }

  JordanDecomposition out;
  out.positive_part = ComplexMatrix(d, d);
  out.negative_part = ComplexMatrix(d, d);
  out.kappa_vectors = columns_of(eig.eigenvectors, pos);
  out.tau_vectors = columns_of(eig.eigenvectors, neg);
  out.kernel_vectors = columns_of(eig.eigenvectors, ker);
  for (std::size_t i = 0; i < pos.size(); ++i) {
    out.kappa.push_back(eig.eigenvalues[pos[i]]);
    add_outer(out.positive_part, out.kappa_vectors, i, out.kappa.back());
  }
  for (std::size_t i = 0; i < neg.size(); ++i) {
    out.tau.push_back(-eig.eigenvalues[neg[i]]);
    add_outer(out.negative_part, out.tau_vectors, i, out.tau.back());
  }

  std::size_t i = 0;
  std::size_t j = 0;
  while (i < out.kappa.size() || j < out.tau.size()) {
    const bool take_positive =
        j == out.tau.size() || (i < out.kappa.size() && out.kappa[i] >= out.tau[j]);
    if (take_positive) {
      out.merged.push_back({Side::Positive, i, out.kappa[i]});
      ++i;
    } else {
      out.merged.push_back({Side::Negative, j, out.tau[j]});
      ++j;
    }
  }
  out.singular.assign(d, 0.0);
  for (std::size_t m = 0; m < out.merged.size(); ++m) out.singular[m] = out.merged[m].value;
  return out;
}

JordanDecomposition jordan_decomposition(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho.dim(), sigma.dim());
  return jordan_decomposition(rho.matrix(), sigma.matrix());
}

double DistanceProfile::at(std::size_t k) const {
  require_k(k, values.size());
  return values[k - 1];
}

DistanceProfile profile_from_singular_values(std::span<const double> singular) {
  DistanceProfile profile;
  profile.dim = singular.size();
  profile.values.reserve(singular.size());
  double prefix = 0.0;
  for (double s : singular) {
    prefix += s;
    profile.values.push_back(0.5 * prefix);
  }
  return profile;
}

DistanceProfile distance_profile(const JordanDecomposition& jordan) {
  return profile_from_singular_values(jordan.singular);
}

DistanceProfile distance_profile(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return distance_profile(jordan_decomposition(rho, sigma));
}

double partitioned_distance(const DensityMatrix& rho, const DensityMatrix& sigma, std::size_t k) {
  require_same_dim(rho.dim(), sigma.dim());
  require_k(k, rho.dim());
  return distance_profile(rho, sigma).at(k);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return distance_profile(rho, sigma).trace_distance();
}

double classical_partitioned_distance(std::span<const double> p, std::span<const double> q,
                                      std::size_t k) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "lengths " + std::to_string(p.size()) + " and " + std::to_string(q.size()));
  }
  require_k(k, p.size());
  auto total = [](std::span<const double> v, const char* name) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!(v[i] >= -1e-12)) {
        throw Error(ErrorCode::NotDistribution,
                    std::string(name) + "[" + std::to_string(i) + "] = " + std::to_string(v[i]),
                    v[i], i);
      }
      s += v[i];
    }
    if (std::abs(s - 1.0) > 1e-9) {
      throw Error(ErrorCode::NotDistribution,
                  std::string(name) + " sums to " + std::to_string(s), s - 1.0);
    }
    return s;
  };
  const double sp = total(p, "p");
  const double sq = total(q, "q");

  std::vector<double> gaps(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) gaps[i] = std::abs(p[i] / sp - q[i] / sq);
  std::partial_sort(gaps.begin(), gaps.begin() + static_cast<std::ptrdiff_t>(k), gaps.end(),
                    std::greater<>());
  return 0.5 * std::accumulate(gaps.begin(), gaps.begin() + static_cast<std::ptrdiff_t>(k), 0.0);
}

ProjectorPair optimal_projectors(const JordanDecomposition& jordan, std::size_t k) {
  const std::size_t d = jordan.dim();
  require_k(k, d);
  ProjectorPair out{ComplexMatrix(d, d), ComplexMatrix(d, d)};
  const std::size_t take = std::min(k, jordan.merged.size());
  for (std::size_t m = 0; m < take; ++m) {
    const auto& entry = jordan.merged[m];
    if (entry.side == Side::Positive) {
      add_outer(out.positive, jordan.kappa_vectors, entry.index, 1.0);
      ++out.positive_rank;
    } else {
      add_outer(out.negative, jordan.tau_vectors, entry.index, 1.0);
      ++out.negative_rank;
    }
  }
  return out;
}

ProjectorPair optimal_projectors(const DensityMatrix& rho, const DensityMatrix& sigma,
                                 std::size_t k) {
  require_same_dim(rho.dim(), sigma.dim());
  require_k(k, rho.dim());
  return optimal_projectors(jordan_decomposition(rho, sigma), k);
}

bool KyFanCheck::attained(double tol) const {
  return std::abs(eigenprojector_value - top_sum) <= tol && max_observed >= top_sum - tol;
}

KyFanCheck max_over_constrained_operators(const ComplexMatrix& h, std::size_t k,
                                          std::size_t trials, Rng& rng) {
  if (!h.is_square()) throw Error(ErrorCode::NotSquare, "Ky Fan check needs a square matrix");
  const std::size_t d = h.rows();
  require_k(k, d);
  const auto eig = hermitian_eigensystem(h);

  KyFanCheck out;
  for (std::size_t j = 0; j < k; ++j) {
    out.top_sum += eig.eigenvalues[j];
    out.eigenprojector_value += expectation(h, eig.eigenvectors, j);
  }
  out.max_projector = -std::numeric_limits<double>::infinity();
  out.max_constrained = -std::numeric_limits<double>::infinity();
  const ComplexMatrix hh = h.hermitian_part();
  for (std::size_t t = 0; t < trials; ++t) {
    const ComplexMatrix u = random_unitary(d, rng);
    double value = 0.0;
    for (std::size_t j = 0; j < k; ++j) value += expectation(hh, u, j);
    out.max_projector = std::max(out.max_projector, value);

    const ComplexMatrix w_basis = random_unitary(d, rng);
    const auto w = constrained_weights(d, k, rng);
    double theta_value = 0.0;
    for (std::size_t j = 0; j < d; ++j) theta_value += w[j] * expectation(hh, w_basis, j);
    out.max_constrained = std::max(out.max_constrained, theta_value);
  }
  out.max_observed = std::max({out.eigenprojector_value, out.max_projector, out.max_constrained});
  return out;
}

}  // namespace ptd
