#include "ptd/measurements.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ptd/distances.hpp"
#include "ptd/error.hpp"
#include "ptd/linalg.hpp"

namespace ptd {
namespace {

void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                "dimensions " + std::to_string(a) + " and " + std::to_string(b));
  }
}

}  // namespace

Povm Povm::validate(std::vector<ComplexMatrix> elements) {
  if (elements.empty()) throw Error(ErrorCode::ShapeMismatch, "POVM with no elements");
  const std::size_t d = elements.front().rows();
  Povm out;
  ComplexMatrix total(d, d);
  for (std::size_t m = 0; m < elements.size(); ++m) {
    const auto& e = elements[m];
    if (!e.is_square() || e.rows() != d || d == 0) {
      throw Error(ErrorCode::ShapeMismatch,
                  "element " + std::to_string(m) + " is " + std::to_string(e.rows()) + "x" +
                      std::to_string(e.cols()) + ", expected " + std::to_string(d) + "x" +
                      std::to_string(d),
                  std::nullopt, m);
    }
    const double residual = e.hermiticity_residual();
    if (residual > kPositivityTolerance) {
      throw Error(ErrorCode::ElementNotPositive,
                  "element " + std::to_string(m) + " is not Hermitian (residual " +
                      std::to_string(residual) + ")",
                  residual, m);
    }
    ComplexMatrix h = e.hermitian_part();
    const double smallest = hermitian_eigensystem(h).eigenvalues.back();
    if (smallest < -kPositivityTolerance) {
      throw Error(ErrorCode::ElementNotPositive,
                  "element " + std::to_string(m) + " has eigenvalue " + std::to_string(smallest),
                  smallest, m);
    }
    total += h;
    const double tr = h.trace().real();
    out.traces_.push_back(tr);
    out.small_trace_ = out.small_trace_ && tr <= 1.0 + kCompletenessTolerance;
    out.elements_.push_back(std::move(h));
  }
  out.completeness_residual_ = max_abs_diff(total, ComplexMatrix::identity(d));
  if (out.completeness_residual_ > kCompletenessTolerance) {
    throw Error(ErrorCode::CompletenessViolated,
                "sum of elements differs from identity by " +
                    std::to_string(out.completeness_residual_),
                out.completeness_residual_);
  }
  return out;
}

MeasurementStats measure_pair(const Povm& povm, const DensityMatrix& rho,
                              const DensityMatrix& sigma) {
  require_same_dim(povm.dim(), rho.dim());
  require_same_dim(povm.dim(), sigma.dim());
  MeasurementStats stats;
  const std::size_t n = povm.outcomes();
  stats.p.reserve(n);
  stats.q.reserve(n);
  stats.gaps_sorted.assign(std::max(n, povm.dim()), 0.0);
  for (std::size_t m = 0; m < n; ++m) {
    stats.p.push_back(real_trace_of_product(povm.elements()[m], rho.matrix()));
    stats.q.push_back(real_trace_of_product(povm.elements()[m], sigma.matrix()));
    stats.gaps_sorted[m] = std::abs(stats.p.back() - stats.q.back());
  }
  std::stable_sort(stats.gaps_sorted.begin(), stats.gaps_sorted.end(), std::greater<>());
  return stats;
}

Povm optimal_pvm(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho.dim(), sigma.dim());
  const auto jordan = jordan_decomposition(rho, sigma);
  std::vector<ComplexMatrix> elements;
  elements.reserve(rho.dim());
  for (const auto& entry : jordan.merged) {
    const auto& vectors = entry.side == Side::Positive ? jordan.kappa_vectors : jordan.tau_vectors;
    elements.push_back(ComplexMatrix::outer(vectors.column(entry.index)));
  }
  for (std::size_t c = 0; c < jordan.kernel_vectors.cols(); ++c) {
    elements.push_back(ComplexMatrix::outer(jordan.kernel_vectors.column(c)));
  }
  return Povm::validate(std::move(elements));
}

Povm rank_one_povm_from_vectors(std::span<const std::vector<Complex>> vectors) {
  if (vectors.empty()) throw Error(ErrorCode::ShapeMismatch, "no vectors");
  const std::size_t d = vectors.front().size();
  ComplexMatrix frame(d, d);
  for (const auto& v : vectors) {
    if (v.size() != d) throw Error(ErrorCode::ShapeMismatch, "vectors of different lengths");
    frame += ComplexMatrix::outer(v);
  }
  const ComplexMatrix normalizer = inverse_psd_sqrt(frame);
  std::vector<ComplexMatrix> elements;
  elements.reserve(vectors.size());
  for (const auto& v : vectors) {
    std::vector<Complex> w(d, 0.0);
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) w[r] += normalizer(r, c) * v[c];
    }
    elements.push_back(ComplexMatrix::outer(w));
  }
  return Povm::validate(std::move(elements));
}

Povm random_rank_one_povm(std::size_t dim, std::size_t n_outcomes, Rng& rng) {
  if (dim < 1 || n_outcomes < dim) {
    throw Error(ErrorCode::ParameterOutOfRange,
                std::to_string(n_outcomes) + " outcomes cannot span dimension " +
                    std::to_string(dim));
  }
  constexpr int kAttempts = 32;
  for (int attempt = 0;; ++attempt) {
    std::vector<std::vector<Complex>> vectors;
    vectors.reserve(n_outcomes);
    for (std::size_t m = 0; m < n_outcomes; ++m) vectors.push_back(random_unit_vector(dim, rng));
    try {
      return rank_one_povm_from_vectors(vectors);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SingularNormalizer || attempt + 1 == kAttempts) throw;
    }
  }
}

MeasurementBoundReport verify_measurement_bound(const DensityMatrix& rho,
                                                const DensityMatrix& sigma, std::size_t k,
                                                std::size_t trials, std::uint64_t seed) {
  const std::size_t d = rho.dim();
  MeasurementBoundReport report;
  report.bound = partitioned_distance(rho, sigma, k);

  const auto best = measure_pair(optimal_pvm(rho, sigma), rho, sigma);
  report.optimal_value = classical_partitioned_distance(best.p, best.q, k);
  report.max_observed = report.optimal_value;

  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, t);
    const std::size_t n = rng.uniform_index(d, 2 * d + 2);
    const auto stats = measure_pair(random_rank_one_povm(d, n, rng), rho, sigma);
    const double value = classical_partitioned_distance(stats.p, stats.q, k);
    report.max_random = std::max(report.max_random, value);
    report.max_observed = std::max(report.max_observed, value);
  }
  report.saturated = std::abs(report.optimal_value - report.bound) <= 1e-9;
  report.within_bound = report.max_observed <= report.bound + 1e-9;
  return report;
}

}  // namespace ptd
