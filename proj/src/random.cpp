#include "ptd/random.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ptd/error.hpp"

namespace ptd {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void require_dim(std::size_t dim) {
  if (dim < 1) throw Error(ErrorCode::InvalidDimension, "dimension must be at least 1");
}

}  // namespace

Rng::Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

std::uint64_t Rng::derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) { return Rng(derive_seed(seed, index)); }

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::size_t Rng::uniform_index(std::size_t lo, std::size_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = span == 0 ? 0 : (~std::uint64_t{0} / span) * span;
  std::uint64_t x;
  do {
    x = engine_();
  } while (limit != 0 && x >= limit);
  return lo + static_cast<std::size_t>(span == 0 ? x : x % span);
}

double Rng::normal() {
  if (spare_normal_) {
    const double z = *spare_normal_;
    spare_normal_.reset();
    return z;
  }
  double u1;
  do {
    u1 = uniform();
  } while (u1 == 0.0);
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) g(r, c) = rng.complex_normal();
  }
  return g;
}

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  require_dim(dim);
  ComplexMatrix q = random_ginibre(dim, dim, rng);
  for (std::size_t j = 0; j < dim; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        Complex overlap = 0.0;
        for (std::size_t r = 0; r < dim; ++r) overlap += std::conj(q(r, i)) * q(r, j);
        for (std::size_t r = 0; r < dim; ++r) q(r, j) -= overlap * q(r, i);
      }
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < dim; ++r) norm += std::norm(q(r, j));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < dim; ++r) q(r, j) /= norm;
  }
  return q;
}

std::vector<Complex> random_unit_vector(std::size_t dim, Rng& rng) {
  require_dim(dim);
  std::vector<Complex> v(dim);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto& z : v) {
      z = rng.complex_normal();
      norm += std::norm(z);
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  for (auto& z : v) z /= norm;
  return v;
}

ComplexMatrix random_density_matrix_raw(std::size_t dim, std::size_t rank, Rng& rng) {
  if (rank < 1 || rank > dim) {
    throw Error(ErrorCode::InvalidRank,
                "rank " + std::to_string(rank) + " outside [1, " + std::to_string(dim) + "]");
  }
  const ComplexMatrix g = random_ginibre(dim, rank, rng);
  ComplexMatrix rho = (g * g.adjoint()).hermitian_part();
  rho *= 1.0 / rho.trace().real();
  return rho;
}

ComplexMatrix random_hermitian(std::size_t dim, Rng& rng) {
  require_dim(dim);
  return random_ginibre(dim, dim, rng).hermitian_part();
}

std::vector<double> random_probability_vector(std::size_t n, Rng& rng) {
  std::vector<double> p(n);
  double total = 0.0;
  for (auto& x : p) {
    double u;
    do {
      u = rng.uniform();
    } while (u == 0.0);
    x = -std::log(u);
    total += x;
  }
  for (auto& x : p) x /= total;
  return p;
}

}  // namespace ptd
