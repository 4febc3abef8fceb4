#include "ptd/channels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ptd/error.hpp"
#include "ptd/linalg.hpp"

namespace ptd {
namespace {

void require_unit_interval(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw Error(ErrorCode::ParameterOutOfRange,
                std::string(name) + " = " + std::to_string(value) + " outside [0, 1]", value);
  }
}

ComplexMatrix gram_input(const std::vector<ComplexMatrix>& kraus) {
  ComplexMatrix a(kraus.front().cols(), kraus.front().cols());
  for (const auto& e : kraus) a += e.adjoint() * e;
  return a.hermitian_part();
}

ComplexMatrix gram_output(const std::vector<ComplexMatrix>& kraus) {
  ComplexMatrix b(kraus.front().rows(), kraus.front().rows());
  for (const auto& e : kraus) b += e * e.adjoint();
  return b.hermitian_part();
}

std::vector<double> padded(std::vector<double> v, std::size_t n) {
  v.resize(std::max(v.size(), n), 0.0);
  return v;
}

}  // namespace

KrausChannel KrausChannel::build(std::vector<ComplexMatrix> kraus, double tol) {
  if (kraus.empty()) throw Error(ErrorCode::ShapeMismatch, "channel with no Kraus operators");
  const std::size_t rows = kraus.front().rows();
  const std::size_t cols = kraus.front().cols();
  if (rows == 0 || cols == 0) throw Error(ErrorCode::ShapeMismatch, "empty Kraus operator");
  for (std::size_t m = 0; m < kraus.size(); ++m) {
    if (kraus[m].rows() != rows || kraus[m].cols() != cols) {
      throw Error(ErrorCode::ShapeMismatch,
                  "Kraus operator " + std::to_string(m) + " is " +
                      std::to_string(kraus[m].rows()) + "x" + std::to_string(kraus[m].cols()) +
                      ", expected " + std::to_string(rows) + "x" + std::to_string(cols),
                  std::nullopt, m);
    }
  }

  KrausChannel channel;
  ChannelFlags& f = channel.flags_;
  const ComplexMatrix a = gram_input(kraus);
  const ComplexMatrix b = gram_output(kraus);
  f.trace_excess = max_eigenvalue(a) - 1.0;
  if (f.trace_excess > tol) {
    throw Error(ErrorCode::TraceIncreasing,
                "sum E^dagger E exceeds the identity by " + std::to_string(f.trace_excess),
                f.trace_excess);
  }
  f.trace_preserving_residual = max_abs_diff(a, ComplexMatrix::identity(cols));
  f.unital_residual = max_abs_diff(b, ComplexMatrix::identity(rows));
  f.subunital_excess = max_eigenvalue(b) - 1.0;
  f.trace_nonincreasing = true;
  f.trace_preserving = f.trace_preserving_residual <= tol;
  f.unital = f.unital_residual <= tol;
  f.subunital = f.subunital_excess <= tol;
  f.bistochastic = f.trace_preserving && f.unital;
  channel.kraus_ = std::move(kraus);
  return channel;
}

ComplexMatrix apply_unnormalized(const KrausChannel& channel, const ComplexMatrix& x) {
  if (x.rows() != channel.dim_in() || x.cols() != channel.dim_in()) {
    throw Error(ErrorCode::DimensionMismatch,
                "channel input dimension " + std::to_string(channel.dim_in()) + ", got " +
                    std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
  }
  ComplexMatrix out(channel.dim_out(), channel.dim_out());
  for (const auto& e : channel.kraus()) out += conjugate_by(e, x);
  return out;
}

ChannelOutput apply(const KrausChannel& channel, const DensityMatrix& rho) {
  const ComplexMatrix raw = apply_unnormalized(channel, rho.matrix()).hermitian_part();
  const double p = raw.trace().real();
  if (!(p > 1e-14)) throw Error(ErrorCode::ZeroTrace, "channel output has trace " + std::to_string(p), p);
  return {DensityMatrix::validate((1.0 / p) * raw, 1e-9), p};
}

KrausChannel depolarizing(std::size_t dim, double p) {
  require_unit_interval(p, "p");
  if (dim < 1) throw Error(ErrorCode::InvalidDimension, "dimension must be at least 1");
  const double d = static_cast<double>(dim);
  std::vector<ComplexMatrix> kraus;
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      const double weight = (a == 0 && b == 0) ? 1.0 - p + p / (d * d) : p / (d * d);
      if (weight == 0.0) continue;
      // X^a Z^b |j> = omega^{b j} |j + a mod d>
      ComplexMatrix e(dim, dim);
      for (std::size_t j = 0; j < dim; ++j) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(b * j % dim) / d;
        e((j + a) % dim, j) = std::sqrt(weight) * std::polar(1.0, angle);
      }
      kraus.push_back(std::move(e));
    }
  }
  return KrausChannel::build(std::move(kraus));
}

KrausChannel phase_damping(double lambda) {
  require_unit_interval(lambda, "lambda");
  return KrausChannel::build({ComplexMatrix::diagonal({1.0, std::sqrt(1.0 - lambda)}),
                              ComplexMatrix::diagonal({0.0, std::sqrt(lambda)})});
}

KrausChannel amplitude_damping(double gamma) {
  require_unit_interval(gamma, "gamma");
  return KrausChannel::build({ComplexMatrix{{1.0, 0.0}, {0.0, std::sqrt(1.0 - gamma)}},
                              ComplexMatrix{{0.0, std::sqrt(gamma)}, {0.0, 0.0}}});
}

KrausChannel unitary_mixture(std::span<const double> weights,
                             std::span<const ComplexMatrix> unitaries) {
  if (weights.size() != unitaries.size() || weights.empty()) {
    throw Error(ErrorCode::ParameterOutOfRange, "need one weight per unitary");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw Error(ErrorCode::ParameterOutOfRange, "negative weight", w);
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorCode::ParameterOutOfRange, "weights sum to " + std::to_string(total), total);
  }
  std::vector<ComplexMatrix> kraus;
  for (std::size_t m = 0; m < weights.size(); ++m) {
    const auto& u = unitaries[m];
    if (!u.is_square() ||
        max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.rows())) > 1e-9) {
      throw Error(ErrorCode::ParameterOutOfRange, "operator " + std::to_string(m) + " is not unitary",
                  std::nullopt, m);
    }
    kraus.push_back(std::sqrt(weights[m]) * u);
  }
  return KrausChannel::build(std::move(kraus));
}

KrausChannel coarse_graining(std::span<const std::size_t> f, std::optional<std::size_t> dim_out) {
  if (f.empty()) throw Error(ErrorCode::ParameterOutOfRange, "empty outcome map");
  const std::size_t out_dim = dim_out.value_or(f.size());
  std::vector<ComplexMatrix> kraus;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] >= out_dim) {
      throw Error(ErrorCode::ParameterOutOfRange,
                  "f(" + std::to_string(i) + ") = " + std::to_string(f[i]) +
                      " outside output dimension " + std::to_string(out_dim),
                  std::nullopt, i);
    }
    ComplexMatrix e(out_dim, f.size());
    e(f[i], i) = 1.0;
    kraus.push_back(std::move(e));
  }
  return KrausChannel::build(std::move(kraus));
}

KrausChannel measurement_channel(const Povm& povm) {
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(povm.outcomes());
  for (const auto& m : povm.elements()) kraus.push_back(psd_sqrt(m));
  return KrausChannel::build(std::move(kraus));
}

KrausChannel random_bistochastic_channel(std::size_t dim, Rng& rng) {
  const std::size_t n = rng.uniform_index(2, 5);
  const auto weights = random_probability_vector(n, rng);
  std::vector<ComplexMatrix> unitaries;
  for (std::size_t m = 0; m < n; ++m) unitaries.push_back(random_unitary(dim, rng));
  return unitary_mixture(weights, unitaries);
}

KrausChannel random_subunital_contraction(std::size_t dim, Rng& rng) {
  const std::size_t n = rng.uniform_index(2, 5);
  const auto weights = random_probability_vector(n, rng);
  ComplexMatrix contraction = random_ginibre(dim, dim, rng);
  const double scale = rng.uniform(0.3, 1.0) / singular_values(contraction).front();
  contraction *= scale;
  std::vector<ComplexMatrix> kraus;
  for (std::size_t m = 0; m < n; ++m) {
    kraus.push_back(std::sqrt(weights[m]) * random_unitary(dim, rng) * contraction);
  }
  return KrausChannel::build(std::move(kraus));
}

KrausChannel random_trace_preserving_channel(std::size_t dim_in, std::size_t dim_out,
                                             std::size_t n_kraus, Rng& rng) {
  const std::size_t big = dim_out * n_kraus;
  if (dim_in < 1 || big < dim_in) {
    throw Error(ErrorCode::ParameterOutOfRange,
                "isometry needs dim_out * n_kraus >= dim_in");
  }
  const ComplexMatrix u = random_unitary(big, rng);
  std::vector<ComplexMatrix> kraus;
  for (std::size_t m = 0; m < n_kraus; ++m) {
    ComplexMatrix e(dim_out, dim_in);
    for (std::size_t r = 0; r < dim_out; ++r) {
      for (std::size_t c = 0; c < dim_in; ++c) e(r, c) = u(m * dim_out + r, c);
    }
    kraus.push_back(std::move(e));
  }
  return KrausChannel::build(std::move(kraus));
}

double ContractivityReport::max_increase() const {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& row : rows) worst = std::max(worst, row.d_out - row.d_in);
  return worst;
}

ContractivityReport contractivity_report(const KrausChannel& channel, const DensityMatrix& rho,
                                         const DensityMatrix& sigma, ContractivityMode mode,
                                         double tol) {
  if (rho.dim() != channel.dim_in() || sigma.dim() != channel.dim_in()) {
    throw Error(ErrorCode::DimensionMismatch,
                "channel input dimension " + std::to_string(channel.dim_in()) +
                    ", states of dimension " + std::to_string(rho.dim()) + " and " +
                    std::to_string(sigma.dim()));
  }
  if (mode == ContractivityMode::Normalized && !channel.flags().trace_preserving) {
    throw Error(ErrorCode::NotTracePreserving,
                "normalized comparison needs a trace-preserving channel (residual " +
                    std::to_string(channel.flags().trace_preserving_residual) + ")",
                channel.flags().trace_preserving_residual);
  }

  ComplexMatrix out_rho;
  ComplexMatrix out_sigma;
  if (mode == ContractivityMode::Normalized) {
    out_rho = apply(channel, rho).state.matrix();
    out_sigma = apply(channel, sigma).state.matrix();
  } else {
    out_rho = apply_unnormalized(channel, rho.matrix()).hermitian_part();
    out_sigma = apply_unnormalized(channel, sigma.matrix()).hermitian_part();
  }

  ContractivityReport report;
  report.mode = mode;
  report.padded_dim = std::max(channel.dim_in(), channel.dim_out());
  report.singular_in = padded(jordan_decomposition(rho, sigma).singular, report.padded_dim);
  report.singular_out =
      padded(jordan_decomposition(out_rho, out_sigma).singular, report.padded_dim);

  const auto in = profile_from_singular_values(report.singular_in);
  const auto out = profile_from_singular_values(report.singular_out);
  for (std::size_t k = 1; k <= report.padded_dim; ++k) {
    ContractivityRow row{k, in.at(k), out.at(k), false};
    row.violated = row.d_out > row.d_in + tol;
    report.any_violation = report.any_violation || row.violated;
    report.rows.push_back(row);
  }
  report.submajorization = weakly_submajorized(OrderedVector(report.singular_out),
                                               OrderedVector(report.singular_in), tol);
  return report;
}

}  // namespace ptd
