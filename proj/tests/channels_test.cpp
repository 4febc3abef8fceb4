#include "ptd/channels.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "ptd/distances.hpp"

using namespace ptd;

namespace {

DensityMatrix diag(std::initializer_list<double> v) {
  return DensityMatrix::validate(ComplexMatrix::diagonal(v));
}

// Coarse graining of a diagonal state is a pushforward of its diagonal.
std::vector<double> pushforward(const std::vector<double>& p, const std::vector<std::size_t>& f,
                                std::size_t out_dim) {
  std::vector<double> out(out_dim, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) out[f[i]] += p[i];
  return out;
}

// Padded partitioned distance of two diagonal states from their diagonals.
double diagonal_distance(std::vector<double> p, std::vector<double> q, std::size_t k) {
  const std::size_t n = std::max(p.size(), q.size());
  p.resize(n, 0.0);
  q.resize(n, 0.0);
  return oracle::classical_distance(p, q, k);
}

}  // namespace

TEST(Flags, SingleUnitary) {
  Rng rng(1);
  const auto ch = KrausChannel::build({random_unitary(3, rng)});
  EXPECT_TRUE(ch.flags().trace_preserving);
  EXPECT_TRUE(ch.flags().unital);
  EXPECT_TRUE(ch.flags().subunital);
  EXPECT_TRUE(ch.flags().bistochastic);
}

TEST(Flags, AmplitudeDampingIsNotSubunital) {
  const auto ch = amplitude_damping(0.5);
  EXPECT_TRUE(ch.flags().trace_preserving);
  EXPECT_FALSE(ch.flags().unital);
  EXPECT_FALSE(ch.flags().subunital);
  // sum E E^dagger = diag(1.5, 0.5)
  EXPECT_NEAR(ch.flags().subunital_excess, 0.5, 1e-15);
  EXPECT_NEAR(ch.flags().unital_residual, 0.5, 1e-15);
}

TEST(Flags, PhaseDampingIsBistochastic) {
  for (double lambda : {0.0, 0.3, 1.0}) {
    EXPECT_TRUE(phase_damping(lambda).flags().bistochastic);
  }
}

TEST(Flags, CoarseGrainingViolatesSubunitality) {
  const std::vector<std::size_t> f{0, 0, 0, 1, 1};
  const auto ch = coarse_graining(f, 2);
  EXPECT_TRUE(ch.flags().trace_preserving);
  EXPECT_FALSE(ch.flags().subunital);
  // sum E E^dagger = 3|0><0| + 2|1><1|
  EXPECT_NEAR(ch.flags().subunital_excess, 2.0, 1e-15);
}

TEST(Flags, UnitaryMixtureAndDepolarizing) {
  Rng rng(2);
  std::vector<ComplexMatrix> us;
  for (int i = 0; i < 3; ++i) us.push_back(random_unitary(3, rng));
  const std::vector<double> w{0.2, 0.3, 0.5};
  EXPECT_TRUE(unitary_mixture(w, us).flags().bistochastic);
  EXPECT_TRUE(unitary_mixture(w, us).flags().subunital);
  EXPECT_TRUE(depolarizing(2, 1.0).flags().bistochastic);
  EXPECT_TRUE(depolarizing(3, 0.4).flags().bistochastic);
}

TEST(Build, Errors) {
  EXPECT_PTD_ERROR(KrausChannel::build({}), ErrorCode::ShapeMismatch);
  EXPECT_PTD_ERROR(KrausChannel::build({ComplexMatrix::identity(2), ComplexMatrix::identity(3)}),
                   ErrorCode::ShapeMismatch);
  EXPECT_PTD_ERROR(KrausChannel::build({ComplexMatrix::identity(2), ComplexMatrix::identity(2)}),
                   ErrorCode::TraceIncreasing);
  EXPECT_PTD_ERROR(amplitude_damping(1.5), ErrorCode::ParameterOutOfRange);
  const std::vector<std::size_t> f{0, 3};
  EXPECT_PTD_ERROR(coarse_graining(f, 2), ErrorCode::ParameterOutOfRange);
  const std::vector<double> w{0.5, 0.6};
  const std::vector<ComplexMatrix> us{ComplexMatrix::identity(2), ComplexMatrix::identity(2)};
  EXPECT_PTD_ERROR(unitary_mixture(w, us), ErrorCode::ParameterOutOfRange);
}

TEST(Apply, UnitaryChannelConjugates) {
  Rng rng(3);
  const auto u = random_unitary(3, rng);
  const auto rho = random_density_matrix(3, 2, rng);
  const auto out = apply(KrausChannel::build({u}), rho);
  EXPECT_LT(max_abs_diff(out.state.matrix(), conjugate_by(u, rho.matrix())), 1e-14);
  EXPECT_NEAR(out.success_probability, 1.0, 1e-14);
}

TEST(Apply, FullDepolarizingGivesMaximallyMixed) {
  Rng rng(4);
  const auto ch = depolarizing(2, 1.0);
  for (int rep = 0; rep < 10; ++rep) {
    const auto out = apply(ch, random_density_matrix(2, 1, rng));
    EXPECT_LT(max_abs_diff(out.state.matrix(), ComplexMatrix::diagonal({0.5, 0.5})), 1e-15);
  }
}

TEST(Apply, DepolarizingMatchesClosedForm) {
  Rng rng(5);
  const auto rho = random_density_matrix(3, 3, rng);
  const double p = 0.35;
  const auto expected = (1.0 - p) * rho.matrix() + (p / 3.0) * ComplexMatrix::identity(3);
  EXPECT_LT(max_abs_diff(apply(depolarizing(3, p), rho).state.matrix(), expected), 1e-14);
}

TEST(Apply, ErrorsOnWrongDimensionAndZeroOutput) {
  const std::vector<std::size_t> f{0, 0};
  EXPECT_PTD_ERROR(apply(coarse_graining(f, 1), maximally_mixed(3)), ErrorCode::DimensionMismatch);
  const auto projector = KrausChannel::build({ComplexMatrix::diagonal({1.0, 0.0})});
  EXPECT_PTD_ERROR(apply(projector, diag({0.0, 1.0})), ErrorCode::ZeroTrace);
  EXPECT_NEAR(apply(projector, diag({0.25, 0.75})).success_probability, 0.25, 1e-15);
}

TEST(MeasurementChannel, ComputationalPvmDephases) {
  const auto ch = measurement_channel(
      Povm::validate({ComplexMatrix::diagonal({1.0, 0.0}), ComplexMatrix::diagonal({0.0, 1.0})}));
  const auto diagonal = diag({0.3, 0.7});
  EXPECT_LT(max_abs_diff(apply(ch, diagonal).state.matrix(), diagonal.matrix()), 1e-15);
  const auto coherent = DensityMatrix::validate(ComplexMatrix{{0.5, 0.5}, {0.5, 0.5}});
  EXPECT_LT(max_abs_diff(apply(ch, coherent).state.matrix(), ComplexMatrix::diagonal({0.5, 0.5})), 1e-15);
}

TEST(MeasurementChannel, TrivialPovmIsIdentity) {
  Rng rng(6);
  const auto rho = random_density_matrix(3, 3, rng);
  const auto ch = measurement_channel(Povm::validate({ComplexMatrix::identity(3)}));
  EXPECT_LT(max_abs_diff(apply(ch, rho).state.matrix(), rho.matrix()), 1e-15);
}

TEST(MeasurementChannel, AlwaysBistochastic) {
  Rng rng(7);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t d = rng.uniform_index(2, 5);
    const auto ch = measurement_channel(random_rank_one_povm(d, rng.uniform_index(d, 2 * d + 2), rng));
    EXPECT_LE(ch.flags().trace_preserving_residual, 1e-9);
    EXPECT_LE(ch.flags().unital_residual, 1e-9);
  }
}

TEST(Contractivity, CoarseGrainingWitnessAgainstDiagonalOracle) {
  const std::vector<double> p(5, 0.2);
  const std::vector<double> q{0.0, 0.0, 0.0, 0.5, 0.5};
  const std::vector<std::size_t> f{0, 0, 0, 1, 1};
  const auto p_out = pushforward(p, f, 2);
  const auto q_out = pushforward(q, f, 2);

  // Oracle values, then frozen.
  EXPECT_NEAR(diagonal_distance(p, q, 1), 0.15, 1e-15);
  EXPECT_NEAR(diagonal_distance(p, q, 2), 0.3, 1e-15);
  EXPECT_NEAR(diagonal_distance(p, q, 5), 0.6, 1e-15);
  EXPECT_NEAR(diagonal_distance(p_out, q_out, 1), 0.3, 1e-15);
  EXPECT_NEAR(diagonal_distance(p_out, q_out, 2), 0.6, 1e-15);
  EXPECT_NEAR(diagonal_distance(p_out, q_out, 5), 0.6, 1e-15);

  const auto report = contractivity_report(coarse_graining(f, 2), maximally_mixed(5),
                                           diag({0.0, 0.0, 0.0, 0.5, 0.5}));
  EXPECT_EQ(report.padded_dim, 5u);
  const std::vector<double> s_in{0.3, 0.3, 0.2, 0.2, 0.2};
  const std::vector<double> s_out{0.6, 0.6, 0.0, 0.0, 0.0};
  for (std::size_t j = 0; j < 5; ++j) {
    EXPECT_NEAR(report.singular_in[j], s_in[j], 1e-12);
    EXPECT_NEAR(report.singular_out[j], s_out[j], 1e-12);
  }
  for (std::size_t k = 1; k <= 5; ++k) {
    const auto& row = report.rows[k - 1];
    EXPECT_NEAR(row.d_in, diagonal_distance(p, q, k), 1e-12);
    EXPECT_NEAR(row.d_out, diagonal_distance(p_out, q_out, k), 1e-12);
  }
  EXPECT_TRUE(report.rows[0].violated);
  EXPECT_TRUE(report.rows[1].violated);
  EXPECT_FALSE(report.rows[4].violated);
  EXPECT_TRUE(report.any_violation);
  EXPECT_FALSE(report.submajorization.holds);
}

TEST(Contractivity, IdentityChannelIsExact) {
  Rng rng(8);
  const auto rho = random_density_matrix(4, 2, rng);
  const auto sigma = random_density_matrix(4, 4, rng);
  const auto report = contractivity_report(KrausChannel::build({ComplexMatrix::identity(4)}), rho, sigma);
  for (const auto& row : report.rows) EXPECT_EQ(row.d_in, row.d_out);
  EXPECT_FALSE(report.any_violation);
}

TEST(Contractivity, BistochasticQubitsNeverIncrease) {
  Rng rng(9);
  for (int rep = 0; rep < 200; ++rep) {
    const auto ch = random_bistochastic_channel(2, rng);
    const auto report = contractivity_report(ch, random_density_matrix(2, rng.uniform_index(1, 2), rng),
                                             random_density_matrix(2, rng.uniform_index(1, 2), rng));
    EXPECT_FALSE(report.any_violation);
    EXPECT_TRUE(report.submajorization.holds);
  }
}

TEST(Contractivity, SubunitalContractionsUnnormalized) {
  Rng rng(10);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t d = rng.uniform_index(2, 4);
    const auto ch = random_subunital_contraction(d, rng);
    EXPECT_TRUE(ch.flags().subunital);
    EXPECT_TRUE(ch.flags().trace_nonincreasing);
    const auto rho = random_density_matrix(d, rng.uniform_index(1, d), rng);
    const auto sigma = random_density_matrix(d, rng.uniform_index(1, d), rng);
    const auto report = contractivity_report(ch, rho, sigma, ContractivityMode::Unnormalized);
    EXPECT_FALSE(report.any_violation);
    EXPECT_TRUE(report.submajorization.holds);
  }
}

TEST(Contractivity, TracePreservingNeverIncreasesTraceDistance) {
  Rng rng(11);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t d = rng.uniform_index(2, 4);
    const std::size_t out = rng.uniform_index(1, d + 1);
    const std::size_t n = std::max<std::size_t>(2, (d + out - 1) / out);
    const auto ch = random_trace_preserving_channel(d, out, n, rng);
    EXPECT_TRUE(ch.flags().trace_preserving);
    const auto report = contractivity_report(ch, random_density_matrix(d, d, rng),
                                             random_density_matrix(d, rng.uniform_index(1, d), rng));
    EXPECT_LE(report.rows.back().d_out, report.rows.back().d_in + 1e-9);
  }
}

TEST(Contractivity, ModeAndDimensionErrors) {
  Rng rng(12);
  const auto lossy = KrausChannel::build({ComplexMatrix::diagonal({1.0, 0.5})});
  EXPECT_PTD_ERROR(contractivity_report(lossy, maximally_mixed(2), maximally_mixed(2)),
                   ErrorCode::NotTracePreserving);
  EXPECT_PTD_ERROR(contractivity_report(depolarizing(2, 0.5), maximally_mixed(3), maximally_mixed(3)),
                   ErrorCode::DimensionMismatch);
}

TEST(Apply, OutputsAreStatesForTracePreservingChannels) {
  Rng rng(13);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t d = rng.uniform_index(2, 4);
    const auto ch = random_trace_preserving_channel(d, rng.uniform_index(1, 4), 4, rng);
    const auto raw = apply_unnormalized(ch, random_density_matrix(d, rng.uniform_index(1, d), rng).matrix());
    EXPECT_NO_THROW(DensityMatrix::validate(raw.hermitian_part(), 1e-9));
    EXPECT_LT(raw.hermiticity_residual(), 1e-9);
  }
}
