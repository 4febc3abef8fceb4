#include "ptd/majorization.hpp"

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "ptd/distances.hpp"
#include "ptd/random.hpp"

using namespace ptd;

namespace {

OrderedVector ov(std::vector<double> v) { return OrderedVector(std::move(v)); }

std::vector<double> random_nonnegative(std::size_t n, Rng& rng) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform();
  return v;
}

}  // namespace

TEST(OrderedVector, SortsAndSums) {
  const auto v = ov({0.2, 0.5, 0.3});
  EXPECT_EQ(v.decreasing(), (std::vector<double>{0.5, 0.3, 0.2}));
  EXPECT_DOUBLE_EQ(v.top_sum(2), 0.8);
  EXPECT_DOUBLE_EQ(v.top_sum(7), v.total());
  EXPECT_EQ(v.padded(5).size(), 5u);
  EXPECT_PTD_ERROR(ov({0.1, -0.2}), ErrorCode::NegativeEntry);
}

TEST(WeakSubmajorization, Examples) {
  const auto r = weakly_submajorized(ov({0.5, 0.3, 0.2}), ov({0.6, 0.3, 0.1}));
  EXPECT_TRUE(r.holds);
  ASSERT_EQ(r.margins.size(), 3u);
  EXPECT_NEAR(r.margins[0], 0.1, 1e-15);
  EXPECT_NEAR(r.margins[1], 0.1, 1e-15);
  EXPECT_NEAR(r.margins[2], 0.0, 1e-15);

  const auto same = weakly_submajorized(ov({0.4, 0.1}), ov({0.4, 0.1}));
  EXPECT_TRUE(same.holds);
  for (double m : same.margins) EXPECT_EQ(m, 0.0);

  const auto fails = weakly_submajorized(ov({1.0, 0.0}), ov({0.6, 0.4}));
  EXPECT_FALSE(fails.holds);
  EXPECT_NEAR(fails.margins[0], -0.4, 1e-15);
}

TEST(Majorization, Examples) {
  EXPECT_TRUE(majorized(ov({0.5, 0.3, 0.2}), ov({0.6, 0.3, 0.1})));
  EXPECT_TRUE(majorized(ov({0.5, 0.5}), ov({1.0, 0.0})));
  EXPECT_FALSE(majorized(ov({0.4, 0.3}), ov({0.9, 0.3})));
  EXPECT_TRUE(weakly_submajorized(ov({0.4, 0.3}), ov({0.9, 0.3})).holds);
}

TEST(WeakSubmajorization, PaddingNeverChangesOutcome) {
  Rng rng(1);
  for (int rep = 0; rep < 200; ++rep) {
    const auto x = ov(random_nonnegative(rng.uniform_index(1, 5), rng));
    const auto y = ov(random_nonnegative(rng.uniform_index(1, 5), rng));
    const std::size_t extra = rng.uniform_index(0, 4);
    const bool plain = weakly_submajorized(x, y).holds;
    EXPECT_EQ(weakly_submajorized(x.padded(x.size() + extra), y).holds, plain);
    EXPECT_EQ(weakly_submajorized(x, y.padded(y.size() + extra)).holds, plain);
    EXPECT_EQ(majorized(x.padded(x.size() + extra), y), majorized(x, y));
  }
}

TEST(WeakSubmajorization, ReflexiveAndTransitive) {
  Rng rng(2);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = rng.uniform_index(1, 6);
    const auto xv = random_nonnegative(n, rng);
    // Entrywise growth of the decreasing rearrangement gives a chain.
    auto yv = ov(xv).decreasing();
    for (auto& v : yv) v += 0.1 * rng.uniform();
    auto zv = ov(yv).decreasing();
    for (auto& v : zv) v += 0.1 * rng.uniform();
    const auto x = ov(xv), y = ov(yv), z = ov(zv);
    EXPECT_TRUE(weakly_submajorized(x, x).holds);
    ASSERT_TRUE(weakly_submajorized(x, y).holds);
    ASSERT_TRUE(weakly_submajorized(y, z).holds);
    EXPECT_TRUE(weakly_submajorized(x, z, 2 * kMajorizationTolerance).holds);

    const auto w = ov(random_nonnegative(n, rng));
    if (weakly_submajorized(w, x).holds && weakly_submajorized(x, z).holds) {
      EXPECT_TRUE(weakly_submajorized(w, z, 2 * kMajorizationTolerance).holds);
    }
  }
}

TEST(GapMajorization, OptimalPvmIsFull) {
  Rng rng(3);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t d = rng.uniform_index(2, 5);
    const auto rho = random_density_matrix(d, rng.uniform_index(1, d), rng);
    const auto sigma = random_density_matrix(d, rng.uniform_index(1, d), rng);
    const auto check = check_gap_majorization(optimal_pvm(rho, sigma), rho, sigma);
    EXPECT_TRUE(check.weak);
    EXPECT_TRUE(check.full);
  }
}

TEST(GapMajorization, IdenticalStatesTrivial) {
  Rng rng(4);
  const auto rho = random_density_matrix(3, 3, rng);
  EXPECT_TRUE(check_gap_majorization(random_rank_one_povm(3, 6, rng), rho, rho).weak);
}

TEST(GapMajorization, RandomRankOneAlwaysWeak) {
  Rng rng(5);
  std::size_t full = 0;
  for (int rep = 0; rep < 300; ++rep) {
    const auto rho = random_density_matrix(3, rng.uniform_index(1, 3), rng);
    const auto sigma = random_density_matrix(3, rng.uniform_index(1, 3), rng);
    const auto povm = random_rank_one_povm(3, rng.uniform_index(3, 8), rng);
    const auto check = check_gap_majorization(povm, rho, sigma);
    EXPECT_TRUE(check.weak);
    EXPECT_EQ(check.report.padded_length, std::max<std::size_t>(povm.outcomes(), 3));
    full += check.full;
  }
  EXPECT_LT(full, 30u);
}

TEST(GapMajorization, RejectsLargeTraceElements) {
  EXPECT_PTD_ERROR(check_gap_majorization(Povm::validate({ComplexMatrix::identity(2)}),
                                          maximally_mixed(2), maximally_mixed(2)),
                   ErrorCode::HypothesisViolated);
}
