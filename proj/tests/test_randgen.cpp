#include <cmath>

#include <gtest/gtest.h>

#include "tomodiscord/randgen.hpp"

using namespace tomo;

namespace {

// Mean purity of 10^4 random mixed states from seed 1, recorded once.
constexpr double recorded_mean_purity = 0.496419;

}  // namespace

TEST(XStateDraws, EqualWeightsAndNoCoherenceGiveMaximallyMixed) {
  const XState x = x_state_from_draws({0.3, 0.3, 0.3, 0.3}, 0.0, 0.0);
  EXPECT_LT((x.matrix() - Eigen::Matrix4cd::Identity() / 4.0).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(XStateDraws, SaturatedCoherences) {
  const XState x = x_state_from_draws({0.2, 0.9, 0.4, 0.7}, 1.0, 1.0);
  EXPECT_NEAR(x.rho14 * x.rho14, x.rho11 * x.rho44, 1e-15);
  EXPECT_NEAR(x.rho23 * x.rho23, x.rho22 * x.rho33, 1e-15);
  const auto s = x.state();
  EXPECT_GE(s.joint().eigenvalues().minCoeff(), -1e-12);
}

TEST(XStateDraws, AllValid) {
  SeedStream root(1);
  for (int k = 0; k < 10000; ++k) {
    SeedStream rng = root.substream(k);
    const XState x = random_x_state(rng);
    EXPECT_TRUE(x.violations().empty());
    EXPECT_TRUE(PairDensity::check(x.matrix()).empty());
  }
}

TEST(MixedDraws, AllValid) {
  SeedStream root(2);
  for (int k = 0; k < 2000; ++k) {
    SeedStream rng = root.substream(k);
    EXPECT_NO_THROW(random_mixed_state(rng));
  }
}

TEST(MixedDraws, MeanPurityRegression) {
  SeedStream root(1);
  double total = 0.0;
  const int n = 10000;
  for (int k = 0; k < n; ++k) {
    SeedStream rng = root.substream(k);
    total += random_mixed_state(rng).joint().purity();
  }
  const double mean = total / n;
  EXPECT_NEAR(mean, recorded_mean_purity, 0.05 * recorded_mean_purity);
  EXPECT_GT(mean, 0.25);
  EXPECT_LT(mean, 1.0);
}

TEST(MixedDraws, FormulaFromExplicitVectors) {
  std::array<Eigen::Vector4cd, 4> psi;
  psi[0] << 1, 0, 0, 0;
  psi[1] << 0, 2, 0, 0;
  psi[2] << 0, 0, cplx(0, 3), 0;
  psi[3] << 1, 0, 0, 1;
  const auto s = mixed_state_from_draws(psi, {0.1, 0.2, 0.3, 0.4});
  Eigen::Matrix4cd want = Eigen::Matrix4cd::Zero();
  want(0, 0) = 0.1 + 0.2;
  want(1, 1) = 0.2;
  want(2, 2) = 0.3;
  want(3, 3) = 0.2;
  want(0, 3) = want(3, 0) = 0.2;
  EXPECT_LT((s.matrix() - want).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Streams, FixedSeedIsReproducible) {
  SeedStream a(77), b(77);
  EXPECT_EQ(random_mixed_state(a).matrix(), random_mixed_state(b).matrix());
  EXPECT_EQ(random_mixed_state(a).matrix(), random_mixed_state(b).matrix());
}

TEST(Streams, SubstreamsIgnoreParentPosition) {
  SeedStream a(77);
  const SeedStream fresh = a.substream(5);
  for (int k = 0; k < 10; ++k) a.uniform();
  SeedStream s1 = fresh;
  SeedStream s2 = a.substream(5);
  for (int k = 0; k < 20; ++k) EXPECT_EQ(s1.uniform(), s2.uniform());
}

TEST(Streams, SubstreamsDiffer) {
  SeedStream root(77);
  SeedStream s1 = root.substream(1), s2 = root.substream(2), t = SeedStream(78).substream(1);
  const double u1 = s1.uniform(), u2 = s2.uniform(), v = t.uniform();
  EXPECT_NE(u1, u2);
  EXPECT_NE(u1, v);
}
