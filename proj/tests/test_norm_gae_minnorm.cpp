#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "moc/gae.hpp"
#include "moc/min_norm.hpp"
#include "moc/running_norm.hpp"

using namespace moc;

TEST(RunningNorm, ValueAtMeanNormalizesToOne) {
  RunningNorm stats(1);
  for (double x : {2.0, 4.0, 6.0}) stats.update(std::vector<double>{x});
  // mean is 4; normalize_only leaves stats untouched
  EXPECT_NEAR(stats.normalize_only(std::vector<double>{4.0})[0], 1.0, 1e-12);
}

TEST(RunningNorm, TwoStdAboveMeanNormalizesToTwo) {
  RunningNorm stats(1);
  for (double x : {1.0, 3.0}) stats.update(std::vector<double>{x});
  const double mean = 2.0, sd = 1.0;  // population std of {1,3}
  const double v = stats.normalize_only(std::vector<double>{mean + 2.0 * sd})[0];
  EXPECT_NEAR(v, 2.0, 1e-12);
}

TEST(RunningNorm, StreamMatchesHandComputedStatistics) {
  RunningNorm stats(1);
  for (double x : {1.0, 2.0, 3.0, 4.0}) stats.update(std::vector<double>{x});
  const std::vector<double> out = normalize_reward(stats, std::vector<double>{5.0});
  // Stats now include all five samples: mean 3, population std sqrt(2).
  const double expected = (5.0 - 3.0) / (2.0 * std::sqrt(2.0)) + 1.0;
  EXPECT_NEAR(out[0], expected, 1e-12);
  EXPECT_EQ(stats.count(), 5u);
  EXPECT_NEAR(stats.mean(0), 3.0, 1e-12);
}

TEST(RunningNorm, StdIsFloored) {
  RunningNorm stats(1);
  stats.update(std::vector<double>{7.0});
  EXPECT_GE(stats.std(0), 1e-6);
  // Constant stream stays finite.
  const std::vector<double> out = normalize_reward(stats, std::vector<double>{7.0});
  EXPECT_TRUE(std::isfinite(out[0]));
  EXPECT_NEAR(out[0], 1.0, 1e-9);
}

TEST(Amvs, IdenticalVectorsGiveZero) {
  EXPECT_DOUBLE_EQ(amvs(std::vector<double>{0.3, 0.7}, std::vector<double>{0.3, 0.7}),
                   0.0);
}

TEST(Amvs, MeanSquaredConvention) {
  EXPECT_DOUBLE_EQ(amvs(std::vector<double>{1.0, 0.0}, std::vector<double>{0.0, 1.0}),
                   1.0);
}

TEST(Amvs, Symmetric) {
  const std::vector<double> a{0.2, 0.9}, b{0.6, 0.1};
  EXPECT_DOUBLE_EQ(amvs(a, b), amvs(b, a));
}

TEST(Amvs, LengthMismatchThrows) {
  EXPECT_THROW(amvs(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}),
               std::invalid_argument);
}

TEST(HingeViolation, Cases) {
  EXPECT_DOUBLE_EQ(hinge_violation(0.05, 0.1), 0.0);
  EXPECT_DOUBLE_EQ(hinge_violation(0.3, 0.1), 0.2);
  EXPECT_DOUBLE_EQ(hinge_violation(0.1, 0.1), 0.0);
}

TEST(Gae, LamZeroIsOneStepTd) {
  const std::vector<double> r{1.0, 0.0, 2.0};
  const std::vector<double> v{0.5, 0.25, -0.5};
  const std::vector<double> adv = gae_advantages(r, v, 0.0, 0.9, 0.0);
  EXPECT_NEAR(adv[0], 1.0 + 0.9 * 0.25 - 0.5, 1e-15);
  EXPECT_NEAR(adv[1], 0.0 + 0.9 * -0.5 - 0.25, 1e-15);
  EXPECT_NEAR(adv[2], 2.0 + 0.0 - -0.5, 1e-15);
}

TEST(Gae, MonteCarloLimitIsRewardToGo) {
  const std::vector<double> r{1.0, 2.0, 3.0, 4.0};
  const std::vector<double> v(4, 0.0);
  const std::vector<double> adv = gae_advantages(r, v, 0.0, 1.0, 1.0);
  EXPECT_NEAR(adv[0], 10.0, 1e-12);
  EXPECT_NEAR(adv[1], 9.0, 1e-12);
  EXPECT_NEAR(adv[2], 7.0, 1e-12);
  EXPECT_NEAR(adv[3], 4.0, 1e-12);
}

TEST(Gae, MatchesBruteForceDoubleSum) {
  Rng rng(5);
  const int n = 10;
  std::vector<double> r(n), v(n);
  for (auto& x : r) x = 2.0 * rng.uniform01() - 1.0;
  for (auto& x : v) x = 2.0 * rng.uniform01() - 1.0;
  const double gamma = 0.97, lam = 0.9;
  const std::vector<double> adv = gae_advantages(r, v, 0.0, gamma, lam);

  // Independent oracle: A_t = sum_{k>=t} (gamma*lam)^(k-t) * delta_k.
  for (int t = 0; t < n; ++t) {
    double expect = 0.0;
    for (int k = t; k < n; ++k) {
      const double next_v = k + 1 < n ? v[k + 1] : 0.0;
      const double delta = r[k] + gamma * next_v - v[k];
      expect += std::pow(gamma * lam, k - t) * delta;
    }
    EXPECT_NEAR(adv[t], expect, 1e-10);
  }
}

TEST(Gae, LengthMismatchThrows) {
  EXPECT_THROW(gae_advantages(std::vector<double>{1.0},
                              std::vector<double>{1.0, 2.0}, 0.0, 0.9, 0.9),
               std::invalid_argument);
}

namespace {

double combined_norm(double c, const std::vector<double>& u1,
                     const std::vector<double>& u2) {
  double acc = 0.0;
  for (std::size_t i = 0; i < u1.size(); ++i) {
    const double x = c * u1[i] + (1.0 - c) * u2[i];
    acc += x * x;
  }
  return acc;
}

double grid_minimum(const std::vector<double>& u1, const std::vector<double>& u2) {
  double best = combined_norm(0.0, u1, u2);
  for (int i = 1; i <= 10000; ++i) {
    best = std::min(best, combined_norm(i * 1e-4, u1, u2));
  }
  return best;
}

}  // namespace

TEST(MinNorm, OrthogonalSymmetricCase) {
  const MinNormWeights w = min_norm_2(std::vector<double>{1.0, 0.0},
                                      std::vector<double>{0.0, 1.0});
  EXPECT_NEAR(w.c1, 0.5, 1e-15);
  EXPECT_NEAR(w.c2, 0.5, 1e-15);
}

TEST(MinNorm, FirstBranchSelectsSmallerVector) {
  // u1.u2 = 4 >= u1.u1 = 2 -> c = 1.
  const MinNormWeights w = min_norm_2(std::vector<double>{1.0, 1.0},
                                      std::vector<double>{2.0, 2.0});
  EXPECT_DOUBLE_EQ(w.c1, 1.0);
  EXPECT_DOUBLE_EQ(w.c2, 0.0);
}

TEST(MinNorm, InteriorSolutionCancelsOpposingVectors) {
  const std::vector<double> u1{3.0, 0.0}, u2{-1.0, 0.0};
  const MinNormWeights w = min_norm_2(u1, u2);
  EXPECT_NEAR(w.c1, 0.25, 1e-15);
  EXPECT_NEAR(combined_norm(w.c1, u1, u2), 0.0, 1e-30);
}

TEST(MinNorm, SecondBranchSelectsOtherEndpoint) {
  // Swap the first-branch case: u1.u2 = 4 >= u2.u2 = 2 -> c = 0.
  const MinNormWeights w = min_norm_2(std::vector<double>{2.0, 2.0},
                                      std::vector<double>{1.0, 1.0});
  EXPECT_DOUBLE_EQ(w.c1, 0.0);
  EXPECT_DOUBLE_EQ(w.c2, 1.0);
}

TEST(MinNorm, BeatsGridSearchOnRandomPairs) {
  Rng rng(1009);
  for (int trial = 0; trial < 500; ++trial) {
    const int dim = 1 + static_cast<int>(rng.uniform_index(16));
    std::vector<double> u1(static_cast<std::size_t>(dim)),
        u2(static_cast<std::size_t>(dim));
    for (auto& x : u1) x = 4.0 * rng.uniform01() - 2.0;
    for (auto& x : u2) x = 4.0 * rng.uniform01() - 2.0;
    const MinNormWeights w = min_norm_2(u1, u2);
    EXPECT_NEAR(w.c1 + w.c2, 1.0, 1e-12);
    EXPECT_GE(w.c1, 0.0);
    EXPECT_LE(w.c1, 1.0);
    EXPECT_LE(combined_norm(w.c1, u1, u2), grid_minimum(u1, u2) + 1e-8);
  }
}

TEST(MinNorm, LengthMismatchThrows) {
  EXPECT_THROW(min_norm_2(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}),
               std::invalid_argument);
}
