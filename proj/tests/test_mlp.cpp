#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "moc/distributions.hpp"
#include "moc/mlp.hpp"

using namespace moc;

namespace {

// Independent slow-path forward pass used as the reference oracle. Kept
// deliberately naive: nested loops over explicit 2-D index math.
std::vector<double> reference_forward(const MlpParams& p,
                                      const std::vector<double>& input) {
  std::vector<double> cur = input;
  for (int l = 0; l < p.shape.layer_count(); ++l) {
    const int rows = p.shape.layer_rows(l);
    const int cols = p.shape.layer_cols(l);
    std::vector<double> out(static_cast<std::size_t>(rows), 0.0);
    for (int r = 0; r < rows; ++r) {
      double acc = 0.0;
      for (int c = 0; c < cols; ++c) {
        acc += p.weights[l][static_cast<std::size_t>(r) * cols + c] * cur[c];
      }
      acc += p.biases[l][r];
      if (l < p.shape.hidden_layers && acc < 0.0) acc = 0.0;
      out[r] = acc;
    }
    cur = out;
  }
  return cur;
}

MlpParams random_net(const MlpShape& shape, std::uint64_t seed) {
  Rng rng(seed);
  return make_mlp(shape, rng);
}

std::vector<double> random_vec(int n, Rng& rng) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = 2.0 * rng.uniform01() - 1.0;
  return v;
}

}  // namespace

TEST(MlpForward, ZeroWeightsGiveOutputBias) {
  MlpParams p = random_net({3, 8, 2, 2}, 1);
  for (auto& w : p.weights) std::fill(w.begin(), w.end(), 0.0);
  p.biases.back() = {0.25, -1.5};
  const std::vector<double> out = mlp_forward(p, std::vector<double>{1.0, -2.0, 3.0});
  EXPECT_DOUBLE_EQ(out[0], 0.25);
  EXPECT_DOUBLE_EQ(out[1], -1.5);
}

TEST(MlpForward, IdentityLinearLayer) {
  MlpParams p;
  p.shape = {3, 1, 0, 3};  // single linear layer
  p.weights = {{1, 0, 0, 0, 1, 0, 0, 0, 1}};
  p.biases = {{0, 0, 0}};
  const std::vector<double> v{0.5, -2.0, 7.25};
  EXPECT_EQ(mlp_forward(p, v), v);
}

TEST(MlpForward, MatchesReferenceImplementation) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const MlpShape shape{4, 16, 3, 5};
    MlpParams p = random_net(shape, 100 + trial);
    const std::vector<double> input = random_vec(shape.input_dim, rng);
    const std::vector<double> fast = mlp_forward(p, input);
    const std::vector<double> slow = reference_forward(p, input);
    ASSERT_EQ(fast.size(), slow.size());
    for (std::size_t i = 0; i < fast.size(); ++i) {
      const double scale = std::max(1.0, std::abs(slow[i]));
      EXPECT_NEAR(fast[i], slow[i], 1e-12 * scale);
    }
  }
}

TEST(MlpForward, DimensionMismatchThrows) {
  MlpParams p = random_net({3, 8, 1, 2}, 2);
  EXPECT_THROW(mlp_forward(p, std::vector<double>{1.0, 2.0}), std::invalid_argument);
}

TEST(MlpGradients, ZeroUpstreamGivesZeroGradients) {
  MlpParams p = random_net({3, 8, 2, 2}, 3);
  const MlpGrads g = mlp_gradients(p, std::vector<double>{0.3, -0.4, 0.9},
                                   std::vector<double>{0.0, 0.0});
  for (const auto& w : g.weights)
    for (double x : w) EXPECT_DOUBLE_EQ(x, 0.0);
  for (const auto& b : g.biases)
    for (double x : b) EXPECT_DOUBLE_EQ(x, 0.0);
}

TEST(MlpGradients, SingleLinearLayerIsOuterProduct) {
  MlpParams p;
  p.shape = {3, 1, 0, 2};
  p.weights = {{0.1, 0.2, 0.3, -0.4, 0.5, -0.6}};
  p.biases = {{0.0, 0.0}};
  const std::vector<double> input{2.0, -1.0, 0.5};
  const std::vector<double> upstream{3.0, -2.0};
  const MlpGrads g = mlp_gradients(p, input, upstream);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 3; ++c) {
      EXPECT_DOUBLE_EQ(g.weights[0][static_cast<std::size_t>(r) * 3 + c],
                       upstream[r] * input[c]);
    }
    EXPECT_DOUBLE_EQ(g.biases[0][r], upstream[r]);
  }
}

TEST(MlpGradients, MatchesCentralFiniteDifferences) {
  const MlpShape shape{3, 10, 3, 2};
  Rng rng(11);
  MlpParams p = random_net(shape, 42);
  const std::vector<double> input = random_vec(shape.input_dim, rng);
  const std::vector<double> upstream = random_vec(shape.output_dim, rng);
  const MlpGrads g = mlp_gradients(p, input, upstream);

  auto objective = [&](const MlpParams& q) {
    const std::vector<double> out = mlp_forward(q, input);
    double acc = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) acc += out[i] * upstream[i];
    return acc;
  };
  const double h = 1e-5;
  for (std::size_t l = 0; l < p.weights.size(); ++l) {
    for (std::size_t i = 0; i < p.weights[l].size(); ++i) {
      MlpParams q = p;
      q.weights[l][i] += h;
      const double up = objective(q);
      q.weights[l][i] -= 2.0 * h;
      const double dn = objective(q);
      const double fd = (up - dn) / (2.0 * h);
      const double tol = 1e-4 * std::max(1e-6, std::abs(fd));
      ASSERT_NEAR(g.weights[l][i], fd, tol) << "layer " << l << " weight " << i;
    }
    for (std::size_t i = 0; i < p.biases[l].size(); ++i) {
      MlpParams q = p;
      q.biases[l][i] += h;
      const double up = objective(q);
      q.biases[l][i] -= 2.0 * h;
      const double dn = objective(q);
      const double fd = (up - dn) / (2.0 * h);
      const double tol = 1e-4 * std::max(1e-6, std::abs(fd));
      ASSERT_NEAR(g.biases[l][i], fd, tol) << "layer " << l << " bias " << i;
    }
  }
}

TEST(MlpGradients, UpstreamShapeMismatchThrows) {
  MlpParams p = random_net({3, 8, 1, 2}, 5);
  EXPECT_THROW(mlp_gradients(p, std::vector<double>{1.0, 2.0, 3.0},
                             std::vector<double>{1.0}),
               std::invalid_argument);
}

TEST(Softmax, SymmetricLogits) {
  EXPECT_NEAR(softmax_logprob(std::vector<double>{0.0, 0.0}, 0), std::log(0.5), 1e-15);
  EXPECT_NEAR(softmax_logprob(std::vector<double>{3.0, 3.0, 3.0, 3.0}, 2),
              std::log(0.25), 1e-15);
}

TEST(Softmax, ExtremeLogitsMatchHighPrecisionReference) {
  // log p0 for logits (10, -10): -log(1 + exp(-20)), evaluated in long double.
  const long double ref = -std::log1p(std::exp(-20.0L));
  EXPECT_NEAR(softmax_logprob(std::vector<double>{10.0, -10.0}, 0),
              static_cast<double>(ref), 1e-9);
}

TEST(Softmax, NormalizationProperty) {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> logits(4);
    for (auto& x : logits) x = 40.0 * rng.uniform01() - 20.0;
    double total = 0.0;
    for (int a = 0; a < 4; ++a) total += std::exp(softmax_logprob(logits, a));
    EXPECT_NEAR(total, 1.0, 1e-9);
  }
}

TEST(Softmax, OutOfRangeActionThrows) {
  EXPECT_THROW(softmax_logprob(std::vector<double>{0.0, 0.0}, 2), std::invalid_argument);
  EXPECT_THROW(softmax_logprob(std::vector<double>{0.0, 0.0}, -1), std::invalid_argument);
}

TEST(CategoricalSample, FrequenciesMatchProbabilities) {
  Rng rng(23);
  const std::vector<double> logits{0.0, 0.0};
  int count0 = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    if (categorical_sample(logits, rng) == 0) count0 += 1;
  }
  const double freq = static_cast<double>(count0) / draws;
  EXPECT_GE(freq, 0.49);
  EXPECT_LE(freq, 0.51);
}

TEST(CategoricalSample, DegenerateDistribution) {
  Rng rng(29);
  const std::vector<double> logits{1e9, -1e9};
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(categorical_sample(logits, rng), 0);
}

TEST(CategoricalSample, DeterministicUnderFixedSeed) {
  const std::vector<double> logits{0.3, -0.2, 1.1};
  std::vector<int> first, second;
  {
    Rng rng(31);
    for (int i = 0; i < 200; ++i) first.push_back(categorical_sample(logits, rng));
  }
  {
    Rng rng(31);
    for (int i = 0; i < 200; ++i) second.push_back(categorical_sample(logits, rng));
  }
  EXPECT_EQ(first, second);
}

TEST(CategoricalSample, NanLogitsThrow) {
  Rng rng(37);
  EXPECT_THROW(categorical_sample(std::vector<double>{std::nan(""), 0.0}, rng),
               std::invalid_argument);
}

TEST(Adam, ZeroGradientAtStartLeavesParamsUnchanged) {
  MlpParams p = random_net({2, 4, 1, 1}, 41);
  const MlpParams before = p;
  AdamState st = make_adam(p, 1e-3);
  MlpGrads g = make_grads(p);
  adam_step(st, p, g);
  EXPECT_EQ(st.t, 1);
  for (std::size_t l = 0; l < p.weights.size(); ++l) {
    for (std::size_t i = 0; i < p.weights[l].size(); ++i) {
      EXPECT_DOUBLE_EQ(p.weights[l][i], before.weights[l][i]);
    }
  }
}

TEST(Adam, ConstantGradientStepApproachesLearningRate) {
  MlpParams p;
  p.shape = {1, 1, 0, 1};
  p.weights = {{0.0}};
  p.biases = {{0.0}};
  AdamState st = make_adam(p, 1e-2);
  MlpGrads g = make_grads(p);
  g.weights[0][0] = 3.5;  // constant positive gradient
  double prev = p.weights[0][0];
  double step = 0.0;
  for (int i = 0; i < 500; ++i) {
    adam_step(st, p, g);
    step = prev - p.weights[0][0];
    prev = p.weights[0][0];
  }
  EXPECT_NEAR(step, st.lr, 1e-4);  // |step| -> lr * sign(g)
}

TEST(Adam, SingleStepMatchesHandComputation) {
  // One step from a known accumulator state, checked against the update rule
  // evaluated by hand: m'=0.9*0.2+0.1*1.5, v'=0.999*0.04+0.001*2.25, t: 3->4.
  MlpParams p;
  p.shape = {1, 1, 0, 1};
  p.weights = {{1.0}};
  p.biases = {{0.0}};
  AdamState st = make_adam(p, 1e-3);
  st.t = 3;
  st.m_weights[0][0] = 0.2;
  st.v_weights[0][0] = 0.04;
  MlpGrads g = make_grads(p);
  g.weights[0][0] = 1.5;
  adam_step(st, p, g);

  const double m = 0.9 * 0.2 + 0.1 * 1.5;
  const double v = 0.999 * 0.04 + 0.001 * 1.5 * 1.5;
  const double mhat = m / (1.0 - std::pow(0.9, 4));
  const double vhat = v / (1.0 - std::pow(0.999, 4));
  const double expected = 1.0 - 1e-3 * mhat / (std::sqrt(vhat) + 1e-8);
  EXPECT_EQ(st.t, 4);
  EXPECT_NEAR(p.weights[0][0], expected, 1e-12);
}

TEST(Adam, NonFiniteGradientRejectedWithoutUpdate) {
  MlpParams p = random_net({2, 4, 1, 1}, 43);
  const MlpParams before = p;
  AdamState st = make_adam(p, 1e-3);
  MlpGrads g = make_grads(p);
  g.weights[1][0] = std::numeric_limits<double>::infinity();
  EXPECT_THROW(adam_step(st, p, g), std::runtime_error);
  EXPECT_EQ(st.t, 0);
  for (std::size_t l = 0; l < p.weights.size(); ++l) {
    EXPECT_EQ(p.weights[l], before.weights[l]);
  }
}

TEST(Mlp, ForwardIsPureAndRepeatable) {
  MlpParams p = random_net({3, 16, 2, 4}, 47);
  Rng rng(49);
  const std::vector<double> input = random_vec(3, rng);
  const std::vector<double> a = mlp_forward(p, input);
  const std::vector<double> b = mlp_forward(p, input);
  EXPECT_EQ(a, b);
}
