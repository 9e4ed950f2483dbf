#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "moc/env/fishwood.hpp"
#include "moc/env/fruit_tree.hpp"

using namespace moc;

TEST(Fishwood, ResetIsDeterministicAndWellFormed) {
  FishwoodEnv env;
  const EnvObservation a = env.reset(123);
  const EnvObservation b = env.reset(123);
  EXPECT_EQ(a.state, b.state);
  EXPECT_EQ(a.state.size(), 1u);  // 1-dim state
  EXPECT_FALSE(a.done);
  EXPECT_EQ(a.reward, (std::vector<double>{0.0, 0.0}));
}

TEST(Fishwood, SameSeedSameEpisode) {
  FishwoodConfig cfg;
  cfg.horizon = 50;
  FishwoodEnv env1(cfg), env2(cfg);
  env1.reset(7);
  env2.reset(7);
  for (int t = 0; t < 50; ++t) {
    const int action = t % 2;
    const EnvObservation a = env1.step(action);
    const EnvObservation b = env2.step(action);
    EXPECT_EQ(a.reward, b.reward);
    EXPECT_EQ(a.state, b.state);
    EXPECT_EQ(a.done, b.done);
  }
}

TEST(Fishwood, CertainWoodProbability) {
  FishwoodConfig cfg;
  cfg.woodprob = 1.0;
  cfg.horizon = 25;
  FishwoodEnv env(cfg);
  env.reset(1);
  for (int t = 0; t < 25; ++t) {
    const EnvObservation obs = env.step(FishwoodEnv::kGoWood);
    EXPECT_EQ(obs.reward, (std::vector<double>{1.0, 0.0}));
    EXPECT_EQ(obs.state[0], FishwoodEnv::kWoodsLocation);
  }
}

TEST(Fishwood, AlwaysWoodMeanReturnNearHalfHorizon) {
  FishwoodEnv env;  // woodprob = fishprob = 0.5, horizon 200
  double total = 0.0;
  const int episodes = 1000;
  for (int e = 0; e < episodes; ++e) {
    env.reset(1000 + static_cast<std::uint64_t>(e));
    double wood = 0.0;
    while (!env.done()) wood += env.step(FishwoodEnv::kGoWood).reward[0];
    total += wood;
  }
  const double mean = total / episodes;
  EXPECT_GE(mean, 95.0);
  EXPECT_LE(mean, 105.0);
}

TEST(Fishwood, TerminatesExactlyAtHorizon) {
  FishwoodEnv env;
  env.reset(3);
  for (int t = 0; t < 199; ++t) EXPECT_FALSE(env.step(FishwoodEnv::kGoFish).done);
  EXPECT_TRUE(env.step(FishwoodEnv::kGoFish).done);
  EXPECT_EQ(env.steps_taken(), 200);
  EXPECT_THROW(env.step(FishwoodEnv::kGoFish), std::logic_error);
}

TEST(Fishwood, EachStepRewardsAtMostOneObjective) {
  FishwoodEnv env;
  Rng rng(11);
  for (int e = 0; e < 20; ++e) {
    env.reset(rng.raw());
    double wood = 0.0, fish = 0.0;
    while (!env.done()) {
      const EnvObservation obs =
          env.step(static_cast<int>(rng.uniform_index(2)));
      EXPECT_TRUE((obs.reward[0] == 0.0 || obs.reward[0] == 1.0));
      EXPECT_TRUE((obs.reward[1] == 0.0 || obs.reward[1] == 1.0));
      EXPECT_LE(obs.reward[0] + obs.reward[1], 1.0);
      wood += obs.reward[0];
      fish += obs.reward[1];
    }
    EXPECT_LE(wood + fish, 200.0);
  }
}

TEST(Fishwood, InvalidConfigRejected) {
  FishwoodConfig bad;
  bad.woodprob = 1.5;
  EXPECT_THROW(FishwoodEnv{bad}, std::invalid_argument);
  bad = {};
  bad.horizon = 0;
  EXPECT_THROW(FishwoodEnv{bad}, std::invalid_argument);
}

TEST(FishwoodFront, EqualProbabilitiesSumToHalfHorizon) {
  FishwoodConfig cfg;  // defaults: 0.5 / 0.5 / 200
  const auto front = fishwood_pareto_front(cfg);
  ASSERT_EQ(front.size(), 201u);
  for (const auto& p : front) EXPECT_NEAR(p[0] + p[1], 100.0, 1e-12);
}

TEST(FishwoodFront, ZeroHorizonSinglePoint) {
  FishwoodConfig cfg;
  cfg.horizon = 0;
  const auto front = fishwood_pareto_front(cfg);
  ASSERT_EQ(front.size(), 1u);
  EXPECT_EQ(front[0], (std::vector<double>{0.0, 0.0}));
}

TEST(FishwoodFront, AsymmetricPointFromExpectationFormula) {
  FishwoodConfig cfg;
  cfg.woodprob = 0.3;
  cfg.fishprob = 0.7;
  cfg.horizon = 10;
  const auto front = fishwood_pareto_front(cfg);
  // k = 4: (0.3*4, 0.7*6) = (1.2, 4.2)
  EXPECT_NEAR(front[4][0], 1.2, 1e-12);
  EXPECT_NEAR(front[4][1], 4.2, 1e-12);
}

TEST(FishwoodFront, NoFixedScheduleDominatesTheFront) {
  // Estimate the mean return of a deterministic schedule (wood for the first
  // k steps, fish afterwards) and check it cannot dominate the analytic
  // front point for that k beyond sampling error.
  FishwoodConfig cfg;
  cfg.horizon = 60;
  FishwoodEnv env(cfg);
  for (int k : {0, 15, 30, 60}) {
    double wood = 0.0, fish = 0.0, wood2 = 0.0, fish2 = 0.0;
    const int episodes = 1000;
    for (int e = 0; e < episodes; ++e) {
      env.reset(static_cast<std::uint64_t>(k) * 100000 + e);
      double w = 0.0, f = 0.0;
      for (int t = 0; t < 60; ++t) {
        const EnvObservation obs =
            env.step(t < k ? FishwoodEnv::kGoWood : FishwoodEnv::kGoFish);
        w += obs.reward[0];
        f += obs.reward[1];
      }
      wood += w;
      fish += f;
      wood2 += w * w;
      fish2 += f * f;
    }
    const double mw = wood / episodes;
    const double mf = fish / episodes;
    const double se_w = std::sqrt((wood2 / episodes - mw * mw) / episodes);
    const double se_f = std::sqrt((fish2 / episodes - mf * mf) / episodes);
    const double front_x = cfg.woodprob * k;
    const double front_y = cfg.fishprob * (60 - k);
    EXPECT_LE(mw, front_x + 2.0 * se_w + 1e-9);
    EXPECT_LE(mf, front_y + 2.0 * se_f + 1e-9);
  }
}

TEST(FruitTree, MinimalDepthOneTree) {
  FruitTreeConfig cfg;
  cfg.depth = 1;
  cfg.leaf_rewards = {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}};
  FruitTreeEnv env(cfg);
  env.reset(0);
  const EnvObservation obs = env.step(FruitTreeEnv::kLeft);
  EXPECT_TRUE(obs.done);
  EXPECT_EQ(obs.reward, (std::vector<double>{1, 0, 0, 0, 0, 0}));

  env.reset(0);
  const EnvObservation right = env.step(FruitTreeEnv::kRight);
  EXPECT_EQ(right.reward, (std::vector<double>{0, 1, 0, 0, 0, 0}));
}

TEST(FruitTree, DefaultDepthSixEpisodeLength) {
  FruitTreeConfig cfg = make_random_fruit_tree(6, 99);
  FruitTreeEnv env(cfg);
  env.reset(0);
  int steps = 0;
  while (!env.done()) {
    const EnvObservation obs = env.step(steps % 2);
    steps += 1;
    if (steps < 6) {
      EXPECT_EQ(obs.reward, std::vector<double>(6, 0.0));
      EXPECT_FALSE(obs.done);
    }
  }
  EXPECT_EQ(steps, 6);
  EXPECT_THROW(env.step(0), std::logic_error);
}

TEST(FruitTree, PathBitsSelectLeafByBinaryIndex) {
  FruitTreeConfig cfg = make_random_fruit_tree(6, 7);
  FruitTreeEnv env(cfg);
  Rng rng(13);
  for (int trial = 0; trial < 64; ++trial) {
    env.reset(0);
    std::size_t index = 0;
    std::vector<double> reward;
    for (int level = 0; level < 6; ++level) {
      const int bit = static_cast<int>(rng.uniform_index(2));
      index = (index << 1) | static_cast<std::size_t>(bit);
      reward = env.step(bit).reward;
    }
    EXPECT_EQ(reward, cfg.leaf_rewards[index]);
  }
}

TEST(FruitTree, DeterministicRewards) {
  FruitTreeConfig cfg = make_random_fruit_tree(4, 21);
  FruitTreeEnv env(cfg);
  const std::vector<int> actions{1, 0, 1, 1};
  std::vector<double> first, second;
  env.reset(5);
  for (int a : actions) first = env.step(a).reward;
  env.reset(99);  // seed is irrelevant for the deterministic tree
  for (int a : actions) second = env.step(a).reward;
  EXPECT_EQ(first, second);
}

TEST(FruitTree, StateEncodingIdentifiesNodes) {
  FruitTreeConfig cfg = make_random_fruit_tree(3, 31);
  FruitTreeEnv env(cfg);
  EXPECT_EQ(env.state_dim(), 4);
  EnvObservation obs = env.reset(0);
  EXPECT_EQ(obs.state, (std::vector<double>{0, 0, 0, 0}));
  obs = env.step(1);
  EXPECT_EQ(obs.state, (std::vector<double>{1, 1, 0, 0}));
  obs = env.step(0);
  EXPECT_EQ(obs.state, (std::vector<double>{2, 1, 0, 0}));
}

TEST(FruitTree, ConfigValidation) {
  FruitTreeConfig cfg;
  cfg.depth = 2;
  cfg.leaf_rewards = {{1, 1, 1, 1, 1, 1}};  // wrong count
  EXPECT_THROW(FruitTreeEnv{cfg}, std::invalid_argument);
  cfg = make_random_fruit_tree(2, 3);
  cfg.leaf_rewards[0][2] = -1.0;
  EXPECT_THROW(FruitTreeEnv{cfg}, std::invalid_argument);
}

TEST(FruitTreeTable, FileRoundTrip) {
  const FruitTreeConfig cfg = make_random_fruit_tree(4, 17);
  const std::string path =
      (std::filesystem::temp_directory_path() / "moc_tree_test.txt").string();
  save_fruit_tree(cfg, path);
  const FruitTreeConfig loaded = load_fruit_tree(path);
  EXPECT_EQ(loaded.depth, cfg.depth);
  EXPECT_EQ(loaded.leaf_rewards, cfg.leaf_rewards);
  std::remove(path.c_str());
}

TEST(FruitTreeTable, BundledTableLoads) {
  const FruitTreeConfig cfg = load_fruit_tree(std::string(MOC_DATA_DIR) +
                                              "/fruit_tree_depth6.txt");
  EXPECT_EQ(cfg.depth, 6);
  EXPECT_EQ(cfg.leaf_rewards.size(), 64u);
}

TEST(FruitTreeTable, MalformedFilesRejected) {
  const auto tmp = std::filesystem::temp_directory_path();
  {
    std::ofstream out(tmp / "moc_tree_bad1.txt");
    out << "not a header\n1 2 3 4 5 6\n";
  }
  EXPECT_THROW(load_fruit_tree((tmp / "moc_tree_bad1.txt").string()),
               std::runtime_error);
  {
    std::ofstream out(tmp / "moc_tree_bad2.txt");
    out << "# fruit-tree depth=1\n1 2 3\n4 5 6 7 8 9\n";
  }
  EXPECT_THROW(load_fruit_tree((tmp / "moc_tree_bad2.txt").string()),
               std::runtime_error);
  std::remove((tmp / "moc_tree_bad1.txt").c_str());
  std::remove((tmp / "moc_tree_bad2.txt").c_str());
}
