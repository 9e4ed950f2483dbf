#pragma once

#include <stdexcept>
#include <vector>

#include "moc/env/environment.hpp"
#include "moc/rng.hpp"

namespace moc {

struct FishwoodConfig {
  double woodprob = 0.5;
  double fishprob = 0.5;
  int horizon = 200;

  void validate() const {
    if (woodprob < 0.0 || woodprob > 1.0 || fishprob < 0.0 || fishprob > 1.0) {
      throw std::invalid_argument("fishwood: probabilities must be in [0,1]");
    }
    if (horizon < 1) throw std::invalid_argument("fishwood: horizon must be >= 1");
  }
};

/// Two-objective fisherman task. The 1-dim state is the location index
/// (0 = woods, 1 = river). Each step the chosen action relocates the agent
/// and the reward for that step is drawn at the new location: (1,0) with
/// probability woodprob in the woods, (0,1) with probability fishprob at
/// the river, else (0,0). Episodes run exactly `horizon` steps.
class FishwoodEnv : public Environment {
 public:
  enum Action { kGoFish = 0, kGoWood = 1 };
  static constexpr int kActionCount = 2;
  static constexpr int kObjectives = 2;
  static constexpr double kWoodsLocation = 0.0;
  static constexpr double kRiverLocation = 1.0;

  explicit FishwoodEnv(const FishwoodConfig& cfg = {}) : cfg_(cfg), rng_(0) {
    cfg_.validate();
  }

  const FishwoodConfig& config() const { return cfg_; }
  int state_dim() const override { return 1; }
  int action_count() const override { return kActionCount; }
  int objective_count() const override { return kObjectives; }

  EnvObservation reset(std::uint64_t seed) override {
    rng_ = Rng(seed);
    location_ = kWoodsLocation;
    step_count_ = 0;
    done_ = false;
    return {{location_}, {0.0, 0.0}, false};
  }

  EnvObservation step(int action) override {
    if (done_) throw std::logic_error("fishwood: step after episode end");
    if (action != kGoFish && action != kGoWood) {
      throw std::invalid_argument("fishwood: unknown action");
    }
    location_ = action == kGoWood ? kWoodsLocation : kRiverLocation;
    std::vector<double> reward(2, 0.0);
    const double u = rng_.uniform01();
    if (action == kGoWood) {
      if (u < cfg_.woodprob) reward[0] = 1.0;
    } else {
      if (u < cfg_.fishprob) reward[1] = 1.0;
    }
    step_count_ += 1;
    done_ = step_count_ >= cfg_.horizon;
    return {{location_}, std::move(reward), done_};
  }

  bool done() const override { return done_; }
  int steps_taken() const { return step_count_; }

 private:
  FishwoodConfig cfg_;
  Rng rng_;
  double location_ = kWoodsLocation;
  int step_count_ = 0;
  bool done_ = false;
};

/// Analytic expected-return front {(woodprob*k, fishprob*(horizon-k))} for
/// k = 0..horizon; with equal probabilities every point satisfies
/// x + y = prob * horizon.
inline std::vector<std::vector<double>> fishwood_pareto_front(
    const FishwoodConfig& cfg) {
  if (cfg.horizon < 0) throw std::invalid_argument("fishwood front: horizon < 0");
  std::vector<std::vector<double>> front;
  front.reserve(static_cast<std::size_t>(cfg.horizon) + 1);
  for (int k = 0; k <= cfg.horizon; ++k) {
    front.push_back({cfg.woodprob * k, cfg.fishprob * (cfg.horizon - k)});
  }
  return front;
}

}  // namespace moc
