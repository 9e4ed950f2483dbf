#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "moc/min_norm.hpp"
#include "moc/preference.hpp"

namespace moc {

/// Training hyperparameters shared by the MOC and linear-PPO paths.
struct PpoConfig {
  double gamma = 0.99;
  double lam = 0.95;
  double clip_eps = 0.2;
  int epochs = 3;
  double learning_rate = 1e-4;
  int batch_episodes = 10;
  long total_steps = 200000;
  double kl_coef = 0.0;
  double value_coef = 0.5;
  double entropy_coef = 0.001;
  double phi = 0.05;
  int horizon = 200;
  int hidden_layers = 3;
  int hidden_units = 256;
  /// Optional epsilon-greedy mixing of the behavior policy; 0 disables it.
  double exploration_epsilon = 0.0;
  /// Normalize per-step rewards (running stats) before GAE.
  bool normalize_step_rewards = true;
  /// Evaluate the constraint residual per episode instead of on the batch
  /// mean of each preference group.
  bool violation_per_episode = false;
  /// Use the preference group's mean normalized return inside the control
  /// vector instead of each episode's own return.
  bool vbar_group_mean = false;

  void validate() const {
    if (gamma <= 0.0 || gamma > 1.0) throw std::invalid_argument("ppo: gamma must be in (0,1]");
    if (lam < 0.0 || lam > 1.0) throw std::invalid_argument("ppo: lam must be in [0,1]");
    if (clip_eps <= 0.0) throw std::invalid_argument("ppo: clip_eps must be > 0");
    if (phi < 0.0) throw std::invalid_argument("ppo: phi must be >= 0");
    if (epochs < 1 || batch_episodes < 1 || total_steps < 1 || horizon < 1) {
      throw std::invalid_argument("ppo: epochs, batch, steps and horizon must be positive");
    }
    if (hidden_layers < 0 || hidden_units < 1) {
      throw std::invalid_argument("ppo: invalid network shape");
    }
    if (exploration_epsilon < 0.0 || exploration_epsilon > 1.0) {
      throw std::invalid_argument("ppo: exploration_epsilon must be in [0,1]");
    }
  }
};

/// One rolled-out episode. Per-step arrays share one length; per-objective
/// arrays are indexed [step][objective].
struct EpisodeData {
  PreferenceVector preference;
  std::vector<std::vector<double>> inputs;        // policy/value inputs
  std::vector<int> actions;
  std::vector<std::vector<double>> old_logprobs;  // full log-prob vector per step
  std::vector<std::vector<double>> rewards_raw;
  std::vector<std::vector<double>> rewards_norm;
  std::vector<std::vector<double>> values;
  std::vector<std::vector<double>> advantages;    // standardized per batch
  std::vector<std::vector<double>> return_targets;
  std::vector<double> episodic_return_raw;
  std::vector<double> episodic_return_norm;       // R-bar
  bool violated = false;
  MinNormWeights weights;

  int length() const { return static_cast<int>(actions.size()); }
};

struct TrajectoryBatch {
  std::vector<EpisodeData> episodes;
  int objective_count = 0;

  long total_steps() const {
    long n = 0;
    for (const auto& e : episodes) n += e.length();
    return n;
  }
};

/// Effective advantage passed by the PPO clip: 0 where clipping removes the
/// gradient, the advantage itself where the surrogate is active.
inline double clip_indicator(double advantage, double ratio, double eps) {
  if (eps <= 0.0) throw std::invalid_argument("clip_indicator: eps must be > 0");
  if (advantage > 0.0) return ratio > 1.0 + eps ? 0.0 : advantage;
  if (advantage < 0.0) return ratio < 1.0 - eps ? 0.0 : advantage;
  return 0.0;
}

/// Per-step surrogate vectors for one episode:
///   v_t    = sum_j p_j I(A_jt, z_t)
///   vbar_t = [violated] * sum_j (Rbar_j - p_j) I(A_jt, z_t)
/// with Rbar the episode's normalized return vector (or the group mean when
/// `group_return` is supplied).
struct MocVectors {
  std::vector<double> v;
  std::vector<double> vbar;
};

inline MocVectors moc_vectors(const EpisodeData& episode,
                              std::span<const double> ratios, double clip_eps,
                              const std::vector<double>* group_return = nullptr) {
  const int steps = episode.length();
  if (static_cast<int>(ratios.size()) != steps) {
    throw std::invalid_argument("moc_vectors: ratio count mismatch");
  }
  const PreferenceVector& p = episode.preference;
  const std::vector<double>& rbar =
      group_return ? *group_return : episode.episodic_return_norm;
  if (static_cast<int>(rbar.size()) != p.size()) {
    throw std::invalid_argument("moc_vectors: return/preference length mismatch");
  }
  MocVectors out;
  out.v.resize(steps, 0.0);
  out.vbar.resize(steps, 0.0);
  for (int t = 0; t < steps; ++t) {
    double v = 0.0, vb = 0.0;
    for (int j = 0; j < p.size(); ++j) {
      const double ind = clip_indicator(episode.advantages[t][j], ratios[t], clip_eps);
      v += p[j] * ind;
      vb += (rbar[static_cast<std::size_t>(j)] - p[j]) * ind;
    }
    out.v[t] = v;
    out.vbar[t] = episode.violated ? vb : 0.0;
  }
  return out;
}

/// Per-episode min-norm weights. Eq. form ||c1 v - c2 vbar|| maps onto the
/// two-vector solver as min ||c v + (1-c)(-vbar)||. A zero control vector
/// (constraint satisfied) short-circuits to (1, 0): the solver would return
/// c = 0 there and null the update.
inline MinNormWeights moc_weights(const EpisodeData& episode,
                                  std::span<const double> ratios, double clip_eps,
                                  const std::vector<double>* group_return = nullptr) {
  MocVectors vecs = moc_vectors(episode, ratios, clip_eps, group_return);
  bool vbar_zero = true;
  for (double x : vecs.vbar) {
    if (x != 0.0) {
      vbar_zero = false;
      break;
    }
  }
  if (vbar_zero) return {1.0, 0.0};
  std::vector<double> neg_vbar(vecs.vbar.size());
  for (std::size_t t = 0; t < vecs.vbar.size(); ++t) neg_vbar[t] = -vecs.vbar[t];
  return min_norm_2(vecs.v, neg_vbar);
}

/// Per-objective coefficient of the scalarized update for one episode:
///   w_j = c1 p_j - c2 [violated] (Rbar_j - p_j).
inline std::vector<double> effective_weights(const EpisodeData& episode,
                                             const std::vector<double>* group_return = nullptr) {
  const PreferenceVector& p = episode.preference;
  const std::vector<double>& rbar =
      group_return ? *group_return : episode.episodic_return_norm;
  std::vector<double> w(static_cast<std::size_t>(p.size()));
  for (int j = 0; j < p.size(); ++j) {
    double wj = episode.weights.c1 * p[j];
    if (episode.violated) {
      wj -= episode.weights.c2 * (rbar[static_cast<std::size_t>(j)] - p[j]);
    }
    w[static_cast<std::size_t>(j)] = wj;
  }
  return w;
}

}  // namespace moc
