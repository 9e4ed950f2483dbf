#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "moc/distributions.hpp"
#include "moc/env/environment.hpp"
#include "moc/gae.hpp"
#include "moc/metrics.hpp"
#include "moc/mlp.hpp"
#include "moc/ppo.hpp"
#include "moc/preference.hpp"
#include "moc/running_norm.hpp"

namespace moc {

enum class Algorithm { kMoc, kLinearPpo, kMocNoControl, kMocNoMo };

inline std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kMoc: return "moc";
    case Algorithm::kLinearPpo: return "linear-ppo";
    case Algorithm::kMocNoControl: return "moc-ablation-no-control";
    case Algorithm::kMocNoMo: return "moc-ablation-no-mo";
  }
  throw std::logic_error("unknown algorithm");
}

inline Algorithm algorithm_from_name(const std::string& name) {
  if (name == "moc") return Algorithm::kMoc;
  if (name == "linear-ppo") return Algorithm::kLinearPpo;
  if (name == "moc-ablation-no-control") return Algorithm::kMocNoControl;
  if (name == "moc-ablation-no-mo") return Algorithm::kMocNoMo;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

/// Trained policy network plus the metadata needed to run it.
struct PolicyModel {
  std::string env_name;
  Algorithm algorithm = Algorithm::kMoc;
  int objective_count = 0;
  bool preference_conditioned = true;
  int state_dim = 0;
  MlpParams policy;

  int input_dim() const {
    return state_dim + (preference_conditioned ? objective_count : 0);
  }
};

/// One row of the per-iteration training log.
struct TrainLogRecord {
  long iteration = 0;
  long env_steps = 0;
  double mean_c1 = 1.0;
  double mean_c2 = 0.0;
  double violation_rate = 0.0;
  double policy_surrogate = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double kl = 0.0;
  /// Per training-preference batch statistics; count 0 means the preference
  /// was not sampled this iteration.
  std::vector<int> pref_episodes;
  std::vector<std::vector<double>> pref_mean_raw;
  std::vector<std::vector<double>> pref_mean_norm;
};

struct TrainResult {
  PolicyModel model;
  MlpParams value_net;
  std::vector<TrainLogRecord> log;
};

namespace detail {

/// Behavior distribution log-probs: softmax optionally mixed with a uniform
/// epsilon-greedy component.
inline std::vector<double> behavior_logprobs(std::span<const double> logits,
                                             double eps) {
  std::vector<double> lp = softmax_logprobs(logits);
  if (eps <= 0.0) return lp;
  const double k = static_cast<double>(lp.size());
  for (auto& l : lp) l = std::log((1.0 - eps) * std::exp(l) + eps / k);
  return lp;
}

}  // namespace detail

/// Accumulated losses of one pass over a batch. Values are means over the
/// batch's timesteps; `policy_surrogate` is the maximized clipped objective
/// with the per-episode effective weights applied.
struct LossReport {
  double policy_surrogate = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double kl = 0.0;

  double policy_loss(const PpoConfig& cfg) const {
    return -(policy_surrogate + cfg.entropy_coef * entropy - cfg.kl_coef * kl);
  }
};

/// Computes the scalarized MOC surrogate and its exact gradients over one
/// batch. Per episode e: w_j = c1 p_j - c2 [violated] (Rbar_j - p_j); the
/// surrogate is sum_e sum_j w_j L_clip_j(e) / T plus entropy bonus and
/// optional KL penalty. Gradients are accumulated for the minimized loss
/// (negated surrogate; value term separately), flowing only through the
/// current policy logits and value heads.
inline LossReport scalarized_policy_loss(
    const TrajectoryBatch& batch, const MlpParams& policy, const MlpParams& value,
    const PpoConfig& cfg, MlpGrads& policy_grads, MlpGrads& value_grads,
    const std::vector<std::vector<double>>* group_returns = nullptr) {
  const long total = batch.total_steps();
  if (total == 0) throw std::invalid_argument("scalarized_policy_loss: empty batch");
  const double inv_t = 1.0 / static_cast<double>(total);
  const double eps_x = cfg.exploration_epsilon;
  LossReport report;
  MlpActivations pcache, vcache;
  for (std::size_t ei = 0; ei < batch.episodes.size(); ++ei) {
    const EpisodeData& ep = batch.episodes[ei];
    if (ep.advantages.empty() && ep.length() > 0) {
      throw std::invalid_argument("scalarized_policy_loss: advantages missing");
    }
    const std::vector<double>* rbar =
        group_returns ? &(*group_returns)[ei] : nullptr;
    const std::vector<double> w = effective_weights(ep, rbar);
    const int n_obj = static_cast<int>(w.size());
    for (int t = 0; t < ep.length(); ++t) {
      const int a = ep.actions[t];
      // Policy head.
      std::vector<double> logits = mlp_forward(policy, ep.inputs[t], &pcache);
      const std::vector<double> lp_pure = softmax_logprobs(logits);
      std::vector<double> probs(lp_pure.size());
      for (std::size_t i = 0; i < probs.size(); ++i) probs[i] = std::exp(lp_pure[i]);
      std::vector<double> lp_beh = lp_pure;
      if (eps_x > 0.0) lp_beh = detail::behavior_logprobs(logits, eps_x);
      const double z = std::exp(lp_beh[a] - ep.old_logprobs[t][a]);

      double clip_sum = 0.0;    // sum_j w_j min(z A, clip(z) A)
      double active_sum = 0.0;  // sum_j w_j I(A_j, z)
      for (int j = 0; j < n_obj; ++j) {
        const double adv = ep.advantages[t][j];
        const double clipped =
            std::clamp(z, 1.0 - cfg.clip_eps, 1.0 + cfg.clip_eps) * adv;
        clip_sum += w[j] * std::min(z * adv, clipped);
        active_sum += w[j] * clip_indicator(adv, z, cfg.clip_eps);
      }
      report.policy_surrogate += clip_sum * inv_t;

      double entropy = 0.0;
      for (std::size_t i = 0; i < probs.size(); ++i) {
        entropy -= probs[i] * lp_pure[i];
      }
      report.entropy += entropy * inv_t;

      double kl = 0.0;
      double kl_mean_term = 0.0;  // sum_a pi_a (lp_beh_a - old_a)
      if (cfg.kl_coef != 0.0) {
        for (std::size_t i = 0; i < probs.size(); ++i) {
          kl += std::exp(lp_beh[i]) * (lp_beh[i] - ep.old_logprobs[t][i]);
          kl_mean_term += probs[i] * (lp_beh[i] - ep.old_logprobs[t][i]);
        }
        report.kl += kl * inv_t;
      }

      // d(maximized objective)/d logit_i, assembled from the three terms.
      const double dsur_dlp = z * active_sum;  // d/d log pi_beh(a)
      std::vector<double> up(logits.size());
      for (std::size_t i = 0; i < logits.size(); ++i) {
        const double inda = i == static_cast<std::size_t>(a) ? 1.0 : 0.0;
        double dlp_dlogit;  // d log pi_beh(a) / d logit_i
        if (eps_x > 0.0) {
          dlp_dlogit = (1.0 - eps_x) * probs[a] * (inda - probs[i]) /
                       std::exp(lp_beh[a]);
        } else {
          dlp_dlogit = inda - probs[i];
        }
        double grad = dsur_dlp * dlp_dlogit;
        grad += cfg.entropy_coef * (-probs[i] * (lp_pure[i] + entropy));
        if (cfg.kl_coef != 0.0) {
          const double scale = eps_x > 0.0 ? 1.0 - eps_x : 1.0;
          grad -= cfg.kl_coef * scale * probs[i] *
                  ((lp_beh[i] - ep.old_logprobs[t][i]) - kl_mean_term);
        }
        up[i] = -grad * inv_t;  // minimized loss
      }
      mlp_backward(policy, pcache, up, policy_grads);

      // Value heads.
      std::vector<double> v = mlp_forward(value, ep.inputs[t], &vcache);
      std::vector<double> vup(v.size());
      const double inv_tn = inv_t / static_cast<double>(v.size());
      for (std::size_t j = 0; j < v.size(); ++j) {
        const double err = v[j] - ep.return_targets[t][j];
        report.value_loss += err * err * inv_tn;
        vup[j] = cfg.value_coef * 2.0 * err * inv_tn;
      }
      mlp_backward(value, vcache, vup, value_grads);
    }
  }
  return report;
}

namespace detail {

struct RolloutScratch {
  RunningNorm step_norm;
  RunningNorm episodic_norm;
  RolloutScratch(int dims) : step_norm(dims), episodic_norm(dims) {}
};

/// Rolls out one episode with the behavior policy and records everything the
/// update needs. `scalarize_weight` switches the linear-PPO path: rewards are
/// collapsed to one objective with the given weights and the policy input is
/// the raw state.
inline EpisodeData rollout_episode(Environment& env, const MlpParams& policy,
                                   const PreferenceVector& pref,
                                   const MlpParams& value, const PpoConfig& cfg,
                                   RolloutScratch& norms, Rng& env_rng,
                                   Rng& sample_rng, bool conditioned,
                                   const std::vector<double>* scalarize_weight) {
  EpisodeData ep;
  ep.preference = pref;
  EnvObservation obs = env.reset(env_rng.raw());
  const int n_store = conditioned ? env.objective_count() : 1;
  std::vector<double> episodic(n_store, 0.0);
  for (int t = 0; t < cfg.horizon && !env.done(); ++t) {
    std::vector<double> input = obs.state;
    if (conditioned) {
      input.insert(input.end(), pref.entries().begin(), pref.entries().end());
    }
    const std::vector<double> logits = mlp_forward(policy, input);
    const std::vector<double> lp = behavior_logprobs(logits, cfg.exploration_epsilon);
    int action;
    if (cfg.exploration_epsilon > 0.0 &&
        sample_rng.uniform01() < cfg.exploration_epsilon) {
      action = static_cast<int>(sample_rng.uniform_index(lp.size()));
    } else {
      action = categorical_sample(logits, sample_rng);
    }
    const std::vector<double> values = mlp_forward(value, input);
    obs = env.step(action);

    std::vector<double> reward;
    if (scalarize_weight) {
      double r = 0.0;
      for (std::size_t j = 0; j < obs.reward.size(); ++j) {
        r += (*scalarize_weight)[j] * obs.reward[j];
      }
      reward.push_back(r);
    } else {
      reward = obs.reward;
    }
    for (int j = 0; j < n_store; ++j) episodic[j] += reward[j];

    ep.inputs.push_back(std::move(input));
    ep.actions.push_back(action);
    ep.old_logprobs.push_back(lp);
    ep.rewards_norm.push_back(normalize_reward(norms.step_norm, reward));
    ep.rewards_raw.push_back(std::move(reward));
    ep.values.push_back(values);
  }
  ep.episodic_return_raw = episodic;
  ep.episodic_return_norm = normalize_reward(norms.episodic_norm, episodic);
  return ep;
}

}  // namespace detail

/// Preference-conditioned MOC training (Algorithm: sample a preference per
/// episode, roll out, normalize returns, per-objective GAE, batch violation
/// indicators, per-episode min-norm weights, scalarized clipped update).
/// Also runs the ablations and, via linear_ppo_train below, the scalarized
/// single-objective baseline.
inline TrainResult train(Environment& env, const std::string& env_name,
                         const PreferenceSet& prefs, const PpoConfig& cfg,
                         std::uint64_t seed, Algorithm algo,
                         const PreferenceVector* linear_weight = nullptr) {
  cfg.validate();
  const bool linear = algo == Algorithm::kLinearPpo;
  if (linear && linear_weight == nullptr) {
    throw std::invalid_argument("train: linear-ppo requires a weight vector");
  }
  if (!linear && prefs.objective_count() != env.objective_count()) {
    throw std::invalid_argument("train: preference length " +
                                std::to_string(prefs.objective_count()) +
                                " != environment objectives " +
                                std::to_string(env.objective_count()));
  }
  if (linear && linear_weight->size() != env.objective_count()) {
    throw std::invalid_argument("train: scalarization weight length mismatch");
  }

  const int n_obj = linear ? 1 : env.objective_count();
  const bool conditioned = !linear;
  Rng master(seed);
  Rng init_rng = master.split();
  Rng env_rng = master.split();
  Rng sample_rng = master.split();

  MlpShape pshape{env.state_dim() + (conditioned ? env.objective_count() : 0),
                  cfg.hidden_units, cfg.hidden_layers, env.action_count()};
  MlpShape vshape = pshape;
  vshape.output_dim = n_obj;
  MlpParams policy = make_mlp(pshape, init_rng);
  MlpParams value = make_mlp(vshape, init_rng);
  AdamState policy_opt = make_adam(policy, cfg.learning_rate);
  AdamState value_opt = make_adam(value, cfg.learning_rate);
  MlpGrads policy_grads = make_grads(policy);
  MlpGrads value_grads = make_grads(value);

  detail::RolloutScratch norms(n_obj);
  const std::vector<double>* scalarize =
      linear ? &linear_weight->entries() : nullptr;
  const PreferenceVector linear_pref({1.0});

  std::vector<TrainLogRecord> log;
  long steps_done = 0;
  long iteration = 0;
  while (steps_done + cfg.horizon <= cfg.total_steps) {
    TrajectoryBatch batch;
    batch.objective_count = n_obj;
    std::vector<int> pref_of_episode;
    while (static_cast<int>(batch.episodes.size()) < cfg.batch_episodes &&
           steps_done + cfg.horizon <= cfg.total_steps) {
      int pi = 0;
      const PreferenceVector* p = &linear_pref;
      if (!linear) {
        pi = static_cast<int>(sample_rng.uniform_index(prefs.size()));
        p = &prefs[pi];
      }
      EpisodeData ep = detail::rollout_episode(env, policy, *p, value, cfg, norms,
                                               env_rng, sample_rng, conditioned,
                                               scalarize);
      steps_done += ep.length();
      pref_of_episode.push_back(pi);
      batch.episodes.push_back(std::move(ep));
    }
    if (batch.episodes.empty()) break;
    iteration += 1;

    // Per-objective GAE on the (normalized) step rewards; targets from the
    // raw advantages, then batch standardization.
    std::vector<double> rj, vj;
    for (EpisodeData& ep : batch.episodes) {
      const int len = ep.length();
      ep.advantages.assign(len, std::vector<double>(n_obj, 0.0));
      ep.return_targets.assign(len, std::vector<double>(n_obj, 0.0));
      for (int j = 0; j < n_obj; ++j) {
        rj.clear();
        vj.clear();
        for (int t = 0; t < len; ++t) {
          rj.push_back(cfg.normalize_step_rewards ? ep.rewards_norm[t][j]
                                                  : ep.rewards_raw[t][j]);
          vj.push_back(ep.values[t][j]);
        }
        const std::vector<double> adv =
            gae_advantages(rj, vj, 0.0, cfg.gamma, cfg.lam);
        for (int t = 0; t < len; ++t) {
          ep.advantages[t][j] = adv[t];
          ep.return_targets[t][j] = adv[t] + ep.values[t][j];
        }
      }
    }
    for (int j = 0; j < n_obj; ++j) {
      double mean = 0.0, m2 = 0.0;
      long n = 0;
      for (const EpisodeData& ep : batch.episodes) {
        for (int t = 0; t < ep.length(); ++t) {
          n += 1;
          const double d = ep.advantages[t][j] - mean;
          mean += d / static_cast<double>(n);
          m2 += d * (ep.advantages[t][j] - mean);
        }
      }
      const double sd = std::sqrt(m2 / static_cast<double>(n)) + 1e-8;
      for (EpisodeData& ep : batch.episodes) {
        for (int t = 0; t < ep.length(); ++t) {
          ep.advantages[t][j] = (ep.advantages[t][j] - mean) / sd;
        }
      }
    }

    // Violation indicators from the batch statistics of normalized episodic
    // returns, grouped by training preference.
    std::vector<std::vector<double>> group_mean(
        static_cast<std::size_t>(linear ? 1 : prefs.size()),
        std::vector<double>(n_obj, 0.0));
    std::vector<int> group_count(group_mean.size(), 0);
    for (std::size_t e = 0; e < batch.episodes.size(); ++e) {
      const auto& rn = batch.episodes[e].episodic_return_norm;
      auto& gm = group_mean[static_cast<std::size_t>(pref_of_episode[e])];
      for (int j = 0; j < n_obj; ++j) gm[j] += rn[j];
      group_count[static_cast<std::size_t>(pref_of_episode[e])] += 1;
    }
    for (std::size_t g = 0; g < group_mean.size(); ++g) {
      if (group_count[g] > 0) {
        for (auto& x : group_mean[g]) x /= group_count[g];
      }
    }
    std::vector<std::vector<double>> group_return_of_episode;
    if (cfg.vbar_group_mean) {
      group_return_of_episode.resize(batch.episodes.size());
    }
    double mean_c1 = 0.0, mean_c2 = 0.0, violation_rate = 0.0;
    for (std::size_t e = 0; e < batch.episodes.size(); ++e) {
      EpisodeData& ep = batch.episodes[e];
      if (linear || algo == Algorithm::kMocNoControl) {
        ep.violated = false;
        ep.weights = {1.0, 0.0};
      } else {
        if (cfg.violation_per_episode) {
          ep.violated = amvs(ep.episodic_return_norm, ep.preference.span()) > cfg.phi;
        } else {
          const auto& gm = group_mean[static_cast<std::size_t>(pref_of_episode[e])];
          ep.violated = amvs(gm, ep.preference.span()) > cfg.phi;
        }
        const std::vector<double>* rbar = nullptr;
        if (cfg.vbar_group_mean) {
          group_return_of_episode[e] =
              group_mean[static_cast<std::size_t>(pref_of_episode[e])];
          rbar = &group_return_of_episode[e];
        }
        if (algo == Algorithm::kMocNoMo) {
          ep.weights = {0.0, 1.0};
        } else {
          // Fresh batch: every ratio is 1.
          const std::vector<double> ones(static_cast<std::size_t>(ep.length()), 1.0);
          ep.weights = moc_weights(ep, ones, cfg.clip_eps, rbar);
        }
      }
      mean_c1 += ep.weights.c1;
      mean_c2 += ep.weights.c2;
      violation_rate += ep.violated ? 1.0 : 0.0;
    }
    const double n_eps = static_cast<double>(batch.episodes.size());
    mean_c1 /= n_eps;
    mean_c2 /= n_eps;
    violation_rate /= n_eps;

    LossReport report;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
      policy_grads.zero();
      value_grads.zero();
      report = scalarized_policy_loss(
          batch, policy, value, cfg, policy_grads, value_grads,
          cfg.vbar_group_mean ? &group_return_of_episode : nullptr);
      if (!std::isfinite(report.policy_loss(cfg)) ||
          !std::isfinite(report.value_loss)) {
        throw std::runtime_error("train: non-finite loss at iteration " +
                                 std::to_string(iteration));
      }
      adam_step(policy_opt, policy, policy_grads);
      adam_step(value_opt, value, value_grads);
      if (!params_finite(policy) || !params_finite(value)) {
        throw std::runtime_error("train: non-finite parameters at iteration " +
                                 std::to_string(iteration));
      }
    }

    TrainLogRecord rec;
    rec.iteration = iteration;
    rec.env_steps = steps_done;
    rec.mean_c1 = mean_c1;
    rec.mean_c2 = mean_c2;
    rec.violation_rate = violation_rate;
    rec.policy_surrogate = report.policy_surrogate;
    rec.value_loss = report.value_loss;
    rec.entropy = report.entropy;
    rec.kl = report.kl;
    const int n_groups = linear ? 1 : prefs.size();
    rec.pref_episodes.assign(n_groups, 0);
    rec.pref_mean_raw.assign(n_groups, std::vector<double>(n_obj, 0.0));
    rec.pref_mean_norm.assign(n_groups, std::vector<double>(n_obj, 0.0));
    for (std::size_t e = 0; e < batch.episodes.size(); ++e) {
      const int g = pref_of_episode[e];
      rec.pref_episodes[g] += 1;
      for (int j = 0; j < n_obj; ++j) {
        rec.pref_mean_raw[g][j] += batch.episodes[e].episodic_return_raw[j];
        rec.pref_mean_norm[g][j] += batch.episodes[e].episodic_return_norm[j];
      }
    }
    for (int g = 0; g < n_groups; ++g) {
      if (rec.pref_episodes[g] > 0) {
        for (int j = 0; j < n_obj; ++j) {
          rec.pref_mean_raw[g][j] /= rec.pref_episodes[g];
          rec.pref_mean_norm[g][j] /= rec.pref_episodes[g];
        }
      }
    }
    log.push_back(std::move(rec));
  }

  TrainResult result;
  result.model.env_name = env_name;
  result.model.algorithm = algo;
  result.model.objective_count = env.objective_count();
  result.model.preference_conditioned = conditioned;
  result.model.state_dim = env.state_dim();
  result.model.policy = std::move(policy);
  result.value_net = std::move(value);
  result.log = std::move(log);
  return result;
}

inline TrainResult moc_train(Environment& env, const std::string& env_name,
                             const PreferenceSet& prefs, const PpoConfig& cfg,
                             std::uint64_t seed,
                             Algorithm algo = Algorithm::kMoc) {
  if (algo == Algorithm::kLinearPpo) {
    throw std::invalid_argument("moc_train: use linear_ppo_train for the baseline");
  }
  return train(env, env_name, prefs, cfg, seed, algo);
}

/// Standard single-objective PPO on the scalarized reward w . R; the policy
/// is not preference-conditioned. One model per weight.
inline TrainResult linear_ppo_train(Environment& env, const std::string& env_name,
                                    const PreferenceVector& weight,
                                    const PpoConfig& cfg, std::uint64_t seed) {
  const PreferenceSet dummy({weight});
  return train(env, env_name, dummy, cfg, seed, Algorithm::kLinearPpo, &weight);
}

/// Runs the frozen policy for `episodes` episodes under one preference and
/// returns the mean/std raw return vectors. Stochastic by default; `greedy`
/// takes the argmax action.
inline SolutionPoint evaluate_policy(const PolicyModel& model, Environment& env,
                                     const PreferenceVector& pref, int episodes,
                                     std::uint64_t seed, bool greedy = false) {
  if (episodes < 1) throw std::invalid_argument("evaluate_policy: episodes < 1");
  if (model.preference_conditioned && pref.size() != model.objective_count) {
    throw std::invalid_argument("evaluate_policy: preference length mismatch");
  }
  Rng master(seed);
  Rng env_rng = master.split();
  Rng sample_rng = master.split();
  const int n = model.objective_count;
  std::vector<double> mean(n, 0.0), m2(n, 0.0);
  for (int e = 0; e < episodes; ++e) {
    EnvObservation obs = env.reset(env_rng.raw());
    std::vector<double> total(n, 0.0);
    while (!env.done()) {
      std::vector<double> input = obs.state;
      if (model.preference_conditioned) {
        input.insert(input.end(), pref.entries().begin(), pref.entries().end());
      }
      const std::vector<double> logits = mlp_forward(model.policy, input);
      const int action =
          greedy ? argmax_action(logits) : categorical_sample(logits, sample_rng);
      obs = env.step(action);
      for (int j = 0; j < n; ++j) total[j] += obs.reward[j];
    }
    for (int j = 0; j < n; ++j) {
      const double d = total[j] - mean[j];
      mean[j] += d / static_cast<double>(e + 1);
      m2[j] += d * (total[j] - mean[j]);
    }
  }
  SolutionPoint point;
  point.preference = pref;
  point.mean_reward = mean;
  point.std_reward.resize(n);
  for (int j = 0; j < n; ++j) {
    point.std_reward[j] = std::sqrt(m2[j] / static_cast<double>(episodes));
  }
  point.episodes = episodes;
  return point;
}

/// Evaluates the frozen preference-conditioned policy on each preference in
/// turn (no parameter updates). The eval stream is seeded per preference
/// index, so equal preferences at equal positions reproduce exactly.
inline SolutionSet eval_policy_set(const PolicyModel& model, Environment& env,
                                   const PreferenceSet& prefs, int episodes,
                                   std::uint64_t seed, bool greedy = false) {
  SolutionSet set;
  for (int i = 0; i < prefs.size(); ++i) {
    set.push_back(evaluate_policy(model, env, prefs[i], episodes,
                                  seed + static_cast<std::uint64_t>(i) * 9973,
                                  greedy));
  }
  return set;
}

/// Frozen-policy evaluation on preferences outside the training set; only
/// valid for preference-conditioned models.
inline SolutionSet eval_unseen(const PolicyModel& model, Environment& env,
                               const PreferenceSet& prefs, int episodes,
                               std::uint64_t seed, bool greedy = false) {
  if (!model.preference_conditioned) {
    throw std::invalid_argument(
        "eval_unseen: model is not preference-conditioned");
  }
  return eval_policy_set(model, env, prefs, episodes, seed, greedy);
}

}  // namespace moc
