#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace moc {

/// Generalized advantage estimation for one objective:
///   delta_t = r_t + gamma * V_{t+1} - V_t,   A_t = delta_t + gamma*lam*A_{t+1},
/// with V_T = bootstrap (0 at a true episode end).
inline std::vector<double> gae_advantages(std::span<const double> rewards,
                                          std::span<const double> values,
                                          double bootstrap, double gamma,
                                          double lam) {
  if (rewards.size() != values.size()) {
    throw std::invalid_argument("gae_advantages: length mismatch");
  }
  const int n = static_cast<int>(rewards.size());
  std::vector<double> adv(rewards.size());
  double next_adv = 0.0;
  double next_value = bootstrap;
  for (int t = n - 1; t >= 0; --t) {
    const double delta = rewards[t] + gamma * next_value - values[t];
    next_adv = delta + gamma * lam * next_adv;
    adv[t] = next_adv;
    next_value = values[t];
  }
  return adv;
}

}  // namespace moc
