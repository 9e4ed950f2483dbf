#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "moc/rng.hpp"

namespace moc {

/// Log-probabilities of a categorical distribution, computed with
/// max-subtraction for stability.
inline std::vector<double> softmax_logprobs(std::span<const double> logits) {
  if (logits.empty()) throw std::invalid_argument("softmax_logprobs: empty logits");
  double mx = logits[0];
  for (double x : logits) {
    if (std::isnan(x)) throw std::invalid_argument("softmax_logprobs: NaN logit");
    mx = std::max(mx, x);
  }
  double sum = 0.0;
  for (double x : logits) sum += std::exp(x - mx);
  const double lse = mx + std::log(sum);
  std::vector<double> out(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) out[i] = logits[i] - lse;
  return out;
}

inline std::vector<double> softmax_probs(std::span<const double> logits) {
  std::vector<double> lp = softmax_logprobs(logits);
  for (auto& x : lp) x = std::exp(x);
  return lp;
}

/// log pi(action) for the categorical induced by `logits`.
inline double softmax_logprob(std::span<const double> logits, int action) {
  if (action < 0 || action >= static_cast<int>(logits.size())) {
    throw std::invalid_argument("softmax_logprob: action out of range");
  }
  return softmax_logprobs(logits)[static_cast<std::size_t>(action)];
}

/// Entropy of the categorical induced by `logits`.
inline double softmax_entropy(std::span<const double> logits) {
  std::vector<double> lp = softmax_logprobs(logits);
  double h = 0.0;
  for (double l : lp) h -= std::exp(l) * l;
  return h;
}

/// Draws an action index; inverse-CDF over the stable softmax, so the draw
/// sequence is reproducible for a fixed seed.
inline int categorical_sample(std::span<const double> logits, Rng& rng) {
  std::vector<double> p = softmax_probs(logits);
  const double u = rng.uniform01();
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    acc += p[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(p.size()) - 1;
}

inline int argmax_action(std::span<const double> logits) {
  return static_cast<int>(std::distance(
      logits.begin(), std::max_element(logits.begin(), logits.end())));
}

}  // namespace moc
