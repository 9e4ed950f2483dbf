#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "moc/rng.hpp"

namespace moc {

/// Shape of a fully connected ReLU network: `hidden_layers` hidden layers of
/// `hidden_width` units each, linear output layer.
struct MlpShape {
  int input_dim = 1;
  int hidden_width = 256;
  int hidden_layers = 3;
  int output_dim = 1;

  int layer_count() const { return hidden_layers + 1; }

  int layer_rows(int layer) const {
    return layer == hidden_layers ? output_dim : hidden_width;
  }

  int layer_cols(int layer) const {
    return layer == 0 ? input_dim : hidden_width;
  }

  bool operator==(const MlpShape&) const = default;
};

/// Weights and biases of an MLP. Weight matrices are row-major, one row per
/// output unit.
struct MlpParams {
  MlpShape shape;
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> biases;
};

/// Per-layer gradients, same layout as MlpParams. Accumulates across calls
/// until reset.
struct MlpGrads {
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> biases;

  void zero() {
    for (auto& w : weights) std::fill(w.begin(), w.end(), 0.0);
    for (auto& b : biases) std::fill(b.begin(), b.end(), 0.0);
  }

  void scale(double s) {
    for (auto& w : weights)
      for (auto& x : w) x *= s;
    for (auto& b : biases)
      for (auto& x : b) x *= s;
  }
};

/// Post-activation values for each layer, captured during a forward pass and
/// consumed by the backward pass. activations[0] is the input.
struct MlpActivations {
  std::vector<std::vector<double>> activations;
};

inline MlpGrads make_grads(const MlpParams& params) {
  MlpGrads g;
  g.weights.reserve(params.weights.size());
  g.biases.reserve(params.biases.size());
  for (const auto& w : params.weights) g.weights.emplace_back(w.size(), 0.0);
  for (const auto& b : params.biases) g.biases.emplace_back(b.size(), 0.0);
  return g;
}

/// Scaled uniform fan-in initialization: weights U(-1/sqrt(fan_in),
/// +1/sqrt(fan_in)), biases zero.
inline MlpParams make_mlp(const MlpShape& shape, Rng& rng) {
  if (shape.input_dim < 1 || shape.hidden_width < 1 || shape.hidden_layers < 0 ||
      shape.output_dim < 1) {
    throw std::invalid_argument("make_mlp: invalid shape");
  }
  MlpParams p;
  p.shape = shape;
  for (int l = 0; l < shape.layer_count(); ++l) {
    const int rows = shape.layer_rows(l);
    const int cols = shape.layer_cols(l);
    const double bound = 1.0 / std::sqrt(static_cast<double>(cols));
    std::vector<double> w(static_cast<std::size_t>(rows) * cols);
    for (auto& x : w) x = (2.0 * rng.uniform01() - 1.0) * bound;
    p.weights.push_back(std::move(w));
    p.biases.emplace_back(rows, 0.0);
  }
  return p;
}

inline bool all_finite(std::span<const double> xs) {
  for (double x : xs)
    if (!std::isfinite(x)) return false;
  return true;
}

inline bool params_finite(const MlpParams& p) {
  for (const auto& w : p.weights)
    if (!all_finite(w)) return false;
  for (const auto& b : p.biases)
    if (!all_finite(b)) return false;
  return true;
}

/// Deterministic forward pass; ReLU on hidden layers, linear output.
/// When `cache` is given, post-activation values are stored for backward.
inline std::vector<double> mlp_forward(const MlpParams& params,
                                       std::span<const double> input,
                                       MlpActivations* cache = nullptr) {
  const MlpShape& s = params.shape;
  if (static_cast<int>(input.size()) != s.input_dim) {
    throw std::invalid_argument("mlp_forward: input dim " +
                                std::to_string(input.size()) + " != " +
                                std::to_string(s.input_dim));
  }
  if (cache) {
    cache->activations.resize(s.layer_count() + 1);
    cache->activations[0].assign(input.begin(), input.end());
  }
  std::vector<double> cur(input.begin(), input.end());
  std::vector<double> next;
  for (int l = 0; l < s.layer_count(); ++l) {
    const int rows = s.layer_rows(l);
    const int cols = s.layer_cols(l);
    const bool hidden = l < s.hidden_layers;
    next.assign(rows, 0.0);
    const double* w = params.weights[l].data();
    for (int r = 0; r < rows; ++r) {
      double acc = params.biases[l][r];
      const double* wrow = w + static_cast<std::size_t>(r) * cols;
      for (int c = 0; c < cols; ++c) acc += wrow[c] * cur[c];
      next[r] = hidden && acc < 0.0 ? 0.0 : acc;
    }
    cur.swap(next);
    if (cache) cache->activations[l + 1] = cur;
  }
  return cur;
}

/// Accumulates into `grads` the gradient of dot(output, upstream) with
/// respect to every parameter, using activations cached by mlp_forward.
inline void mlp_backward(const MlpParams& params, const MlpActivations& cache,
                         std::span<const double> upstream, MlpGrads& grads) {
  const MlpShape& s = params.shape;
  if (static_cast<int>(upstream.size()) != s.output_dim) {
    throw std::invalid_argument("mlp_backward: upstream dim mismatch");
  }
  if (static_cast<int>(cache.activations.size()) != s.layer_count() + 1) {
    throw std::invalid_argument("mlp_backward: stale activation cache");
  }
  std::vector<double> delta(upstream.begin(), upstream.end());
  std::vector<double> delta_in;
  for (int l = s.layer_count() - 1; l >= 0; --l) {
    const int rows = s.layer_rows(l);
    const int cols = s.layer_cols(l);
    const std::vector<double>& below = cache.activations[l];
    double* gw = grads.weights[l].data();
    double* gb = grads.biases[l].data();
    const double* w = params.weights[l].data();
    delta_in.assign(cols, 0.0);
    for (int r = 0; r < rows; ++r) {
      const double d = delta[r];
      gb[r] += d;
      double* gwrow = gw + static_cast<std::size_t>(r) * cols;
      const double* wrow = w + static_cast<std::size_t>(r) * cols;
      for (int c = 0; c < cols; ++c) {
        gwrow[c] += d * below[c];
        delta_in[c] += d * wrow[c];
      }
    }
    if (l > 0) {
      // ReLU mask: the layer below stored post-activation values.
      for (int c = 0; c < cols; ++c)
        if (below[c] <= 0.0) delta_in[c] = 0.0;
    }
    delta.swap(delta_in);
  }
}

/// One-shot gradient of dot(output, upstream) w.r.t. all parameters.
inline MlpGrads mlp_gradients(const MlpParams& params,
                              std::span<const double> input,
                              std::span<const double> upstream) {
  MlpActivations cache;
  mlp_forward(params, input, &cache);
  MlpGrads grads = make_grads(params);
  mlp_backward(params, cache, upstream, grads);
  return grads;
}

/// Adam accumulators; shapes mirror the parameters they update.
struct AdamState {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  long t = 0;
  std::vector<std::vector<double>> m_weights, v_weights;
  std::vector<std::vector<double>> m_biases, v_biases;
};

inline AdamState make_adam(const MlpParams& params, double lr) {
  AdamState st;
  st.lr = lr;
  for (const auto& w : params.weights) {
    st.m_weights.emplace_back(w.size(), 0.0);
    st.v_weights.emplace_back(w.size(), 0.0);
  }
  for (const auto& b : params.biases) {
    st.m_biases.emplace_back(b.size(), 0.0);
    st.v_biases.emplace_back(b.size(), 0.0);
  }
  return st;
}

/// Standard Adam descent step with bias correction. Gradients are validated
/// before any state is touched; non-finite input leaves params and state
/// unchanged.
inline void adam_step(AdamState& state, MlpParams& params, const MlpGrads& grads) {
  if (grads.weights.size() != params.weights.size() ||
      grads.biases.size() != params.biases.size()) {
    throw std::invalid_argument("adam_step: gradient layout mismatch");
  }
  for (std::size_t l = 0; l < grads.weights.size(); ++l) {
    if (grads.weights[l].size() != params.weights[l].size() ||
        grads.biases[l].size() != params.biases[l].size()) {
      throw std::invalid_argument("adam_step: gradient shape mismatch");
    }
    if (!all_finite(grads.weights[l]) || !all_finite(grads.biases[l])) {
      throw std::runtime_error("adam_step: non-finite gradient");
    }
  }
  state.t += 1;
  const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
  const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
  auto update = [&](std::vector<double>& p, std::vector<double>& m,
                    std::vector<double>& v, const std::vector<double>& g) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      m[i] = state.beta1 * m[i] + (1.0 - state.beta1) * g[i];
      v[i] = state.beta2 * v[i] + (1.0 - state.beta2) * g[i] * g[i];
      const double mhat = m[i] / bc1;
      const double vhat = v[i] / bc2;
      p[i] -= state.lr * mhat / (std::sqrt(vhat) + state.eps);
    }
  };
  for (std::size_t l = 0; l < params.weights.size(); ++l) {
    update(params.weights[l], state.m_weights[l], state.v_weights[l], grads.weights[l]);
    update(params.biases[l], state.m_biases[l], state.v_biases[l], grads.biases[l]);
  }
}

}  // namespace moc
