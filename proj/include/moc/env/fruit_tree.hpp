#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "moc/env/environment.hpp"
#include "moc/rng.hpp"

namespace moc {

constexpr int kFruitTreeObjectives = 6;

struct FruitTreeConfig {
  int depth = 6;
  /// 2^depth leaf reward vectors of length 6, breadth-first leaf order.
  std::vector<std::vector<double>> leaf_rewards;

  void validate() const {
    if (depth < 1) throw std::invalid_argument("fruit-tree: depth must be >= 1");
    const std::size_t expected = std::size_t{1} << depth;
    if (leaf_rewards.size() != expected) {
      throw std::invalid_argument("fruit-tree: expected " + std::to_string(expected) +
                                  " leaves, got " + std::to_string(leaf_rewards.size()));
    }
    for (const auto& leaf : leaf_rewards) {
      if (leaf.size() != kFruitTreeObjectives) {
        throw std::invalid_argument("fruit-tree: leaf reward must have 6 entries");
      }
      for (double x : leaf) {
        if (!std::isfinite(x) || x < 0.0) {
          throw std::invalid_argument("fruit-tree: leaf rewards must be finite and >= 0");
        }
      }
    }
  }
};

/// Seeded fallback table: uniform nutrients in [0, 10].
inline FruitTreeConfig make_random_fruit_tree(int depth, std::uint64_t seed) {
  FruitTreeConfig cfg;
  cfg.depth = depth;
  Rng rng(seed);
  const std::size_t leaves = std::size_t{1} << depth;
  for (std::size_t i = 0; i < leaves; ++i) {
    std::vector<double> leaf(kFruitTreeObjectives);
    for (auto& x : leaf) x = 10.0 * rng.uniform01();
    cfg.leaf_rewards.push_back(std::move(leaf));
  }
  cfg.validate();
  return cfg;
}

/// Reads a leaf table: header line "# fruit-tree depth=<d>", then one leaf
/// per line as 6 space-separated decimals in breadth-first order. Extra
/// comment lines are skipped.
inline FruitTreeConfig load_fruit_tree(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("fruit-tree: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("fruit-tree: empty file " + path);
  const std::string prefix = "# fruit-tree depth=";
  if (line.rfind(prefix, 0) != 0) {
    throw std::runtime_error("fruit-tree: bad header in " + path);
  }
  FruitTreeConfig cfg;
  cfg.depth = std::stoi(line.substr(prefix.size()));
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::vector<double> leaf;
    double x;
    while (ss >> x) leaf.push_back(x);
    if (leaf.size() != kFruitTreeObjectives) {
      throw std::runtime_error("fruit-tree: malformed leaf line in " + path);
    }
    cfg.leaf_rewards.push_back(std::move(leaf));
  }
  cfg.validate();
  return cfg;
}

inline void save_fruit_tree(const FruitTreeConfig& cfg, const std::string& path) {
  cfg.validate();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("fruit-tree: cannot write " + path);
  out << "# fruit-tree depth=" << cfg.depth << "\n";
  out.precision(17);
  for (const auto& leaf : cfg.leaf_rewards) {
    for (std::size_t j = 0; j < leaf.size(); ++j) out << (j ? " " : "") << leaf[j];
    out << "\n";
  }
}

/// Binary tree descent over 6-dimensional nutrient rewards. Each action
/// (0 = left, 1 = right) moves one level down; reward is zero until a leaf,
/// where the leaf's vector is paid and the episode ends. The state encodes
/// the node as depth+1 reals: current level followed by the path bits taken
/// so far (padded with zeros).
class FruitTreeEnv : public Environment {
 public:
  enum Action { kLeft = 0, kRight = 1 };

  explicit FruitTreeEnv(FruitTreeConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
  }

  const FruitTreeConfig& config() const { return cfg_; }
  int state_dim() const override { return cfg_.depth + 1; }
  int action_count() const override { return 2; }
  int objective_count() const override { return kFruitTreeObjectives; }

  EnvObservation reset(std::uint64_t /*seed*/) override {
    level_ = 0;
    path_.assign(cfg_.depth, 0);
    done_ = false;
    return {encode_state(), std::vector<double>(kFruitTreeObjectives, 0.0), false};
  }

  EnvObservation step(int action) override {
    if (done_) throw std::logic_error("fruit-tree: step after episode end");
    if (action != kLeft && action != kRight) {
      throw std::invalid_argument("fruit-tree: unknown action");
    }
    path_[static_cast<std::size_t>(level_)] = action;
    level_ += 1;
    std::vector<double> reward(kFruitTreeObjectives, 0.0);
    if (level_ == cfg_.depth) {
      reward = cfg_.leaf_rewards[leaf_index()];
      done_ = true;
    }
    return {encode_state(), std::move(reward), done_};
  }

  bool done() const override { return done_; }

  /// Breadth-first leaf index: the path bits read as a binary number, first
  /// action as the most significant bit.
  std::size_t leaf_index() const {
    std::size_t idx = 0;
    for (int i = 0; i < level_; ++i) idx = (idx << 1) | static_cast<std::size_t>(path_[i]);
    return idx << (cfg_.depth - level_);
  }

 private:
  std::vector<double> encode_state() const {
    std::vector<double> s(static_cast<std::size_t>(cfg_.depth) + 1, 0.0);
    s[0] = static_cast<double>(level_);
    for (int i = 0; i < level_; ++i) s[static_cast<std::size_t>(i) + 1] = path_[i];
    return s;
  }

  FruitTreeConfig cfg_;
  int level_ = 0;
  std::vector<int> path_;
  bool done_ = false;
};

}  // namespace moc
