#pragma once

#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>

#include "moc/env/fishwood.hpp"
#include "moc/env/fruit_tree.hpp"
#include "moc/trainer.hpp"

namespace moc {

/// A policy loaded from disk, bundled with enough environment configuration
/// to rebuild the task it was trained on.
struct SavedPolicy {
  PolicyModel model;
  FishwoodConfig fishwood;
  FruitTreeConfig fruit_tree;

  std::unique_ptr<Environment> make_env() const {
    if (model.env_name == "fishwood") return std::make_unique<FishwoodEnv>(fishwood);
    if (model.env_name == "fruit-tree") return std::make_unique<FruitTreeEnv>(fruit_tree);
    throw std::runtime_error("policy: unknown environment '" + model.env_name + "'");
  }
};

namespace detail {

inline void write_params(std::ostream& out, const MlpParams& p) {
  out << "shape " << p.shape.input_dim << ' ' << p.shape.hidden_width << ' '
      << p.shape.hidden_layers << ' ' << p.shape.output_dim << "\n";
  out.precision(17);
  for (std::size_t l = 0; l < p.weights.size(); ++l) {
    out << "weights " << l;
    for (double x : p.weights[l]) out << ' ' << x;
    out << "\nbiases " << l;
    for (double x : p.biases[l]) out << ' ' << x;
    out << "\n";
  }
}

inline MlpParams read_params(std::istream& in) {
  std::string key;
  MlpParams p;
  if (!(in >> key) || key != "shape") throw std::runtime_error("policy: missing shape");
  in >> p.shape.input_dim >> p.shape.hidden_width >> p.shape.hidden_layers >>
      p.shape.output_dim;
  for (int l = 0; l < p.shape.layer_count(); ++l) {
    const std::size_t rows = static_cast<std::size_t>(p.shape.layer_rows(l));
    const std::size_t cols = static_cast<std::size_t>(p.shape.layer_cols(l));
    std::size_t idx;
    in >> key >> idx;
    if (key != "weights" || idx != static_cast<std::size_t>(l)) {
      throw std::runtime_error("policy: malformed weights block");
    }
    std::vector<double> w(rows * cols);
    for (auto& x : w) in >> x;
    in >> key >> idx;
    if (key != "biases" || idx != static_cast<std::size_t>(l)) {
      throw std::runtime_error("policy: malformed biases block");
    }
    std::vector<double> b(rows);
    for (auto& x : b) in >> x;
    p.weights.push_back(std::move(w));
    p.biases.push_back(std::move(b));
  }
  if (!in) throw std::runtime_error("policy: truncated parameter data");
  return p;
}

}  // namespace detail

inline void save_policy(const PolicyModel& model, const FishwoodConfig& env_cfg,
                        const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("policy: cannot write " + path);
  out << "# moc-policy v1\n";
  out << "env fishwood\n";
  out << "algorithm " << algorithm_name(model.algorithm) << "\n";
  out << "objectives " << model.objective_count << "\n";
  out << "conditioned " << (model.preference_conditioned ? 1 : 0) << "\n";
  out << "state_dim " << model.state_dim << "\n";
  out.precision(17);
  out << "woodprob " << env_cfg.woodprob << "\n";
  out << "fishprob " << env_cfg.fishprob << "\n";
  out << "horizon " << env_cfg.horizon << "\n";
  detail::write_params(out, model.policy);
}

inline void save_policy(const PolicyModel& model, const FruitTreeConfig& env_cfg,
                        const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("policy: cannot write " + path);
  out << "# moc-policy v1\n";
  out << "env fruit-tree\n";
  out << "algorithm " << algorithm_name(model.algorithm) << "\n";
  out << "objectives " << model.objective_count << "\n";
  out << "conditioned " << (model.preference_conditioned ? 1 : 0) << "\n";
  out << "state_dim " << model.state_dim << "\n";
  out << "depth " << env_cfg.depth << "\n";
  out.precision(17);
  for (const auto& leaf : env_cfg.leaf_rewards) {
    out << "leaf";
    for (double x : leaf) out << ' ' << x;
    out << "\n";
  }
  detail::write_params(out, model.policy);
}

inline SavedPolicy load_policy(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("policy: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("# moc-policy", 0) != 0) {
    throw std::runtime_error("policy: bad header in " + path);
  }
  SavedPolicy sp;
  std::string key;
  while (in >> key) {
    if (key == "env") {
      in >> sp.model.env_name;
    } else if (key == "algorithm") {
      std::string name;
      in >> name;
      sp.model.algorithm = algorithm_from_name(name);
    } else if (key == "objectives") {
      in >> sp.model.objective_count;
    } else if (key == "conditioned") {
      int c;
      in >> c;
      sp.model.preference_conditioned = c != 0;
    } else if (key == "state_dim") {
      in >> sp.model.state_dim;
    } else if (key == "woodprob") {
      in >> sp.fishwood.woodprob;
    } else if (key == "fishprob") {
      in >> sp.fishwood.fishprob;
    } else if (key == "horizon") {
      in >> sp.fishwood.horizon;
    } else if (key == "depth") {
      in >> sp.fruit_tree.depth;
    } else if (key == "leaf") {
      std::vector<double> leaf(kFruitTreeObjectives);
      for (auto& x : leaf) in >> x;
      sp.fruit_tree.leaf_rewards.push_back(std::move(leaf));
    } else if (key == "shape") {
      // Rewind the token and hand off to the parameter reader.
      for (auto it = key.rbegin(); it != key.rend(); ++it) in.putback(*it);
      sp.model.policy = detail::read_params(in);
      break;
    } else {
      throw std::runtime_error("policy: unknown key '" + key + "' in " + path);
    }
  }
  if (sp.model.env_name.empty() || sp.model.policy.weights.empty()) {
    throw std::runtime_error("policy: incomplete file " + path);
  }
  return sp;
}

}  // namespace moc
