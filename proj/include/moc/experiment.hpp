#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "moc/env/fishwood.hpp"
#include "moc/env/fruit_tree.hpp"
#include "moc/metrics.hpp"
#include "moc/policy_io.hpp"
#include "moc/trainer.hpp"

namespace moc {

// ---------------------------------------------------------------------------
// Key-value config files: "#"/";" comments, [section] headers, key = value.
// ---------------------------------------------------------------------------

using IniData = std::map<std::string, std::map<std::string, std::string>>;

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline IniData parse_ini(std::istream& in) {
  IniData data;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno += 1;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": unterminated section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      data[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    }
    data[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return data;
}

inline IniData parse_ini_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  return parse_ini(in);
}

namespace detail {

inline double parse_double(const std::string& field, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument(field + ": expected a number, got '" + value + "'");
  }
}

inline long parse_long(const std::string& field, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long x = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument(field + ": expected an integer, got '" + value + "'");
  }
}

inline bool parse_bool(const std::string& field, const std::string& value) {
  if (value == "1" || value == "true") return true;
  if (value == "0" || value == "false") return false;
  throw std::invalid_argument(field + ": expected a boolean, got '" + value + "'");
}

inline std::vector<double> parse_numbers(const std::string& field,
                                         const std::string& value) {
  std::istringstream ss(value);
  std::vector<double> out;
  std::string tok;
  while (ss >> tok) out.push_back(parse_double(field, tok));
  return out;
}

}  // namespace detail

/// Seeded interior preference vectors (flat Dirichlet over the simplex).
inline std::vector<std::vector<double>> random_preferences(int count, int dims,
                                                           std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<double>> out;
  for (int i = 0; i < count; ++i) {
    std::vector<double> p(static_cast<std::size_t>(dims));
    double sum = 0.0;
    for (auto& x : p) {
      x = -std::log(1.0 - rng.uniform01() + 1e-300);
      sum += x;
    }
    for (auto& x : p) x /= sum;
    out.push_back(std::move(p));
  }
  return out;
}

/// Unseen two-objective preference groups: integers n drawn uniformly from
/// [1, 99], weight n/100. Multiples of 10 (the training grid) and in-group
/// duplicates are redrawn so every member is genuinely unseen.
inline std::vector<PreferenceSet> generate_unseen_groups(std::uint64_t seed,
                                                         int groups,
                                                         int per_group) {
  Rng rng(seed);
  std::vector<PreferenceSet> out;
  for (int g = 0; g < groups; ++g) {
    std::vector<long> picked;
    while (static_cast<int>(picked.size()) < per_group) {
      const long n = rng.uniform_int(1, 99);
      if (n % 10 == 0) continue;
      bool dup = false;
      for (long m : picked) dup = dup || m == n;
      if (!dup) picked.push_back(n);
    }
    std::vector<PreferenceVector> prefs;
    for (long n : picked) prefs.push_back(PreferenceVector::pair(n / 100.0));
    out.push_back(PreferenceSet(std::move(prefs)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Experiment configuration
// ---------------------------------------------------------------------------

struct ExperimentConfig {
  std::string environment = "fishwood";
  std::string algorithm = "moc";
  FishwoodConfig fishwood;
  int fruit_depth = 6;
  std::string leaf_table;  // empty -> seeded fallback table
  std::uint64_t leaf_seed = 20240905;
  PpoConfig ppo;
  std::vector<std::vector<double>> train_prefs;
  std::vector<std::vector<double>> eval_prefs;  // empty -> train_prefs
  int eval_episodes = 20;
  std::vector<std::uint64_t> seeds{1};
  std::string out_dir = "runs";
  std::string run_id;  // optional deterministic prefix; default timestamp
  bool greedy = false;
  std::vector<double> ref_point;  // empty -> origin

  int objective_count() const {
    return environment == "fruit-tree" ? kFruitTreeObjectives : 2;
  }

  std::unique_ptr<Environment> make_env() const {
    if (environment == "fishwood") return std::make_unique<FishwoodEnv>(fishwood);
    if (environment == "fruit-tree") {
      FruitTreeConfig cfg = leaf_table.empty()
                                ? make_random_fruit_tree(fruit_depth, leaf_seed)
                                : load_fruit_tree(leaf_table);
      return std::make_unique<FruitTreeEnv>(std::move(cfg));
    }
    throw std::invalid_argument("[experiment].environment: unknown '" + environment + "'");
  }

  PreferenceSet train_set() const {
    std::vector<PreferenceVector> v;
    for (const auto& p : train_prefs) v.push_back(PreferenceVector(p));
    return PreferenceSet(std::move(v));
  }

  PreferenceSet eval_set() const {
    if (eval_prefs.empty()) return train_set();
    std::vector<PreferenceVector> v;
    for (const auto& p : eval_prefs) v.push_back(PreferenceVector(p));
    return PreferenceSet(std::move(v));
  }

  std::vector<double> reference_point() const {
    if (!ref_point.empty()) return ref_point;
    return std::vector<double>(static_cast<std::size_t>(objective_count()), 0.0);
  }

  void validate() const {
    algorithm_from_name(algorithm);
    if (environment != "fishwood" && environment != "fruit-tree") {
      throw std::invalid_argument("[experiment].environment: unknown '" + environment + "'");
    }
    if (eval_episodes < 1) {
      throw std::invalid_argument("[experiment].eval_episodes: must be >= 1");
    }
    if (seeds.empty()) throw std::invalid_argument("[experiment].seeds: empty");
    if (train_prefs.empty()) {
      throw std::invalid_argument("[preferences].train: empty");
    }
    const int n = objective_count();
    for (const auto& p : train_prefs) {
      if (static_cast<int>(p.size()) != n) {
        throw std::invalid_argument("[preferences].train: length " +
                                    std::to_string(p.size()) + " != objectives " +
                                    std::to_string(n));
      }
      PreferenceVector check(p);
    }
    for (const auto& p : eval_prefs) {
      if (static_cast<int>(p.size()) != n) {
        throw std::invalid_argument("[preferences].eval: length mismatch");
      }
      PreferenceVector check(p);
    }
    if (!ref_point.empty() && static_cast<int>(ref_point.size()) != n) {
      throw std::invalid_argument("[experiment].ref_point: length mismatch");
    }
    if (environment == "fishwood") fishwood.validate();
    ppo.validate();
  }
};

namespace detail {

inline std::vector<std::vector<double>> parse_pref_list(const std::string& field,
                                                        const std::string& value,
                                                        int dims) {
  std::istringstream head(value);
  std::string first;
  head >> first;
  if (first == "grid9") {
    std::vector<std::vector<double>> out;
    for (int i = 1; i <= 9; ++i) out.push_back({i / 10.0, 1.0 - i / 10.0});
    return out;
  }
  if (first == "random") {
    long count = 0, seed = 0;
    if (!(head >> count >> seed) || count < 1) {
      throw std::invalid_argument(field + ": expected 'random <count> <seed>'");
    }
    return random_preferences(static_cast<int>(count), dims,
                              static_cast<std::uint64_t>(seed));
  }
  std::vector<std::vector<double>> out;
  std::istringstream ss(value);
  std::string part;
  while (std::getline(ss, part, ';')) {
    part = trim(part);
    if (part.empty()) continue;
    out.push_back(parse_numbers(field, part));
  }
  return out;
}

}  // namespace detail

inline ExperimentConfig load_experiment_config(const std::string& path) {
  const IniData ini = parse_ini_file(path);
  ExperimentConfig cfg;
  for (const auto& [section, kvs] : ini) {
    for (const auto& [key, value] : kvs) {
      const std::string field = "[" + section + "]." + key;
      if (section == "experiment") {
        if (key == "environment") cfg.environment = value;
        else if (key == "algorithm") cfg.algorithm = value;
        else if (key == "eval_episodes") cfg.eval_episodes = static_cast<int>(detail::parse_long(field, value));
        else if (key == "seeds") {
          cfg.seeds.clear();
          for (double s : detail::parse_numbers(field, value)) {
            cfg.seeds.push_back(static_cast<std::uint64_t>(s));
          }
        }
        else if (key == "out_dir") cfg.out_dir = value;
        else if (key == "run_id") cfg.run_id = value;
        else if (key == "greedy") cfg.greedy = detail::parse_bool(field, value);
        else if (key == "ref_point") cfg.ref_point = detail::parse_numbers(field, value);
        else throw std::invalid_argument(field + ": unknown key");
      } else if (section == "env") {
        if (key == "woodprob") cfg.fishwood.woodprob = detail::parse_double(field, value);
        else if (key == "fishprob") cfg.fishwood.fishprob = detail::parse_double(field, value);
        else if (key == "horizon") cfg.fishwood.horizon = static_cast<int>(detail::parse_long(field, value));
        else if (key == "depth") cfg.fruit_depth = static_cast<int>(detail::parse_long(field, value));
        else if (key == "leaf_table") cfg.leaf_table = value;
        else if (key == "leaf_seed") cfg.leaf_seed = static_cast<std::uint64_t>(detail::parse_long(field, value));
        else throw std::invalid_argument(field + ": unknown key");
      } else if (section == "ppo") {
        if (key == "gamma") cfg.ppo.gamma = detail::parse_double(field, value);
        else if (key == "lam") cfg.ppo.lam = detail::parse_double(field, value);
        else if (key == "clip_eps") cfg.ppo.clip_eps = detail::parse_double(field, value);
        else if (key == "epochs") cfg.ppo.epochs = static_cast<int>(detail::parse_long(field, value));
        else if (key == "learning_rate") cfg.ppo.learning_rate = detail::parse_double(field, value);
        else if (key == "batch_episodes") cfg.ppo.batch_episodes = static_cast<int>(detail::parse_long(field, value));
        else if (key == "total_steps") cfg.ppo.total_steps = detail::parse_long(field, value);
        else if (key == "kl_coef") cfg.ppo.kl_coef = detail::parse_double(field, value);
        else if (key == "value_coef") cfg.ppo.value_coef = detail::parse_double(field, value);
        else if (key == "entropy_coef") cfg.ppo.entropy_coef = detail::parse_double(field, value);
        else if (key == "phi") cfg.ppo.phi = detail::parse_double(field, value);
        else if (key == "horizon") cfg.ppo.horizon = static_cast<int>(detail::parse_long(field, value));
        else if (key == "hidden_layers") cfg.ppo.hidden_layers = static_cast<int>(detail::parse_long(field, value));
        else if (key == "hidden_units") cfg.ppo.hidden_units = static_cast<int>(detail::parse_long(field, value));
        else if (key == "exploration_epsilon") cfg.ppo.exploration_epsilon = detail::parse_double(field, value);
        else if (key == "normalize_step_rewards") cfg.ppo.normalize_step_rewards = detail::parse_bool(field, value);
        else if (key == "violation_per_episode") cfg.ppo.violation_per_episode = detail::parse_bool(field, value);
        else if (key == "vbar_group_mean") cfg.ppo.vbar_group_mean = detail::parse_bool(field, value);
        else throw std::invalid_argument(field + ": unknown key");
      } else if (section == "preferences") {
        if (key == "train") cfg.train_prefs = detail::parse_pref_list(field, value, cfg.objective_count());
        else if (key == "eval") cfg.eval_prefs = detail::parse_pref_list(field, value, cfg.objective_count());
        else throw std::invalid_argument(field + ": unknown key");
      } else {
        throw std::invalid_argument("[" + section + "]: unknown section");
      }
    }
  }
  // Preference shorthands may be parsed before [env] changes the objective
  // count; re-expand against the final environment.
  if (cfg.environment == "fruit-tree") {
    auto it = ini.find("preferences");
    if (it != ini.end()) {
      auto t = it->second.find("train");
      if (t != it->second.end()) {
        cfg.train_prefs = detail::parse_pref_list("[preferences].train", t->second,
                                                  cfg.objective_count());
      }
      auto e = it->second.find("eval");
      if (e != it->second.end()) {
        cfg.eval_prefs = detail::parse_pref_list("[preferences].eval", e->second,
                                                 cfg.objective_count());
      }
    }
  }
  cfg.validate();
  return cfg;
}

// ---------------------------------------------------------------------------
// CSV artifacts
// ---------------------------------------------------------------------------

namespace detail {

inline std::string fmt(double x) {
  std::ostringstream ss;
  ss.precision(12);
  ss << x;
  return ss.str();
}

}  // namespace detail

inline void write_solutions_csv(const SolutionSet& set, int n_obj,
                                const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "index,episodes";
  for (int j = 0; j < n_obj; ++j) out << ",p_" << j;
  for (int j = 0; j < n_obj; ++j) out << ",mean_" << j;
  for (int j = 0; j < n_obj; ++j) out << ",std_" << j;
  out << "\n";
  for (std::size_t i = 0; i < set.size(); ++i) {
    out << i << ',' << set[i].episodes;
    for (int j = 0; j < n_obj; ++j) out << ',' << detail::fmt(set[i].preference[j]);
    for (int j = 0; j < n_obj; ++j) out << ',' << detail::fmt(set[i].mean_reward[j]);
    for (int j = 0; j < n_obj; ++j) out << ',' << detail::fmt(set[i].std_reward[j]);
    out << "\n";
  }
}

inline SolutionSet read_solutions_csv(const std::string& path, int n_obj) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty solutions file " + path);
  SolutionSet set;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (static_cast<int>(cells.size()) != 2 + 3 * n_obj) {
      throw std::runtime_error("malformed solutions row in " + path);
    }
    SolutionPoint pt;
    pt.episodes = static_cast<int>(std::stol(cells[1]));
    std::vector<double> p(static_cast<std::size_t>(n_obj));
    for (int j = 0; j < n_obj; ++j) p[static_cast<std::size_t>(j)] = std::stod(cells[2 + j]);
    pt.preference = PreferenceVector(p);
    for (int j = 0; j < n_obj; ++j) pt.mean_reward.push_back(std::stod(cells[2 + n_obj + j]));
    for (int j = 0; j < n_obj; ++j) pt.std_reward.push_back(std::stod(cells[2 + 2 * n_obj + j]));
    set.push_back(std::move(pt));
  }
  return set;
}

/// Metric block computed from a solution set against a reference point.
/// For two objectives, controllability is the Kendall tau between the first
/// preference component and the angular projection of the mean returns; for
/// more objectives, one tau per objective between p_j and mean return j.
struct MetricsSummary {
  double hypervolume = 0.0;
  double hypervolume_se = 0.0;
  std::optional<double> tau;
  std::optional<double> tau_p;
  std::vector<double> per_objective_tau;
  std::optional<double> mpd;
};

inline MetricsSummary metrics_for_solutions(const SolutionSet& set,
                                            const std::vector<double>& ref,
                                            std::size_t mc_samples = 1000000,
                                            std::uint64_t mc_seed = 20240901) {
  if (set.empty()) throw std::invalid_argument("metrics: empty solution set");
  const int n_obj = static_cast<int>(set.front().mean_reward.size());
  std::vector<std::vector<double>> points;
  for (const auto& s : set) points.push_back(s.mean_reward);
  MetricsSummary m;
  const HypervolumeResult hv = hypervolume(points, ref, mc_samples, mc_seed);
  m.hypervolume = hv.value;
  m.hypervolume_se = hv.std_error;
  if (set.size() >= 2) {
    if (n_obj == 2) {
      std::vector<double> x, y;
      for (const auto& s : set) {
        x.push_back(s.preference[0]);
        y.push_back(projection_score(s.mean_reward, ref));
      }
      const KendallResult kt = kendall_tau(x, y);
      m.tau = kt.tau;
      m.tau_p = kt.p_value;
    } else {
      double acc = 0.0;
      for (int j = 0; j < n_obj; ++j) {
        std::vector<double> x, y;
        for (const auto& s : set) {
          x.push_back(s.preference[j]);
          y.push_back(s.mean_reward[static_cast<std::size_t>(j)]);
        }
        const KendallResult kt = kendall_tau(x, y);
        m.per_objective_tau.push_back(kt.tau);
        acc += kt.tau;
      }
      m.tau = acc / n_obj;
    }
    m.mpd = mean_pairwise_distance(points);
  }
  return m;
}

inline void write_metrics_csv(const MetricsSummary& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "metric,value\n";
  out << "hypervolume," << detail::fmt(m.hypervolume) << "\n";
  out << "hypervolume_se," << detail::fmt(m.hypervolume_se) << "\n";
  if (m.tau) out << "kendall_tau," << detail::fmt(*m.tau) << "\n";
  if (m.tau_p) out << "kendall_p," << detail::fmt(*m.tau_p) << "\n";
  for (std::size_t j = 0; j < m.per_objective_tau.size(); ++j) {
    out << "kendall_tau_obj" << j << ',' << detail::fmt(m.per_objective_tau[j]) << "\n";
  }
  if (m.mpd) out << "mpd," << detail::fmt(*m.mpd) << "\n";
}

inline void write_train_csv(const std::vector<std::pair<int, const std::vector<TrainLogRecord>*>>& logs,
                            int n_obj, int n_groups, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "model,iteration,env_steps,mean_c1,mean_c2,violation_rate,"
         "policy_surrogate,value_loss,entropy,kl";
  for (int g = 0; g < n_groups; ++g) {
    out << ",episodes_g" << g;
    for (int j = 0; j < n_obj; ++j) out << ",raw_g" << g << "_o" << j;
    for (int j = 0; j < n_obj; ++j) out << ",norm_g" << g << "_o" << j;
  }
  out << "\n";
  for (const auto& [model_idx, log] : logs) {
    for (const TrainLogRecord& r : *log) {
      out << model_idx << ',' << r.iteration << ',' << r.env_steps << ','
          << detail::fmt(r.mean_c1) << ',' << detail::fmt(r.mean_c2) << ','
          << detail::fmt(r.violation_rate) << ',' << detail::fmt(r.policy_surrogate)
          << ',' << detail::fmt(r.value_loss) << ',' << detail::fmt(r.entropy) << ','
          << detail::fmt(r.kl);
      for (int g = 0; g < n_groups; ++g) {
        if (g < static_cast<int>(r.pref_episodes.size())) {
          out << ',' << r.pref_episodes[g];
          for (int j = 0; j < static_cast<int>(r.pref_mean_raw[g].size()); ++j) {
            out << ',';
            if (r.pref_episodes[g] > 0) out << detail::fmt(r.pref_mean_raw[g][j]);
          }
          for (int j = 0; j < static_cast<int>(r.pref_mean_norm[g].size()); ++j) {
            out << ',';
            if (r.pref_episodes[g] > 0) out << detail::fmt(r.pref_mean_norm[g][j]);
          }
        } else {
          out << ",0";
          for (int j = 0; j < 2 * n_obj; ++j) out << ',';
        }
      }
      out << "\n";
    }
  }
}

inline void write_front_csv(const ExperimentConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  if (cfg.environment == "fishwood") {
    out << "x,y\n";
    for (const auto& p : fishwood_pareto_front(cfg.fishwood)) {
      out << detail::fmt(p[0]) << ',' << detail::fmt(p[1]) << "\n";
    }
  } else {
    FruitTreeConfig tree = cfg.leaf_table.empty()
                               ? make_random_fruit_tree(cfg.fruit_depth, cfg.leaf_seed)
                               : load_fruit_tree(cfg.leaf_table);
    const auto front = pareto_filter(tree.leaf_rewards);
    for (int j = 0; j < kFruitTreeObjectives; ++j) out << (j ? "," : "") << "r_" << j;
    out << "\n";
    for (const auto& leaf : front) {
      for (int j = 0; j < kFruitTreeObjectives; ++j) {
        out << (j ? "," : "") << detail::fmt(leaf[j]);
      }
      out << "\n";
    }
  }
}

inline void write_config_snapshot(const ExperimentConfig& cfg, std::uint64_t seed,
                                  const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.precision(17);
  out << "[experiment]\n";
  out << "environment = " << cfg.environment << "\n";
  out << "algorithm = " << cfg.algorithm << "\n";
  out << "eval_episodes = " << cfg.eval_episodes << "\n";
  out << "seeds = " << seed << "\n";
  out << "out_dir = " << cfg.out_dir << "\n";
  if (!cfg.run_id.empty()) out << "run_id = " << cfg.run_id << "\n";
  out << "greedy = " << (cfg.greedy ? 1 : 0) << "\n";
  out << "ref_point =";
  for (double x : cfg.reference_point()) out << ' ' << x;
  out << "\n\n[env]\n";
  if (cfg.environment == "fishwood") {
    out << "woodprob = " << cfg.fishwood.woodprob << "\n";
    out << "fishprob = " << cfg.fishwood.fishprob << "\n";
    out << "horizon = " << cfg.fishwood.horizon << "\n";
  } else {
    out << "depth = " << cfg.fruit_depth << "\n";
    if (!cfg.leaf_table.empty()) out << "leaf_table = " << cfg.leaf_table << "\n";
    out << "leaf_seed = " << cfg.leaf_seed << "\n";
  }
  const PpoConfig& p = cfg.ppo;
  out << "\n[ppo]\n";
  out << "gamma = " << p.gamma << "\n";
  out << "lam = " << p.lam << "\n";
  out << "clip_eps = " << p.clip_eps << "\n";
  out << "epochs = " << p.epochs << "\n";
  out << "learning_rate = " << p.learning_rate << "\n";
  out << "batch_episodes = " << p.batch_episodes << "\n";
  out << "total_steps = " << p.total_steps << "\n";
  out << "kl_coef = " << p.kl_coef << "\n";
  out << "value_coef = " << p.value_coef << "\n";
  out << "entropy_coef = " << p.entropy_coef << "\n";
  out << "phi = " << p.phi << "\n";
  out << "horizon = " << p.horizon << "\n";
  out << "hidden_layers = " << p.hidden_layers << "\n";
  out << "hidden_units = " << p.hidden_units << "\n";
  out << "exploration_epsilon = " << p.exploration_epsilon << "\n";
  out << "normalize_step_rewards = " << (p.normalize_step_rewards ? 1 : 0) << "\n";
  out << "violation_per_episode = " << (p.violation_per_episode ? 1 : 0) << "\n";
  out << "vbar_group_mean = " << (p.vbar_group_mean ? 1 : 0) << "\n";
  auto pref_line = [&](const std::vector<std::vector<double>>& prefs) {
    std::string s;
    for (std::size_t i = 0; i < prefs.size(); ++i) {
      if (i) s += "; ";
      for (std::size_t j = 0; j < prefs[i].size(); ++j) {
        if (j) s += ' ';
        s += detail::fmt(prefs[i][j]);
      }
    }
    return s;
  };
  out << "\n[preferences]\n";
  out << "train = " << pref_line(cfg.train_prefs) << "\n";
  if (!cfg.eval_prefs.empty()) out << "eval = " << pref_line(cfg.eval_prefs) << "\n";
}

// ---------------------------------------------------------------------------
// Experiment runner
// ---------------------------------------------------------------------------

struct RunArtifact {
  std::string dir;
  std::string environment;
  std::string algorithm;
  std::uint64_t seed = 0;
  MetricsSummary metrics;
  SolutionSet solutions;
  double wall_clock_seconds = 0.0;
};

namespace detail {

inline std::string timestamp_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc;
  gmtime_r(&tt, &tm_utc);
  std::strftime(buf, sizeof buf, "%Y%m%d-%H%M%S", &tm_utc);
  return buf;
}

}  // namespace detail

inline void save_policy_for(const ExperimentConfig& cfg, const PolicyModel& model,
                            const std::string& path) {
  if (cfg.environment == "fishwood") {
    save_policy(model, cfg.fishwood, path);
  } else {
    FruitTreeConfig tree = cfg.leaf_table.empty()
                               ? make_random_fruit_tree(cfg.fruit_depth, cfg.leaf_seed)
                               : load_fruit_tree(cfg.leaf_table);
    save_policy(model, tree, path);
  }
}

/// Trains per the config's algorithm for one seed, evaluates every
/// evaluation preference, computes metrics and persists the artifact under
/// <out_dir>/<run-id>-s<seed>/.
inline RunArtifact run_experiment_seed(const ExperimentConfig& cfg,
                                       std::uint64_t seed) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const std::string run_id =
      (cfg.run_id.empty() ? detail::timestamp_now() : cfg.run_id) + "-s" +
      std::to_string(seed);
  const std::filesystem::path dir = std::filesystem::path(cfg.out_dir) / run_id;
  std::filesystem::create_directories(dir);

  const Algorithm algo = algorithm_from_name(cfg.algorithm);
  const int n_obj = cfg.objective_count();
  const PreferenceSet eval_prefs = cfg.eval_set();
  SolutionSet solutions;
  std::vector<std::pair<int, const std::vector<TrainLogRecord>*>> logs;
  std::vector<TrainResult> results;

  if (algo == Algorithm::kLinearPpo) {
    const PreferenceSet weights = cfg.train_set();
    for (int k = 0; k < weights.size(); ++k) {
      auto env = cfg.make_env();
      results.push_back(linear_ppo_train(*env, cfg.environment, weights[k], cfg.ppo,
                                         seed + static_cast<std::uint64_t>(k) * 7919));
      auto eval_env = cfg.make_env();
      solutions.push_back(evaluate_policy(results.back().model, *eval_env, weights[k],
                                          cfg.eval_episodes, seed ^ 0x5eedu,
                                          cfg.greedy));
      save_policy_for(cfg, results.back().model,
                      (dir / ("policy_w" + std::to_string(k) + ".txt")).string());
    }
    for (std::size_t k = 0; k < results.size(); ++k) {
      logs.emplace_back(static_cast<int>(k), &results[k].log);
    }
  } else {
    auto env = cfg.make_env();
    results.push_back(moc_train(*env, cfg.environment, cfg.train_set(), cfg.ppo,
                                seed, algo));
    auto eval_env = cfg.make_env();
    solutions = eval_policy_set(results.back().model, *eval_env, eval_prefs,
                                cfg.eval_episodes, seed ^ 0x5eedu, cfg.greedy);
    logs.emplace_back(0, &results.back().log);
    save_policy_for(cfg, results.back().model, (dir / "policy.txt").string());
  }

  const MetricsSummary metrics =
      metrics_for_solutions(solutions, cfg.reference_point());
  write_config_snapshot(cfg, seed, (dir / "config.snapshot").string());
  const int n_groups = algo == Algorithm::kLinearPpo
                           ? 1
                           : static_cast<int>(cfg.train_prefs.size());
  const int n_log_obj = algo == Algorithm::kLinearPpo ? 1 : n_obj;
  write_train_csv(logs, n_log_obj, n_groups, (dir / "train.csv").string());
  write_solutions_csv(solutions, n_obj, (dir / "solutions.csv").string());
  write_metrics_csv(metrics, (dir / "metrics.csv").string());
  write_front_csv(cfg, (dir / "front.csv").string());

  RunArtifact artifact;
  artifact.dir = dir.string();
  artifact.environment = cfg.environment;
  artifact.algorithm = cfg.algorithm;
  artifact.seed = seed;
  artifact.metrics = metrics;
  artifact.solutions = std::move(solutions);
  artifact.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return artifact;
}

inline std::vector<RunArtifact> run_experiment(const ExperimentConfig& cfg) {
  std::vector<RunArtifact> artifacts;
  for (std::uint64_t seed : cfg.seeds) {
    artifacts.push_back(run_experiment_seed(cfg, seed));
  }
  return artifacts;
}

// ---------------------------------------------------------------------------
// Comparison across stored runs
// ---------------------------------------------------------------------------

struct LoadedArtifact {
  std::string dir;
  std::string environment;
  std::string algorithm;
  std::uint64_t seed = 0;
  std::vector<double> ref_point;
  SolutionSet solutions;
  MetricsSummary metrics;
};

inline LoadedArtifact load_artifact(const std::string& dir) {
  const std::filesystem::path d(dir);
  const IniData snap = parse_ini_file((d / "config.snapshot").string());
  LoadedArtifact a;
  a.dir = dir;
  const auto& exp = snap.at("experiment");
  a.environment = exp.at("environment");
  a.algorithm = exp.at("algorithm");
  a.seed = static_cast<std::uint64_t>(std::stoull(exp.at("seeds")));
  a.ref_point = detail::parse_numbers("ref_point", exp.at("ref_point"));
  const int n_obj = a.environment == "fruit-tree" ? kFruitTreeObjectives : 2;
  a.solutions = read_solutions_csv((d / "solutions.csv").string(), n_obj);
  a.metrics = metrics_for_solutions(a.solutions, a.ref_point);
  return a;
}

/// Emits comparison.csv (one row per artifact: hypervolume, tau, MPD) and a
/// per-preference plot-data file per artifact under `out_dir`. Metrics are
/// recomputed from the stored solution sets. All artifacts must share one
/// environment and reference point.
inline std::string compare_runs(const std::vector<std::string>& artifact_dirs,
                                const std::string& out_dir) {
  if (artifact_dirs.empty()) throw std::invalid_argument("compare: no artifacts");
  std::vector<LoadedArtifact> artifacts;
  for (const auto& dir : artifact_dirs) artifacts.push_back(load_artifact(dir));
  for (const auto& a : artifacts) {
    if (a.environment != artifacts.front().environment) {
      throw std::invalid_argument("compare: mixed environments (" + a.environment +
                                  " vs " + artifacts.front().environment + ")");
    }
    if (a.ref_point != artifacts.front().ref_point) {
      throw std::invalid_argument("compare: mixed reference points");
    }
  }
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path out(out_dir);
  const std::string table_path = (out / "comparison.csv").string();
  std::ofstream table(table_path);
  if (!table) throw std::runtime_error("cannot write " + table_path);
  table << "dir,environment,algorithm,seed,hypervolume,hypervolume_se,"
           "kendall_tau,kendall_p,mpd\n";
  for (std::size_t i = 0; i < artifacts.size(); ++i) {
    const LoadedArtifact& a = artifacts[i];
    table << a.dir << ',' << a.environment << ',' << a.algorithm << ',' << a.seed
          << ',' << detail::fmt(a.metrics.hypervolume) << ','
          << detail::fmt(a.metrics.hypervolume_se) << ',';
    if (a.metrics.tau) table << detail::fmt(*a.metrics.tau);
    table << ',';
    if (a.metrics.tau_p) table << detail::fmt(*a.metrics.tau_p);
    table << ',';
    if (a.metrics.mpd) table << detail::fmt(*a.metrics.mpd);
    table << "\n";

    const int n_obj = static_cast<int>(a.solutions.front().mean_reward.size());
    std::ostringstream name;
    name << "plot_" << i << '_' << a.algorithm << "_s" << a.seed << ".csv";
    std::ofstream plot(out / name.str());
    if (n_obj == 2) {
      plot << "pref,x,y,std_x,std_y\n";
      for (const auto& s : a.solutions) {
        plot << detail::fmt(s.preference[0]) << ',' << detail::fmt(s.mean_reward[0])
             << ',' << detail::fmt(s.mean_reward[1]) << ','
             << detail::fmt(s.std_reward[0]) << ',' << detail::fmt(s.std_reward[1])
             << "\n";
      }
    } else {
      plot << "pref";
      for (int j = 0; j < n_obj; ++j) plot << ",mean_" << j;
      for (int j = 0; j < n_obj; ++j) plot << ",std_" << j;
      plot << "\n";
      for (const auto& s : a.solutions) {
        for (int j = 0; j < n_obj; ++j) plot << (j ? "|" : "") << detail::fmt(s.preference[j]);
        for (int j = 0; j < n_obj; ++j) plot << ',' << detail::fmt(s.mean_reward[j]);
        for (int j = 0; j < n_obj; ++j) plot << ',' << detail::fmt(s.std_reward[j]);
        plot << "\n";
      }
    }
  }
  return table_path;
}

}  // namespace moc
