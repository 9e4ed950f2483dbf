// Experiment runner for the MOC multi-objective RL toolkit.
//
// Subcommands:
//   train         run one experiment config (MOC, ablations, or linear-PPO)
//   eval-unseen   evaluate a saved preference-conditioned policy on new
//                 preference vectors
//   compare       tabulate metrics across stored run directories
//   pareto-front  emit the analytic fishwood front as CSV

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "moc/experiment.hpp"
#include "moc/policy_io.hpp"

namespace {

moc::PreferenceSet read_preference_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open preference file " + path);
  std::vector<moc::PreferenceVector> prefs;
  std::string line;
  while (std::getline(in, line)) {
    line = moc::trim(line);
    if (line.empty() || line[0] == '#') continue;
    prefs.push_back(moc::PreferenceVector(
        moc::detail::parse_numbers("preference line", line)));
  }
  if (prefs.empty()) throw std::invalid_argument("preference file is empty: " + path);
  return moc::PreferenceSet(std::move(prefs));
}

int run_train(const std::string& config_path, long seed_override,
              const std::string& out_override, const std::string& algo_override,
              bool greedy) {
  moc::ExperimentConfig cfg = moc::load_experiment_config(config_path);
  if (seed_override >= 0) cfg.seeds = {static_cast<std::uint64_t>(seed_override)};
  if (!out_override.empty()) cfg.out_dir = out_override;
  if (!algo_override.empty()) cfg.algorithm = algo_override;
  if (greedy) cfg.greedy = true;
  cfg.validate();
  for (const moc::RunArtifact& a : moc::run_experiment(cfg)) {
    std::cout << "run " << a.dir << " seed " << a.seed << " algorithm "
              << a.algorithm << " hypervolume " << a.metrics.hypervolume;
    if (a.metrics.tau) std::cout << " tau " << *a.metrics.tau;
    if (a.metrics.mpd) std::cout << " mpd " << *a.metrics.mpd;
    std::cout << " wall_clock_s " << a.wall_clock_seconds << "\n";
  }
  return 0;
}

int run_eval_unseen(const std::string& policy_path, const std::string& prefs_path,
                    int episodes, long seed, const std::string& out_dir,
                    bool greedy) {
  const moc::SavedPolicy saved = moc::load_policy(policy_path);
  const moc::PreferenceSet prefs = read_preference_file(prefs_path);
  auto env = saved.make_env();
  const moc::SolutionSet set =
      moc::eval_unseen(saved.model, *env, prefs, episodes,
                       static_cast<std::uint64_t>(seed), greedy);
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path out(out_dir);
  moc::write_solutions_csv(set, saved.model.objective_count,
                           (out / "solutions.csv").string());
  const std::vector<double> ref(
      static_cast<std::size_t>(saved.model.objective_count), 0.0);
  moc::write_metrics_csv(moc::metrics_for_solutions(set, ref),
                         (out / "metrics.csv").string());
  std::cout << "evaluated " << prefs.size() << " preferences x " << episodes
            << " episodes -> " << (out / "solutions.csv").string() << "\n";
  return 0;
}

int run_compare(const std::vector<std::string>& dirs, const std::string& out_dir) {
  const std::string table = moc::compare_runs(dirs, out_dir);
  std::ifstream in(table);
  std::cout << in.rdbuf();
  std::cout << "wrote " << table << "\n";
  return 0;
}

int run_front(double woodprob, double fishprob, int horizon,
              const std::string& out_path) {
  moc::FishwoodConfig cfg{woodprob, fishprob, horizon};
  cfg.validate();
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << "x,y\n";
  out.precision(12);
  for (const auto& p : moc::fishwood_pareto_front(cfg)) {
    out << p[0] << ',' << p[1] << "\n";
  }
  std::cout << "wrote " << out_path << " (" << horizon + 1 << " points)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-objective controllable RL toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_dir, algo, policy_path, prefs_path, front_out;
  long seed = -1;
  bool greedy = false;
  int episodes = 20;
  double woodprob = 0.5, fishprob = 0.5;
  int horizon = 200;
  std::vector<std::string> artifact_dirs;

  CLI::App* train = app.add_subcommand("train", "run one experiment config");
  train->add_option("--config", config_path, "experiment config file")->required();
  train->add_option("--seed", seed, "override the config's seed list");
  train->add_option("--out", out_dir, "override the output directory");
  train->add_option("--algo", algo,
                    "override the algorithm (moc, linear-ppo, "
                    "moc-ablation-no-control, moc-ablation-no-mo)");
  train->add_flag("--greedy", greedy, "evaluate with argmax actions");

  CLI::App* evalu = app.add_subcommand(
      "eval-unseen", "evaluate a saved policy on a preference list");
  evalu->add_option("--policy", policy_path, "saved policy file")->required();
  evalu->add_option("--prefs", prefs_path,
                    "text file, one preference vector per line")->required();
  evalu->add_option("--episodes", episodes, "episodes per preference");
  evalu->add_option("--seed", seed, "evaluation seed");
  evalu->add_option("--out", out_dir, "output directory")->required();
  evalu->add_flag("--greedy", greedy, "evaluate with argmax actions");

  CLI::App* compare = app.add_subcommand("compare", "compare stored runs");
  compare->add_option("dirs", artifact_dirs, "run artifact directories")->required();
  compare->add_option("--out", out_dir, "output directory")->required();

  CLI::App* front = app.add_subcommand("pareto-front",
                                       "emit the analytic fishwood front");
  front->add_option("--woodprob", woodprob, "wood probability");
  front->add_option("--fishprob", fishprob, "fish probability");
  front->add_option("--horizon", horizon, "episode horizon");
  front->add_option("--out", front_out, "output CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) return run_train(config_path, seed, out_dir, algo, greedy);
    if (evalu->parsed()) {
      return run_eval_unseen(policy_path, prefs_path, episodes,
                             seed < 0 ? 0 : seed, out_dir, greedy);
    }
    if (compare->parsed()) return run_compare(artifact_dirs, out_dir);
    if (front->parsed()) return run_front(woodprob, fishprob, horizon, front_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
