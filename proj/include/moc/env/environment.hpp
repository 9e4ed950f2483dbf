#pragma once

#include <cstdint>
#include <vector>

namespace moc {

/// One environment transition: state features, vector reward, episode flag.
struct EnvObservation {
  std::vector<double> state;
  std::vector<double> reward;
  bool done = false;
};

/// Episodic multi-objective environment with a discrete action space.
/// Implementations hold per-instance state; use one instance per thread.
class Environment {
 public:
  virtual ~Environment() = default;
  virtual EnvObservation reset(std::uint64_t seed) = 0;
  virtual EnvObservation step(int action) = 0;
  virtual int state_dim() const = 0;
  virtual int action_count() const = 0;
  virtual int objective_count() const = 0;
  virtual bool done() const = 0;
};

}  // namespace moc
