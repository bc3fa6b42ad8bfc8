#pragma once

#include "sdrl/subtask.hpp"

namespace sdrl {

struct StepResult {
  EnvObs obs = 0;
  double reward = 0.0;
  bool done = false;
};

class Environment {
 public:
  virtual ~Environment() = default;
  virtual EnvObs reset() = 0;
  virtual StepResult step(int action) = 0;
  virtual EnvObs observation() const = 0;
  virtual int action_count() const = 0;
  // Exact grounding function F for this environment's symbolic vocabulary.
  virtual bool grounds(const SymbolicState& s, EnvObs obs) const = 0;
};

}  // namespace sdrl
