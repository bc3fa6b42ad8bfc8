#pragma once

#include <memory>

#include "sdrl/envs/environment.hpp"
#include "sdrl/oracle.hpp"

namespace sdrl {

// Finite labeled graph with ground-truth extrinsic rewards per transition.
struct SyntheticEdge {
  int from = 0;
  int action = 0;
  int to = 0;
  double reward = 0.0;
};

struct SyntheticSpec {
  std::vector<std::string> nodes;
  std::vector<std::string> actions;
  std::vector<SyntheticEdge> edges;  // at most one edge per (from, action)
};

class SyntheticEnv : public Environment {
 public:
  SyntheticEnv(SyntheticSpec spec, int initial_node);

  EnvObs reset() override;
  StepResult step(int action) override;
  EnvObs observation() const override { return node_; }
  int action_count() const override { return static_cast<int>(spec_.actions.size()); }
  bool grounds(const SymbolicState& s, EnvObs obs) const override;

  void bind_description(std::shared_ptr<const ActionDescription> d) { description_ = std::move(d); }
  void set_initial_node(int node) { initial_node_ = node; }

 private:
  SyntheticSpec spec_;
  int initial_node_;
  EnvObs node_ = 0;
  std::shared_ptr<const ActionDescription> description_;
};

struct SyntheticDomain {
  std::shared_ptr<const ActionDescription> description;
  std::unique_ptr<SyntheticEnv> env;

  SymbolicState state_of(int node) const;
  // Ground-truth extrinsic rewards keyed by (symbolic state, action index).
  RewardTable reward_table(const SyntheticSpec& spec) const;
};

// Environment where every subtask is achievable in one primitive step and the
// per-subtask return equals the specified reward. Throws on malformed specs.
SyntheticDomain make_synthetic(const SyntheticSpec& spec, int initial_node = 0);

}  // namespace sdrl
