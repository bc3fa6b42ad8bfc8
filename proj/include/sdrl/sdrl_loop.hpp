#pragma once

#include <random>

#include "sdrl/controller.hpp"
#include "sdrl/meta_controller.hpp"
#include "sdrl/oracle.hpp"

namespace sdrl {

struct LoopConfig {
  double explore_prob = 0.9;  // probability of an exploration solve per episode
  long episodes = 2000;
  int max_plan_len = 8;
  double inf_default = 10.0;
  double settle_tol = 0.25;   // gain/R increment bound for a settled subtask
  bool stop_on_converged = true;

  void check() const;
};

struct LoopState {
  Plan incumbent;          // plan executed in the last episode
  Plan best;               // latest exploitation solve result
  IntrinsicGoal goal{0.0};
  RhoTable facts;
  long episode_index = 0;

  explicit LoopState(double inf_default) : facts(inf_default) {}
};

struct IterationReport {
  bool explored = false;      // episode ran an exploration plan
  bool planner_none = false;  // exploitation solve found no improving plan
  bool terminated = false;    // planner_none under stop_on_converged
  Plan plan;                  // plan executed this episode
  int attempted = 0;
  int succeeded = 0;
  double env_reward = 0.0;
  double quality = 0.0;       // plan quality after the fact update
};

// Copies the meta-controller gains of the executed transitions into the fact
// table; all other entries are untouched. Missing gain entries are an error.
RhoTable update_facts(RhoTable facts, const Plan& executed, const MetaTable& meta,
                      const ActionDescription& d);

// Plan - execute - score - ratchet loop over one environment.
class SdrlLoop {
 public:
  SdrlLoop(const ActionDescription& d, Environment& env, SymbolicState initial,
           LoopConfig loop_cfg, ControllerConfig controller_cfg, MetaConfig meta_cfg,
           std::uint64_t seed);

  IterationReport run_episode();
  // Runs until the episode budget or, with stop_on_converged, until the
  // planner reports no improving plan.
  std::vector<IterationReport> run();

  const LoopState& state() const { return state_; }
  const Plan& best_plan() const { return state_.best; }
  MetaTable& meta() { return meta_; }
  const MetaTable& meta() const { return meta_; }
  QTable& q_table() { return q_; }
  SuccessTracker& tracker() { return tracker_; }
  bool converged() const { return converged_; }
  void reset_convergence() { converged_ = false; }

  // True when plan quality is still rising at the length cap, indicating an
  // unbounded-quality (positive-loop) domain. Exact once the cap exceeds the
  // reachable state count.
  bool improving_at_cap() const;

  bool subtask_settled(const std::string& key) const;

  // Installs an exact R-learning fixed point (R = 0, gains = the given
  // extrinsic rewards) and the matching facts; with zero meta learning rates
  // the loop then runs against frozen converged values.
  void install_converged_meta(const RewardTable& rewards);

  struct AttemptLog {
    std::string key;
    bool success = false;
    int steps = 0;
    double env_reward_sum = 0.0;
    double ratio = 0.0;
    double extrinsic = 0.0;
    double r_value = 0.0;
    double gain = 0.0;
    std::uint64_t from_hash = 0;
  };
  const std::vector<AttemptLog>& last_attempts() const { return last_attempts_; }

 private:
  struct PairStatus {
    SymbolicTransition id;
    double last_delta_r = 1e18;
    double last_delta_rho = 1e18;
  };

  std::optional<Plan> solve_exploration();
  double assessable_ratio(const std::string& key) const;

  const ActionDescription& d_;
  Environment& env_;
  SymbolicState initial_;
  LoopConfig cfg_;
  ControllerConfig controller_cfg_;
  MetaConfig meta_cfg_;
  LoopState state_;
  MetaTable meta_;
  QTable q_;
  SuccessTracker tracker_;
  ExplorationState expl_;
  std::mt19937_64 loop_rng_;
  std::mt19937_64 controller_rng_;
  std::map<std::string, PairStatus> pairs_;
  std::vector<AttemptLog> last_attempts_;
  double last_episode_max_delta_ = 1e18;
  bool converged_ = false;
  int reachable_states_;
};

}  // namespace sdrl
