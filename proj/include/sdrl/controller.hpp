#pragma once

#include <deque>
#include <map>
#include <random>
#include <unordered_map>

#include "sdrl/envs/environment.hpp"

namespace sdrl {

struct ControllerConfig {
  double alpha_c = 1.0;       // learning rate in (0,1]
  double gamma = 0.95;        // discount in [0,1)
  double eps_start = 1.0;     // per-subtask exploration schedule
  double eps_end = 0.0;
  long eps_decay_steps = 600;
  int max_steps = 50;         // per subtask attempt
  double phi = 100.0;         // intrinsic success bonus

  void check() const;
};

// Q(subtask, observation, action); entries exist only for visited
// (subtask, observation) rows.
class QTable {
 public:
  explicit QTable(int action_count);
  int action_count() const { return action_count_; }

  double value(const std::string& key, EnvObs obs, int action) const;
  double max_value(const std::string& key, EnvObs obs) const;
  int greedy_action(const std::string& key, EnvObs obs) const;  // lowest-index ties
  std::vector<double>& row(const std::string& key, EnvObs obs);
  const std::vector<double>* find_row(const std::string& key, EnvObs obs) const;
  std::size_t visited_rows(const std::string& key) const;

 private:
  int action_count_;
  std::map<std::string, std::unordered_map<EnvObs, std::vector<double>>> values_;
};

// phi on subtask termination, otherwise the raw environment reward.
double intrinsic_reward(double env_reward, bool terminated, const ControllerConfig& cfg);

// Q(g,s,a) <- (1-a_c) Q + a_c (r_i + gamma max_a' Q(g,s',a')); the bootstrap
// term is exactly zero when terminal.
void q_update(QTable& q, const std::string& key, EnvObs obs, int action, double r_i,
              EnvObs next, bool terminal, const ControllerConfig& cfg);

// Last-100-attempt outcomes per subtask.
class SuccessTracker {
 public:
  explicit SuccessTracker(std::size_t window = 100);
  void record(const std::string& key, bool success, double env_return);
  double ratio(const std::string& key) const;           // throws "no data" when empty
  std::size_t attempts(const std::string& key) const;   // within the window
  bool window_full(const std::string& key) const;
  // Mean env return over successful attempts in the window (0 when none).
  double avg_success_return(const std::string& key) const;

 private:
  std::size_t window_;
  std::map<std::string, std::deque<std::pair<bool, double>>> outcomes_;
};

struct SubtaskStep {
  EnvObs obs = 0;
  int action = -1;
  double intrinsic = 0.0;
  EnvObs next = 0;
  bool terminal = false;
};

struct SubtaskOutcome {
  std::vector<SubtaskStep> trace;
  bool success = false;
  double env_reward_sum = 0.0;
  int steps = 0;
  bool env_done = false;
};

// Per-subtask linear epsilon schedules.
class ExplorationState {
 public:
  double epsilon(const std::string& key, const ControllerConfig& cfg) const;
  void bump(const std::string& key);

 private:
  std::map<std::string, long> steps_;
};

// Runs epsilon-greedy steps with per-step Q updates until the subtask
// terminates, max_steps elapse, or the episode ends. Raw environment reward
// is accumulated separately from the intrinsic rewards in the trace.
SubtaskOutcome execute_subtask(const Subtask& g, Environment& env, QTable& q,
                               const ControllerConfig& cfg, ExplorationState& expl,
                               std::mt19937_64& rng);

}  // namespace sdrl
