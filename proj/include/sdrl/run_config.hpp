#pragma once

#include <filesystem>
#include <iosfwd>

#include "sdrl/envs/synthetic.hpp"
#include "sdrl/envs/taxi.hpp"
#include "sdrl/sdrl_loop.hpp"

namespace sdrl {

// key=value run configuration ('#' and '%' comments).
struct RunConfig {
  std::string env = "taxi";  // taxi | synthetic

  double explore_prob = 0.9;
  long episodes = 2000;  // per task in schedule mode
  int max_plan_len = 8;
  double inf_default = 10.0;
  double settle_tol = 0.25;

  double phi = 100.0;
  double alpha_c = 1.0;
  double gamma = 0.95;
  int max_steps = 50;
  double eps_start = 1.0;
  double eps_end = 0.0;
  long eps_decay_steps = 600;

  double alpha = 0.02;
  double beta = 0.4;
  double psi = 100.0;
  double threshold = 0.9;
  std::string return_mode = "env_return";  // env_return | constant
  double constant_return = -10.0;

  double base_dropoff_reward = 50.0;
  double decrement = 5.0;
  int num_tasks = 10;

  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::string out_dir = "runs/out";
  bool log_controller = false;
  bool log_meta = false;

  // synthetic env description: "from action to reward; ..." over named nodes
  std::string synthetic_nodes;
  std::string synthetic_actions;
  std::string synthetic_edges;

  LoopConfig loop_config() const;
  ControllerConfig controller_config() const;
  MetaConfig meta_config() const;
  TaskSchedule schedule() const;
};

RunConfig parse_run_config(std::istream& in);
RunConfig load_run_config(const std::filesystem::path& path);

struct SeedTaskResult {
  int task = 1;
  Plan final_plan;
  std::string plan_actions;  // space-joined action names
  bool converged = false;
  bool improving_at_cap = false;
};

struct SeedResult {
  std::uint64_t seed = 0;
  std::filesystem::path curve_file;
  std::filesystem::path subtask_file;
  std::vector<SeedTaskResult> tasks;
};

struct RunReport {
  std::vector<SeedResult> seeds;
  std::filesystem::path report_file;
};

std::string plan_actions_text(const Plan& p, const ActionDescription& d);

// Full experiment: every seed, every task, CSV curves, final plans, and the
// subtask table; returns the summary.
RunReport run_experiment(const RunConfig& cfg);

SyntheticSpec parse_synthetic_spec(const RunConfig& cfg);

}  // namespace sdrl
