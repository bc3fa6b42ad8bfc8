#include "sdrl/sdrl_loop.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sdrl {

void LoopConfig::check() const {
  if (!(explore_prob >= 0.0 && explore_prob <= 1.0))
    throw std::invalid_argument("explore_prob must be in [0,1]");
  if (episodes < 0) throw std::invalid_argument("episodes must be >= 0");
  if (max_plan_len <= 0) throw std::invalid_argument("max_plan_len must be positive");
  if (!(inf_default > 0.0)) throw std::invalid_argument("inf_default must be positive");
  if (!(settle_tol > 0.0)) throw std::invalid_argument("settle_tol must be positive");
}

RhoTable update_facts(RhoTable facts, const Plan& executed, const MetaTable& meta,
                      const ActionDescription& d) {
  for (const SymbolicTransition& t : executed.transitions) {
    std::string key = subtask_key(t, d);
    if (!meta.has_gain(t.from, key))
      throw std::logic_error("executed transition has no gain entry: " + key);
    facts.set(t.from, t.action, meta.gain(t.from, key));
  }
  return facts;
}

SdrlLoop::SdrlLoop(const ActionDescription& d, Environment& env, SymbolicState initial,
                   LoopConfig loop_cfg, ControllerConfig controller_cfg,
                   MetaConfig meta_cfg, std::uint64_t seed)
    : d_(d),
      env_(env),
      initial_(std::move(initial)),
      cfg_(loop_cfg),
      controller_cfg_(controller_cfg),
      meta_cfg_(meta_cfg),
      state_(loop_cfg.inf_default),
      q_(env.action_count()),
      reachable_states_(reachable_state_count(initial_, d)) {
  cfg_.check();
  controller_cfg_.check();
  meta_cfg_.check();
  std::mt19937_64 master(seed);
  loop_rng_.seed(master());
  controller_rng_.seed(master());
}

bool SdrlLoop::subtask_settled(const std::string& key) const {
  auto it = pairs_.find(key);
  if (it == pairs_.end()) return false;
  return tracker_.window_full(key) && std::abs(it->second.last_delta_rho) < cfg_.settle_tol &&
         std::abs(it->second.last_delta_r) < cfg_.settle_tol;
}

double SdrlLoop::assessable_ratio(const std::string& key) const {
  // Competence is judged over the full window; before that the subtask is
  // treated as still in training rather than unlearnable.
  if (!tracker_.window_full(key)) return 1.0;
  return tracker_.ratio(key);
}

std::optional<Plan> SdrlLoop::solve_exploration() {
  // Unsettled subtasks keep the optimistic default; settled ones contribute
  // nothing, so the solve maximizes the number of unsettled subtasks touched
  // and turns up empty once every reachable subtask has settled.
  RhoTable optimistic(cfg_.inf_default);
  for (const auto& [key, status] : pairs_)
    if (subtask_settled(key))
      optimistic.set(status.id.from, status.id.action, 0.0);
  return find_plan(initial_, IntrinsicGoal{0.0}, d_, optimistic, cfg_.max_plan_len);
}

IterationReport SdrlLoop::run_episode() {
  IterationReport report;
  last_attempts_.clear();

  double coin = static_cast<double>(loop_rng_() >> 11) * 0x1.0p-53;
  std::optional<Plan> plan;
  if (coin < cfg_.explore_prob) {
    std::optional<Plan> explore = solve_exploration();
    if (explore && !explore->empty()) {
      plan = std::move(explore);
      report.explored = true;
    }
  }
  if (!plan) {
    std::optional<Plan> exploit = find_plan(initial_, state_.goal, d_, state_.facts,
                                            cfg_.max_plan_len);
    if (exploit && !exploit->empty()) {
      plan = std::move(exploit);
      state_.best = *plan;
      converged_ = false;
    } else {
      // No plan improves on the goal: the incumbent stands.
      report.planner_none = true;
      converged_ = true;
      // A strict-improvement miss is final only once the meta values have
      // stopped moving; mid-learning misses keep executing the incumbent.
      bool quiescent = state_.best.empty() || last_episode_max_delta_ < cfg_.settle_tol;
      if (cfg_.stop_on_converged && quiescent) {
        report.terminated = true;
        report.plan = state_.best;
        report.quality = plan_quality(state_.best, state_.facts);
        return report;
      }
      if (!state_.best.empty()) {
        plan = state_.best;
      } else {
        std::optional<Plan> explore = solve_exploration();
        if (explore && !explore->empty()) {
          plan = std::move(explore);
          report.explored = true;
        }
      }
    }
  }

  ++state_.episode_index;
  if (!plan) return report;  // nothing executable this episode

  env_.reset();
  bool env_done = false;
  double episode_max_delta = 0.0;
  Plan executed;
  for (const SymbolicTransition& t : plan->transitions) {
    if (env_done) break;
    Subtask g = induce_option(t, [this](const SymbolicState& s, EnvObs o) {
      return env_.grounds(s, o);
    }, d_);
    if (!g.initiation(env_.observation())) break;  // off-plan drift aborts the suffix

    SubtaskOutcome outcome = execute_subtask(g, env_, q_, controller_cfg_, expl_,
                                             controller_rng_);
    env_done = outcome.env_done;
    report.env_reward += outcome.env_reward_sum;
    ++report.attempted;
    if (outcome.success) ++report.succeeded;

    tracker_.record(g.key, outcome.success, outcome.env_reward_sum);
    double env_return = meta_cfg_.mode == ReturnMode::Constant
                            ? meta_cfg_.constant_return
                            : tracker_.avg_success_return(g.key);
    double r_e = extrinsic_reward(assessable_ratio(g.key), env_return, meta_cfg_);
    MetaUpdate delta = r_update(meta_, t.from, g.key, r_e, t.to, meta_cfg_);

    PairStatus& status = pairs_[g.key];
    status.id = t;
    status.last_delta_r = delta.delta_r;
    status.last_delta_rho = delta.delta_rho;
    episode_max_delta = std::max(episode_max_delta,
                                 std::max(std::abs(delta.delta_r), std::abs(delta.delta_rho)));

    last_attempts_.push_back({g.key, outcome.success, outcome.steps,
                              outcome.env_reward_sum, tracker_.ratio(g.key), r_e,
                              meta_.r_value(t.from, g.key), meta_.gain(t.from, g.key),
                              state_hash(t.from)});

    executed.transitions.push_back(t);
    if (!outcome.success) break;  // abort the remaining suffix
  }

  if (!executed.transitions.empty()) last_episode_max_delta_ = episode_max_delta;
  state_.facts = update_facts(std::move(state_.facts), executed, meta_, d_);
  report.plan = *plan;
  report.quality = plan_quality(*plan, state_.facts);
  state_.goal.threshold = report.quality;
  state_.incumbent = std::move(*plan);
  return report;
}

std::vector<IterationReport> SdrlLoop::run() {
  std::vector<IterationReport> reports;
  for (long ep = 0; ep < cfg_.episodes; ++ep) {
    reports.push_back(run_episode());
    if (reports.back().terminated) break;
  }
  return reports;
}

void SdrlLoop::install_converged_meta(const RewardTable& rewards) {
  for (const auto& [key, reward] : rewards) {
    const auto& [s, a] = key;
    auto to = successor(s, a, d_);
    if (!to) continue;
    meta_.set_gain(s, subtask_key({s, a, *to}, d_), reward);
    state_.facts.set(s, a, reward);
  }
}

bool SdrlLoop::improving_at_cap() const {
  int cap = cfg_.max_plan_len;
  int shorter = cap > reachable_states_ ? cap - reachable_states_ : cap - 1;
  if (shorter < 0) return false;
  return best_quality(initial_, d_, state_.facts, cap) >
         best_quality(initial_, d_, state_.facts, shorter);
}

}  // namespace sdrl
