#include "sdrl/controller.hpp"

#include <algorithm>
#include <stdexcept>

namespace sdrl {

void ControllerConfig::check() const {
  if (!(alpha_c > 0.0 && alpha_c <= 1.0))
    throw std::invalid_argument("alpha_c must be in (0,1]");
  if (!(gamma >= 0.0 && gamma < 1.0))
    throw std::invalid_argument("gamma must be in [0,1)");
  if (max_steps <= 0) throw std::invalid_argument("max_steps must be positive");
  if (eps_decay_steps <= 0) throw std::invalid_argument("eps_decay_steps must be positive");
}

QTable::QTable(int action_count) : action_count_(action_count) {
  if (action_count <= 0) throw std::invalid_argument("action_count must be positive");
}

double QTable::value(const std::string& key, EnvObs obs, int action) const {
  const std::vector<double>* r = find_row(key, obs);
  return r ? r->at(static_cast<std::size_t>(action)) : 0.0;
}

double QTable::max_value(const std::string& key, EnvObs obs) const {
  const std::vector<double>* r = find_row(key, obs);
  if (!r) return 0.0;
  return *std::max_element(r->begin(), r->end());
}

int QTable::greedy_action(const std::string& key, EnvObs obs) const {
  const std::vector<double>* r = find_row(key, obs);
  if (!r) return 0;
  return static_cast<int>(std::max_element(r->begin(), r->end()) - r->begin());
}

std::vector<double>& QTable::row(const std::string& key, EnvObs obs) {
  auto& per_obs = values_[key];
  auto it = per_obs.find(obs);
  if (it == per_obs.end())
    it = per_obs.emplace(obs, std::vector<double>(static_cast<std::size_t>(action_count_), 0.0)).first;
  return it->second;
}

const std::vector<double>* QTable::find_row(const std::string& key, EnvObs obs) const {
  auto kit = values_.find(key);
  if (kit == values_.end()) return nullptr;
  auto oit = kit->second.find(obs);
  return oit == kit->second.end() ? nullptr : &oit->second;
}

std::size_t QTable::visited_rows(const std::string& key) const {
  auto kit = values_.find(key);
  return kit == values_.end() ? 0 : kit->second.size();
}

double intrinsic_reward(double env_reward, bool terminated, const ControllerConfig& cfg) {
  return terminated ? cfg.phi : env_reward;
}

void q_update(QTable& q, const std::string& key, EnvObs obs, int action, double r_i,
              EnvObs next, bool terminal, const ControllerConfig& cfg) {
  double bootstrap = terminal ? 0.0 : cfg.gamma * q.max_value(key, next);
  double& slot = q.row(key, obs)[static_cast<std::size_t>(action)];
  slot = (1.0 - cfg.alpha_c) * slot + cfg.alpha_c * (r_i + bootstrap);
}

SuccessTracker::SuccessTracker(std::size_t window) : window_(window) {
  if (window == 0) throw std::invalid_argument("window must be positive");
}

void SuccessTracker::record(const std::string& key, bool success, double env_return) {
  auto& dq = outcomes_[key];
  dq.emplace_back(success, env_return);
  if (dq.size() > window_) dq.pop_front();
}

double SuccessTracker::ratio(const std::string& key) const {
  auto it = outcomes_.find(key);
  if (it == outcomes_.end() || it->second.empty())
    throw std::runtime_error("no data for subtask '" + key + "'");
  std::size_t wins = 0;
  for (const auto& [success, ret] : it->second) wins += success ? 1 : 0;
  return static_cast<double>(wins) / static_cast<double>(it->second.size());
}

std::size_t SuccessTracker::attempts(const std::string& key) const {
  auto it = outcomes_.find(key);
  return it == outcomes_.end() ? 0 : it->second.size();
}

bool SuccessTracker::window_full(const std::string& key) const {
  return attempts(key) >= window_;
}

double SuccessTracker::avg_success_return(const std::string& key) const {
  auto it = outcomes_.find(key);
  if (it == outcomes_.end()) return 0.0;
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& [success, ret] : it->second)
    if (success) {
      sum += ret;
      ++n;
    }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

double ExplorationState::epsilon(const std::string& key, const ControllerConfig& cfg) const {
  auto it = steps_.find(key);
  long n = it == steps_.end() ? 0 : it->second;
  double frac = std::min(1.0, static_cast<double>(n) /
                                  static_cast<double>(cfg.eps_decay_steps));
  return cfg.eps_start + (cfg.eps_end - cfg.eps_start) * frac;
}

void ExplorationState::bump(const std::string& key) { ++steps_[key]; }

SubtaskOutcome execute_subtask(const Subtask& g, Environment& env, QTable& q,
                               const ControllerConfig& cfg, ExplorationState& expl,
                               std::mt19937_64& rng) {
  SubtaskOutcome out;
  EnvObs obs = env.observation();
  if (!g.initiation(obs))
    throw std::runtime_error("initiation unsatisfied for subtask '" + g.key + "'");
  if (g.termination(obs)) {
    out.success = true;
    return out;
  }
  const int n_actions = env.action_count();
  for (int step = 0; step < cfg.max_steps; ++step) {
    double eps = expl.epsilon(g.key, cfg);
    expl.bump(g.key);
    int action;
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u < eps) {
      action = static_cast<int>(rng() % static_cast<std::uint64_t>(n_actions));
    } else {
      action = q.greedy_action(g.key, obs);
    }
    StepResult r = env.step(action);
    out.env_reward_sum += r.reward;
    ++out.steps;
    bool terminated = g.termination(r.obs);
    bool terminal = terminated || r.done;
    double r_i = intrinsic_reward(r.reward, terminated, cfg);
    q_update(q, g.key, obs, action, r_i, r.obs, terminal, cfg);
    out.trace.push_back({obs, action, r_i, r.obs, terminal});
    obs = r.obs;
    if (terminated) {
      out.success = true;
      break;
    }
    if (r.done) {
      out.env_done = true;
      break;
    }
  }
  return out;
}

}  // namespace sdrl
