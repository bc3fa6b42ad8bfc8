#include "sdrl/oracle.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace sdrl {

namespace {

void expand(const SymbolicState& s, const ActionDescription& d, int remaining,
            Plan& prefix, std::vector<Plan>& out) {
  out.push_back(prefix);
  if (remaining == 0) return;
  for (const auto& [a, next] : successors(s, d)) {
    prefix.transitions.push_back({s, a, next});
    expand(next, d, remaining - 1, prefix, out);
    prefix.transitions.pop_back();
  }
}

}  // namespace

PlanSet enumerate_plans(const SymbolicState& initial, const ActionDescription& d,
                        int max_len) {
  if (max_len < 0) throw std::invalid_argument("max_len must be >= 0");
  PlanSet ps;
  Plan prefix;
  expand(initial, d, max_len, prefix, ps.plans);
  return ps;
}

std::pair<Plan, double> brute_force_optimal(const PlanSet& ps, const RewardTable& r_e) {
  if (ps.plans.empty()) throw std::invalid_argument("plan set is empty");
  auto total = [&](const Plan& p) {
    double t = 0.0;
    for (const SymbolicTransition& tr : p.transitions) {
      auto it = r_e.find({tr.from, tr.action});
      t += it == r_e.end() ? 0.0 : it->second;
    }
    return t;
  };
  auto actions = [](const Plan& p) {
    std::vector<int> a;
    for (const SymbolicTransition& t : p.transitions) a.push_back(t.action);
    return a;
  };
  const Plan* best = &ps.plans.front();
  double best_total = total(*best);
  for (const Plan& p : ps.plans) {
    double t = total(p);
    if (t > best_total) {
      best = &p;
      best_total = t;
      continue;
    }
    if (t < best_total) continue;
    if (p.size() < best->size() ||
        (p.size() == best->size() && actions(p) < actions(*best)))
      best = &p;
  }
  return {*best, best_total};
}

bool detect_positive_loop(const ActionDescription& d, const SymbolicState& initial,
                          const RewardTable& r_e) {
  // Collect the reachable transition graph.
  std::map<SymbolicState, int> ids;
  std::vector<SymbolicState> states;
  std::vector<SymbolicState> frontier{initial};
  ids.emplace(initial, 0);
  states.push_back(initial);
  struct Edge {
    int from, to;
    double w;
  };
  std::vector<Edge> edges;
  while (!frontier.empty()) {
    SymbolicState s = std::move(frontier.back());
    frontier.pop_back();
    int si = ids.at(s);
    for (const auto& [a, next] : successors(s, d)) {
      auto [it, inserted] = ids.emplace(next, static_cast<int>(states.size()));
      if (inserted) {
        states.push_back(next);
        frontier.push_back(next);
      }
      auto rit = r_e.find({s, a});
      edges.push_back({si, it->second, rit == r_e.end() ? 0.0 : rit->second});
    }
  }
  // Longest-walk relaxation; any improvement after n rounds means a positive
  // cycle lies on a reachable walk.
  const int n = static_cast<int>(states.size());
  constexpr double kNegInf = -1e300;
  std::vector<double> dist(static_cast<std::size_t>(n), kNegInf);
  dist[0] = 0.0;
  for (int round = 0; round < n; ++round)
    for (const Edge& e : edges)
      if (dist[static_cast<std::size_t>(e.from)] > kNegInf)
        dist[static_cast<std::size_t>(e.to)] =
            std::max(dist[static_cast<std::size_t>(e.to)],
                     dist[static_cast<std::size_t>(e.from)] + e.w);
  for (const Edge& e : edges)
    if (dist[static_cast<std::size_t>(e.from)] > kNegInf &&
        dist[static_cast<std::size_t>(e.from)] + e.w >
            dist[static_cast<std::size_t>(e.to)])
      return true;
  return false;
}

std::map<std::uint64_t, int> value_iteration_policy(const TabularModel& model,
                                                    double gamma) {
  if (model.states.empty()) throw std::invalid_argument("model has no states");
  if (model.action_count <= 0) throw std::invalid_argument("model has no actions");
  std::map<std::uint64_t, double> value;
  for (std::uint64_t s : model.states) value[s] = 0.0;
  // Deterministic model: sweeps reach the exact fixpoint.
  for (int sweep = 0; sweep < 100000; ++sweep) {
    bool changed = false;
    for (std::uint64_t s : model.states) {
      double best = -1e300;
      for (int a = 0; a < model.action_count; ++a) {
        auto [next, r, terminal] = model.step(s, a);
        double v = r;
        if (!terminal) {
          auto it = value.find(next);
          if (it == value.end())
            throw std::runtime_error("model step left the enumerated state set");
          v += gamma * it->second;
        }
        best = std::max(best, v);
      }
      if (best != value[s]) {
        value[s] = best;
        changed = true;
      }
    }
    if (!changed) break;
  }
  std::map<std::uint64_t, int> policy;
  for (std::uint64_t s : model.states) {
    int best_a = 0;
    double best = -1e300;
    for (int a = 0; a < model.action_count; ++a) {
      auto [next, r, terminal] = model.step(s, a);
      double v = r;
      if (!terminal) v += gamma * value.at(next);
      if (v > best) {
        best = v;
        best_a = a;
      }
    }
    policy[s] = best_a;
  }
  return policy;
}

}  // namespace sdrl
