#pragma once

#include <cstdint>
#include <functional>
#include <map>

#include "sdrl/planner.hpp"

namespace sdrl {

// Exhaustive set of chained executable plans from one initial state.
struct PlanSet {
  std::vector<Plan> plans;
};

using RewardTable = std::map<std::pair<SymbolicState, int>, double>;

PlanSet enumerate_plans(const SymbolicState& initial, const ActionDescription& d,
                        int max_len);

// Plan maximizing the summed table reward; ties broken as in the planner
// (shortest first, then lexicographic action sequence).
std::pair<Plan, double> brute_force_optimal(const PlanSet& ps, const RewardTable& r_e);

// True iff a cycle with strictly positive summed reward is reachable.
bool detect_positive_loop(const ActionDescription& d, const SymbolicState& initial,
                          const RewardTable& r_e);

// Enumerable deterministic MDP for value-iteration checks.
struct TabularModel {
  std::vector<std::uint64_t> states;
  int action_count = 0;
  // (next state, reward, terminal)
  std::function<std::tuple<std::uint64_t, double, bool>(std::uint64_t, int)> step;
};

// Converged greedy policy; ties resolved by lowest action index.
std::map<std::uint64_t, int> value_iteration_policy(const TabularModel& model,
                                                    double gamma);

}  // namespace sdrl
