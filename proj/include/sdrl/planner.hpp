#pragma once

#include <map>
#include <optional>
#include <utility>

#include "sdrl/action_lang.hpp"

namespace sdrl {

struct SymbolicTransition {
  SymbolicState from;
  int action = -1;
  SymbolicState to;
  friend bool operator==(const SymbolicTransition&, const SymbolicTransition&) = default;
  friend auto operator<=>(const SymbolicTransition&, const SymbolicTransition&) = default;
};

struct Plan {
  std::vector<SymbolicTransition> transitions;
  bool empty() const { return transitions.empty(); }
  std::size_t size() const { return transitions.size(); }
  bool chained() const;
  friend bool operator==(const Plan&, const Plan&) = default;
};

// Learned gain-reward facts with an optimistic default.
class RhoTable {
 public:
  explicit RhoTable(double default_inf);
  double default_inf() const { return default_inf_; }
  double lookup(const SymbolicState& s, int action) const;
  bool has(const SymbolicState& s, int action) const;
  void set(const SymbolicState& s, int action, double value);
  const std::map<std::pair<SymbolicState, int>, double>& facts() const { return facts_; }

 private:
  double default_inf_;
  std::map<std::pair<SymbolicState, int>, double> facts_;
};

struct IntrinsicGoal {
  double threshold = 0.0;  // strict lower bound on plan quality
};

// All executable (action, successor) pairs in action-index order; the action
// list is lexicographically sorted, so this is also action-name order.
std::vector<std::pair<int, SymbolicState>> successors(const SymbolicState& s,
                                                      const ActionDescription& d);

// Successor for one action, or nullopt when not executable / statically
// inconsistent.
std::optional<SymbolicState> successor(const SymbolicState& s, int action,
                                       const ActionDescription& d);

double plan_quality(const Plan& p, const RhoTable& rho);

// Best plan of length <= max_len with quality strictly above the goal
// threshold; quality is maximal, ties broken shortest-first then
// lexicographically by action sequence. nullopt when no plan qualifies.
std::optional<Plan> find_plan(const SymbolicState& initial, const IntrinsicGoal& goal,
                              const ActionDescription& d, const RhoTable& rho,
                              int max_len);

// Max quality over plans of length <= max_len (the empty plan counts).
double best_quality(const SymbolicState& initial, const ActionDescription& d,
                    const RhoTable& rho, int max_len);

// Number of symbolic states reachable from `initial` under any action sequence.
int reachable_state_count(const SymbolicState& initial, const ActionDescription& d);

std::string plan_to_text(const Plan& p, const ActionDescription& d, double quality);
Plan plan_from_text(std::string_view text, const ActionDescription& d);

}  // namespace sdrl
