#pragma once

#include <fstream>
#include <set>
#include <sstream>

#include "sdrl/planner.hpp"

namespace sdrl::test {

inline ActionDescription load_montezuma() {
  std::ifstream in(std::string(SDRL_DATA_DIR) + "/montezuma.bc");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_action_description(buf.str());
}

// The learned-subtask route through the first room: down the ladders to the
// key, back up, and through the right door.
inline std::vector<std::pair<std::string, std::string>> montezuma_route() {
  return {{"loc=mp picked_key=false", "move(lrl)"},
          {"loc=lrl picked_key=false", "move(lll)"},
          {"loc=lll picked_key=false", "move(key)"},
          {"loc=key picked_key=true", "move(lll)"},
          {"loc=lll picked_key=true", "move(lrl)"},
          {"loc=lrl picked_key=true", "move(mp)"},
          {"loc=mp picked_key=true", "move(rd)"}};
}

inline Plan montezuma_route_plan(const ActionDescription& d) {
  Plan plan;
  for (const auto& [atoms, action] : montezuma_route()) {
    SymbolicState from = complete_state(d, parse_atoms(d, atoms));
    int a = d.action_index(action);
    auto to = successor(from, a, d);
    plan.transitions.push_back({from, a, *to});
  }
  return plan;
}

// Post-learning gain rewards: the seven route transitions pay out, every other
// reachable transition (the unlearnable or dropped ones) carries the penalty.
inline RhoTable montezuma_learned_rho(const ActionDescription& d, double bonus = 10.0,
                                      double penalty = -100.0, double inf = 10.0) {
  RhoTable rho(inf);
  SymbolicState init = complete_state(d, parse_atoms(d, "loc=mp picked_key=false"));
  std::vector<SymbolicState> frontier{init};
  std::set<SymbolicState> seen{init};
  while (!frontier.empty()) {
    SymbolicState s = std::move(frontier.back());
    frontier.pop_back();
    for (auto& [a, next] : successors(s, d)) {
      rho.set(s, a, penalty);
      if (seen.insert(next).second) frontier.push_back(next);
    }
  }
  for (const SymbolicTransition& t : montezuma_route_plan(d).transitions)
    rho.set(t.from, t.action, bonus);
  return rho;
}

}  // namespace sdrl::test
