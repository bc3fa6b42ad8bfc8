#include "sdrl/subtask.hpp"

namespace sdrl {

namespace {

std::string atoms_key(const SymbolicState& s, const ActionDescription& d) {
  std::string out;
  for (std::size_t i = 0; i < d.fluents.size(); ++i) {
    if (i) out += ';';
    out += d.fluents[i].name + "=" +
           d.fluents[i].domain.at(static_cast<std::size_t>(s.values.at(i)));
  }
  return out;
}

}  // namespace

std::string subtask_key(const SymbolicTransition& t, const ActionDescription& d) {
  return atoms_key(t.from, d) + "|" + d.actions.at(static_cast<std::size_t>(t.action)) +
         "|" + atoms_key(t.to, d);
}

Subtask induce_option(const SymbolicTransition& t, const GroundingOracle& oracle,
                      const ActionDescription& d) {
  Subtask g;
  g.id = t;
  g.key = subtask_key(t, d);
  g.initiation = [oracle, from = t.from](EnvObs obs) { return oracle(from, obs); };
  g.termination = [oracle, to = t.to](EnvObs obs) { return oracle(to, obs); };
  return g;
}

}  // namespace sdrl
