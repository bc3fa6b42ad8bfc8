#include "sdrl/envs/synthetic.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace sdrl {

namespace {

void check_spec(const SyntheticSpec& spec) {
  if (spec.nodes.empty()) throw std::invalid_argument("synthetic spec has no nodes");
  if (spec.actions.empty()) throw std::invalid_argument("synthetic spec has no actions");
  std::set<std::pair<int, int>> seen;
  for (const SyntheticEdge& e : spec.edges) {
    if (e.from < 0 || e.from >= static_cast<int>(spec.nodes.size()) || e.to < 0 ||
        e.to >= static_cast<int>(spec.nodes.size()))
      throw std::invalid_argument("synthetic edge references an unknown node");
    if (e.action < 0 || e.action >= static_cast<int>(spec.actions.size()))
      throw std::invalid_argument("synthetic edge references an unknown action");
    if (!seen.insert({e.from, e.action}).second)
      throw std::invalid_argument("duplicate (node, action) edge breaks determinism");
  }
}

const SyntheticEdge* find_edge(const SyntheticSpec& spec, int node, int action) {
  for (const SyntheticEdge& e : spec.edges)
    if (e.from == node && e.action == action) return &e;
  return nullptr;
}

bool has_out_edge(const SyntheticSpec& spec, int node) {
  for (const SyntheticEdge& e : spec.edges)
    if (e.from == node) return true;
  return false;
}

}  // namespace

SyntheticEnv::SyntheticEnv(SyntheticSpec spec, int initial_node)
    : spec_(std::move(spec)), initial_node_(initial_node) {
  node_ = static_cast<EnvObs>(initial_node_);
}

EnvObs SyntheticEnv::reset() {
  node_ = static_cast<EnvObs>(initial_node_);
  return node_;
}

StepResult SyntheticEnv::step(int action) {
  const SyntheticEdge* e = find_edge(spec_, static_cast<int>(node_), action);
  if (!e) return {node_, 0.0, !has_out_edge(spec_, static_cast<int>(node_))};
  node_ = static_cast<EnvObs>(e->to);
  return {node_, e->reward, !has_out_edge(spec_, static_cast<int>(node_))};
}

bool SyntheticEnv::grounds(const SymbolicState& s, EnvObs obs) const {
  if (!description_) throw std::runtime_error("synthetic env has no bound description");
  return s.values.at(0) == static_cast<std::int32_t>(obs);
}

SymbolicState SyntheticDomain::state_of(int node) const {
  SymbolicState s;
  s.values = {static_cast<std::int32_t>(node)};
  return s;
}

RewardTable SyntheticDomain::reward_table(const SyntheticSpec& spec) const {
  RewardTable table;
  for (const SyntheticEdge& e : spec.edges) {
    int action = description->action_index(spec.actions.at(static_cast<std::size_t>(e.action)));
    table[{state_of(e.from), action}] = e.reward;
  }
  return table;
}

SyntheticDomain make_synthetic(const SyntheticSpec& spec, int initial_node) {
  check_spec(spec);
  if (initial_node < 0 || initial_node >= static_cast<int>(spec.nodes.size()))
    throw std::invalid_argument("initial node out of range");

  std::ostringstream text;
  text << "sort node = {";
  for (std::size_t i = 0; i < spec.nodes.size(); ++i)
    text << (i ? ", " : "") << spec.nodes[i];
  text << "}\n";
  text << "fluent loc : node\n";
  for (const std::string& a : spec.actions) text << "action " << a << "\n";
  for (const SyntheticEdge& e : spec.edges)
    text << "dynamic " << spec.actions[static_cast<std::size_t>(e.action)] << " causes loc="
         << spec.nodes[static_cast<std::size_t>(e.to)] << " if loc="
         << spec.nodes[static_cast<std::size_t>(e.from)] << "\n";
  for (std::size_t a = 0; a < spec.actions.size(); ++a)
    for (std::size_t n = 0; n < spec.nodes.size(); ++n)
      if (!find_edge(spec, static_cast<int>(n), static_cast<int>(a)))
        text << "nonexecutable " << spec.actions[a] << " if loc=" << spec.nodes[n] << "\n";
  text << "inertial loc\n";

  SyntheticDomain domain;
  domain.description = std::make_shared<const ActionDescription>(
      parse_action_description(text.str()));
  // The single fluent's domain order matches node order, so state_of(node)
  // indexes directly; action indices are resolved by name where needed.
  domain.env = std::make_unique<SyntheticEnv>(spec, initial_node);
  domain.env->bind_description(domain.description);
  return domain;
}

}  // namespace sdrl
