#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "sdrl/planner.hpp"

namespace sdrl {

// Discrete environment observation id.
using EnvObs = std::uint64_t;

// Exact mapping from symbolic states to predicates over environment states.
using GroundingOracle = std::function<bool(const SymbolicState&, EnvObs)>;

// Option induced from one symbolic transition: it can start wherever the
// source state grounds and terminates exactly where the target state grounds.
struct Subtask {
  SymbolicTransition id;
  std::string key;
  std::function<bool(EnvObs)> initiation;
  std::function<bool(EnvObs)> termination;
};

// Stable, injective over distinct (from, action, to) triples.
std::string subtask_key(const SymbolicTransition& t, const ActionDescription& d);

Subtask induce_option(const SymbolicTransition& t, const GroundingOracle& oracle,
                      const ActionDescription& d);

}  // namespace sdrl
